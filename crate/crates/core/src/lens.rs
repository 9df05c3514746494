//! Quantum lens spaces as fibre products of two quantum solid tori over the
//! quantum torus, with their generators, relations and linear basis.
//!
//! An element is a pair `(e1, e2)` with `e1` in the `p`-solid torus, `e2` in the
//! `q`-solid torus and `χ¹₂(e1) = χ²₁(e2)` in the torus, where
//! `χ¹₂(ξ^k x^m h^n) = δ_{k0} V^m U^n` and
//! `χ²₁(ξ^k y^m g^n) = δ_{k0} u^{βn²} V^{m+βn} U^n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::comodule::GradedAlgebra;
use crate::ncalg::{shared_algebra, AlgElement, AlgebraKind, Mono, PresentedAlgebra, StarAlgebra};
use crate::scalar::{QVar, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("negative charge {0}: apply the negative-charge isomorphism first")]
    NegativeCharge(i32),
    #[error("pair is not in the fibre product: {0}")]
    NotMember(String),
}

/// The gluing maps `χ¹₂` and `χ²₁` for a given charge.
#[derive(Clone, Debug)]
pub struct ChiMaps {
    beta: i32,
    torus: Arc<PresentedAlgebra>,
}

impl ChiMaps {
    fn with_charge(beta: i32) -> Self {
        ChiMaps {
            beta,
            torus: shared_algebra(AlgebraKind::Torus),
        }
    }

    pub fn beta(&self) -> i32 {
        self.beta
    }

    pub fn chi12(&self, e: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(AlgebraKind::Torus);
        for (m, c) in e.terms().filter(|(m, _)| m.k == 0) {
            out.add_term(Mono::new(0, m.m, m.n), c);
        }
        out
    }

    pub fn chi21(&self, e: &AlgElement) -> AlgElement {
        let b = self.beta;
        let mut out = AlgElement::zero(AlgebraKind::Torus);
        for (m, c) in e.terms().filter(|(m, _)| m.k == 0) {
            let phase = Scalar::u_pow(b * m.n * m.n);
            out.add_term(Mono::new(0, m.m + b * m.n, m.n), &(c * &phase));
        }
        out
    }

    pub fn torus(&self) -> &Arc<PresentedAlgebra> {
        &self.torus
    }

    /// First pair of solid-torus monomials of degree `≤ d` on which `χ¹₂` or `χ²₁`
    /// fails to be multiplicative, or to preserve the grading.
    pub fn verify_multiplicative(&self, d: u32) -> Option<(AlgebraKind, Mono, Mono)> {
        for kind in [AlgebraKind::SolidTorusP, AlgebraKind::SolidTorusQ] {
            let alg = shared_algebra(kind);
            let chi = |e: &AlgElement| match kind {
                AlgebraKind::SolidTorusP => self.chi12(e),
                _ => self.chi21(e),
            };
            let monos = alg.basis_enumerate(d);
            for &x in &monos {
                let ex = alg.elem(x);
                let cx = chi(&ex);
                if cx.terms().any(|(m, _)| m.n != x.n) {
                    return Some((kind, x, x));
                }
                for &y in &monos {
                    let lhs = chi(&alg.mul(&ex, &alg.elem(y)));
                    if lhs != self.torus.mul(&cx, &chi(&alg.elem(y))) {
                        return Some((kind, x, y));
                    }
                }
            }
        }
        None
    }
}

pub fn build_chi_maps(beta: i32) -> Result<ChiMaps, LensError> {
    if beta < 0 {
        return Err(LensError::NegativeCharge(beta));
    }
    Ok(ChiMaps::with_charge(beta))
}

/// Element of the glued algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluedElement {
    pub e1: AlgElement,
    pub e2: AlgElement,
}

impl fmt::Display for GluedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.e1, self.e2)
    }
}

/// Coordinates in the basis `{(ξ^k x^m h^n, 0)}_{k>0} ∪ {(0, ξ^k y^m g^n)}_{k>0} ∪
/// {(x^m h^n, u^{-βn²} y^{m-βn} g^n)}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LensCoords {
    pub f1: BTreeMap<Mono, Scalar>,
    pub f2: BTreeMap<Mono, Scalar>,
    pub f3: BTreeMap<(i32, i32), Scalar>,
}

impl LensCoords {
    pub fn is_zero(&self) -> bool {
        self.f1.is_empty() && self.f2.is_empty() && self.f3.is_empty()
    }
}

/// Index of a basis vector of the glued algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LensBasis {
    /// `(ξ^k x^m h^n, 0)`, `k > 0`
    F1(Mono),
    /// `(0, ξ^k y^m g^n)`, `k > 0`
    F2(Mono),
    /// `(x^m h^n, u^{-βn²} y^{m-βn} g^n)`
    F3(i32, i32),
}

impl LensBasis {
    pub fn degree(&self) -> u32 {
        match self {
            LensBasis::F1(m) | LensBasis::F2(m) => m.degree(),
            LensBasis::F3(m, n) => m.unsigned_abs() + n.unsigned_abs(),
        }
    }
}

/// Generators `ξ, z, a, b` of a lens algebra (or their images in some model).
#[derive(Clone, Debug)]
pub struct LensGens<E> {
    pub xi: E,
    pub z: E,
    pub a: E,
    pub b: E,
}

/// The glued algebra for a fixed charge `β`.
#[derive(Clone, Debug)]
pub struct LensAlgebra {
    chi: ChiMaps,
    p1: Arc<PresentedAlgebra>,
    p2: Arc<PresentedAlgebra>,
}

impl LensAlgebra {
    pub fn new(beta: i32) -> Result<Self, LensError> {
        build_chi_maps(beta).map(LensAlgebra::from_chi)
    }

    fn from_chi(chi: ChiMaps) -> Self {
        LensAlgebra {
            chi,
            p1: shared_algebra(AlgebraKind::SolidTorusP),
            p2: shared_algebra(AlgebraKind::SolidTorusQ),
        }
    }

    /// Target of the negative-charge isomorphism: the same construction with charge `-β`.
    pub fn reflected(&self) -> LensAlgebra {
        LensAlgebra::from_chi(ChiMaps::with_charge(-self.chi.beta))
    }

    pub fn beta(&self) -> i32 {
        self.chi.beta
    }

    pub fn chi(&self) -> &ChiMaps {
        &self.chi
    }

    pub fn p1(&self) -> &Arc<PresentedAlgebra> {
        &self.p1
    }

    pub fn p2(&self) -> &Arc<PresentedAlgebra> {
        &self.p2
    }

    pub fn pair(&self, e1: AlgElement, e2: AlgElement) -> Result<GluedElement, LensError> {
        let g = GluedElement { e1, e2 };
        if self.is_member(&g) {
            Ok(g)
        } else {
            Err(LensError::NotMember(g.to_string()))
        }
    }

    pub fn is_member(&self, g: &GluedElement) -> bool {
        g.e1.kind() == AlgebraKind::SolidTorusP
            && g.e2.kind() == AlgebraKind::SolidTorusQ
            && self.chi.chi12(&g.e1) == self.chi.chi21(&g.e2)
    }

    fn raw(e1: AlgElement, e2: AlgElement) -> GluedElement {
        GluedElement { e1, e2 }
    }

    fn p_mono(&self, m: Mono, c: Scalar) -> AlgElement {
        AlgElement::mono(AlgebraKind::SolidTorusP, m, c)
    }

    fn q_mono(&self, m: Mono, c: Scalar) -> AlgElement {
        AlgElement::mono(AlgebraKind::SolidTorusQ, m, c)
    }

    pub fn generators(&self) -> LensGens<GluedElement> {
        let b = self.beta();
        let zero_q = AlgElement::zero(AlgebraKind::SolidTorusQ);
        LensGens {
            xi: LensAlgebra::raw(self.p_mono(Mono::new(1, 0, 0), Scalar::one()), zero_q),
            z: LensAlgebra::raw(
                self.p_mono(Mono::new(0, 1, 0), Scalar::one()),
                self.q_mono(Mono::new(0, 1, 0), Scalar::one()),
            ),
            a: LensAlgebra::raw(
                self.p_mono(Mono::new(0, b, 1), Scalar::u_pow(b)),
                self.q_mono(Mono::new(0, 0, 1), Scalar::one()),
            ),
            b: LensAlgebra::raw(
                self.p_mono(Mono::new(0, 0, -1), Scalar::u_pow(b)),
                self.q_mono(Mono::new(0, b, -1), Scalar::one()),
            ),
        }
    }

    pub fn basis_vector(&self, idx: LensBasis) -> GluedElement {
        let b = self.beta();
        match idx {
            LensBasis::F1(m) => LensAlgebra::raw(
                self.p_mono(m, Scalar::one()),
                AlgElement::zero(AlgebraKind::SolidTorusQ),
            ),
            LensBasis::F2(m) => LensAlgebra::raw(
                AlgElement::zero(AlgebraKind::SolidTorusP),
                self.q_mono(m, Scalar::one()),
            ),
            LensBasis::F3(m, n) => LensAlgebra::raw(
                self.p_mono(Mono::new(0, m, n), Scalar::one()),
                self.q_mono(Mono::new(0, m - b * n, n), Scalar::u_pow(-b * n * n)),
            ),
        }
    }

    /// Basis vectors of degree at most `d`.
    pub fn basis_enumerate(&self, d: u32) -> Vec<LensBasis> {
        let mut out = Vec::new();
        for m in self.p1.basis_enumerate(d) {
            if m.k == 0 {
                out.push(LensBasis::F3(m.m, m.n));
            } else {
                out.push(LensBasis::F1(m));
                out.push(LensBasis::F2(m));
            }
        }
        out
    }

    pub fn basis_decompose(&self, g: &GluedElement) -> Result<LensCoords, LensError> {
        if !self.is_member(g) {
            return Err(LensError::NotMember(g.to_string()));
        }
        let mut coords = LensCoords::default();
        let mut rest2 = g.e2.clone();
        for (m, c) in g.e1.terms() {
            if m.k > 0 {
                coords.f1.insert(*m, c.clone());
            } else {
                coords.f3.insert((m.m, m.n), c.clone());
                let v = self.basis_vector(LensBasis::F3(m.m, m.n));
                rest2 = rest2.minus(&v.e2.scaled(c));
            }
        }
        for (m, c) in rest2.terms() {
            if m.k == 0 {
                return Err(LensError::NotMember(format!(
                    "second component keeps a ξ-free term {m:?}"
                )));
            }
            coords.f2.insert(*m, c.clone());
        }
        Ok(coords)
    }

    pub fn reassemble(&self, c: &LensCoords) -> GluedElement {
        let mut out = self.zero();
        for (m, s) in &c.f1 {
            out = out.plus(&self.basis_vector(LensBasis::F1(*m)).scaled(s));
        }
        for (m, s) in &c.f2 {
            out = out.plus(&self.basis_vector(LensBasis::F2(*m)).scaled(s));
        }
        for ((m, n), s) in &c.f3 {
            out = out.plus(&self.basis_vector(LensBasis::F3(*m, *n)).scaled(s));
        }
        out
    }

    /// Random combination of `terms` basis vectors of degree `≤ d` with small integer
    /// coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R, d: u32, terms: usize) -> GluedElement {
        let basis = self.basis_enumerate(d);
        let mut out = self.zero();
        for _ in 0..terms {
            let idx = basis[rng.gen_range(0..basis.len())];
            let c = Scalar::from_int(rng.gen_range(-3..=3));
            out = out.plus(&self.basis_vector(idx).scaled(&c));
        }
        out
    }

    /// `η = 1 - z z* - ξ`.
    pub fn eta(&self) -> GluedElement {
        let g = self.generators();
        let zz = self.mul(&g.z, &self.star(&g.z));
        self.sub(&self.sub(&self.one(), &zz), &g.xi)
    }

    /// Closed-form expression of a basis vector through `ξ, z, a, b`.
    pub fn generator_expression(&self, idx: LensBasis) -> GluedElement {
        express_basis(self, self, &self.generators(), idx)
    }

    /// Basis vectors of degree `≤ d` whose generator expression disagrees with them.
    pub fn generator_expressibility(&self, d: u32) -> Vec<LensBasis> {
        self.basis_enumerate(d)
            .into_iter()
            .filter(|idx| self.generator_expression(*idx) != self.basis_vector(*idx))
            .collect()
    }

    /// Decomposes and reassembles every basis vector of degree `≤ d`, then `samples`
    /// products of two random elements of degree `≤ d/2`. Returns the number of cases,
    /// or a description of the first element that does not round-trip.
    pub fn basis_closure_check<R: Rng>(&self, rng: &mut R, d: u32, samples: usize) -> Result<usize, String> {
        let round_trip = |e: &GluedElement| -> Result<(), String> {
            let c = self.basis_decompose(e).map_err(|err| err.to_string())?;
            if &self.reassemble(&c) != e {
                return Err(format!("reassembly differs for {e}"));
            }
            Ok(())
        };
        let mut cases = 0;
        for idx in self.basis_enumerate(d) {
            round_trip(&self.basis_vector(idx))?;
            cases += 1;
        }
        for _ in 0..samples {
            let x = self.random_element(rng, d / 2, 2);
            let y = self.random_element(rng, d - d / 2, 2);
            round_trip(&self.mul(&x, &y))?;
            cases += 1;
        }
        Ok(cases)
    }

    /// Negative-charge isomorphism: `h ↦ h*`, `g ↦ g*`, `u ↦ u^{-1}` componentwise.
    /// The image lies in [`LensAlgebra::reflected`].
    pub fn negative_charge_iso(&self, g: &GluedElement) -> GluedElement {
        let flip = |e: &AlgElement| {
            let mut out = AlgElement::zero(e.kind());
            for (m, c) in e.terms() {
                out.add_term(Mono::new(m.k, m.m, -m.n), &c.conj());
            }
            out
        };
        LensAlgebra::raw(flip(&g.e1), flip(&g.e2))
    }
}

impl GluedElement {
    pub fn plus(&self, o: &GluedElement) -> GluedElement {
        GluedElement {
            e1: self.e1.plus(&o.e1),
            e2: self.e2.plus(&o.e2),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> GluedElement {
        GluedElement {
            e1: self.e1.scaled(c),
            e2: self.e2.scaled(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e1.is_zero() && self.e2.is_zero()
    }

    /// Largest filtration degree over both components.
    pub fn degree(&self) -> u32 {
        self.e1.degree().max(self.e2.degree())
    }
}

impl StarAlgebra for LensAlgebra {
    type Elem = GluedElement;

    fn zero(&self) -> GluedElement {
        LensAlgebra::raw(
            AlgElement::zero(AlgebraKind::SolidTorusP),
            AlgElement::zero(AlgebraKind::SolidTorusQ),
        )
    }

    fn one(&self) -> GluedElement {
        LensAlgebra::raw(
            AlgElement::one(AlgebraKind::SolidTorusP),
            AlgElement::one(AlgebraKind::SolidTorusQ),
        )
    }

    fn add(&self, a: &GluedElement, b: &GluedElement) -> GluedElement {
        a.plus(b)
    }

    fn scale(&self, c: &Scalar, a: &GluedElement) -> GluedElement {
        a.scaled(c)
    }

    fn mul(&self, a: &GluedElement, b: &GluedElement) -> GluedElement {
        LensAlgebra::raw(self.p1.mul(&a.e1, &b.e1), self.p2.mul(&a.e2, &b.e2))
    }

    fn star(&self, a: &GluedElement) -> GluedElement {
        LensAlgebra::raw(self.p1.star(&a.e1), self.p2.star(&a.e2))
    }
}

impl GradedAlgebra for LensAlgebra {
    fn grade_decompose(&self, e: &GluedElement) -> BTreeMap<i32, GluedElement> {
        let mut out: BTreeMap<i32, GluedElement> = BTreeMap::new();
        for (n, part) in e.e1.grade_decompose() {
            out.entry(n).or_insert_with(|| self.zero()).e1 = part;
        }
        for (n, part) in e.e2.grade_decompose() {
            out.entry(n).or_insert_with(|| self.zero()).e2 = part;
        }
        out
    }

    fn is_zero(&self, e: &GluedElement) -> bool {
        e.is_zero()
    }
}

/// The word in `ξ, z, a, b` representing a basis vector, evaluated in any model of the
/// generators (`lens` supplies the charge and the `Q` polynomials).
pub fn express_basis<A: StarAlgebra>(
    lens: &LensAlgebra,
    alg: &A,
    g: &LensGens<A::Elem>,
    idx: LensBasis,
) -> A::Elem {
    let b = lens.beta();
    let eta = alg.sub(&alg.sub(&alg.one(), &alg.mul(&g.z, &alg.star(&g.z))), &g.xi);
    match idx {
        LensBasis::F1(m) => {
            let w = alg.product(&[
                &alg.pow(&g.xi, m.k as i32),
                &alg.pow(&g.z, m.m),
                &alg.pow(&g.b, -m.n),
            ]);
            alg.scale(&Scalar::u_pow(b * m.n), &w)
        }
        LensBasis::F2(m) => alg.product(&[
            &alg.pow(&eta, m.k as i32),
            &alg.pow(&g.z, m.m),
            &alg.pow(&g.a, m.n),
        ]),
        LensBasis::F3(m, n) => {
            let first = alg.scale(
                &Scalar::u_pow(b * n),
                &alg.mul(&alg.pow(&g.z, m), &alg.pow(&g.b, -n)),
            );
            let qpoly = lens
                .p2()
                .compute_q(m, -b * n)
                .expect("q-solid torus has a disc part");
            let mut qeta = alg.zero();
            for (j, c) in qpoly.iter().enumerate().skip(1) {
                if !c.is_zero() {
                    qeta = alg.add(&qeta, &alg.scale(c, &alg.pow(&eta, j as i32)));
                }
            }
            let second = alg.scale(
                &Scalar::u_pow(-b * n * n),
                &alg.product(&[&alg.pow(&g.z, m - b * n), &qeta, &alg.pow(&g.a, n)]),
            );
            alg.sub(&first, &second)
        }
    }
}

// ---------------------------------------------------------------------------
// Relations

/// One relation `lhs = rhs` evaluated in some model.
#[derive(Clone, Debug)]
pub struct Relation<E> {
    pub tag: String,
    pub lhs: E,
    pub rhs: E,
}

fn rel<E>(tag: &str, lhs: E, rhs: E) -> Relation<E> {
    Relation {
        tag: tag.to_string(),
        lhs,
        rhs,
    }
}

fn phase(ph: &Scalar, k: i32) -> Scalar {
    ph.pow(k).expect("phase is a unit")
}

/// `Σ_{m=0}^β (-1)^m t^{e(m)} [β m] x^m` for the four quadratic relations.
fn binomial_sum<A: StarAlgebra>(
    alg: &A,
    x: &A::Elem,
    beta: u32,
    t: QVar,
    star_first: bool,
) -> A::Elem {
    let (base, var) = match (t, star_first) {
        (QVar::P, true) => (Scalar::p(), QVar::PInv),
        (QVar::P, false) => (Scalar::p(), QVar::P),
        (_, true) => (Scalar::q(), QVar::QInv),
        (_, false) => (Scalar::q(), QVar::Q),
    };
    let b = beta as i32;
    let mut acc = alg.zero();
    for m in 0..=beta {
        let mi = m as i32;
        let e = if star_first {
            b * mi - mi * (mi - 1) / 2
        } else {
            -b * mi + mi * (mi + 1) / 2
        };
        let sign = if m % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let c = &(&sign * &base.pow(e).expect("unit")) * &Scalar::qbinom(beta, m, var);
        acc = alg.add(&acc, &alg.scale(&c, &alg.pow(x, mi)));
    }
    acc
}

/// The eleven defining relation groups of the lens algebra with charge `β`;
/// `ph` plays the role of `e^{iθ/2}`.
pub fn lens_relations<A: StarAlgebra>(
    alg: &A,
    g: &LensGens<A::Elem>,
    beta: u32,
    ph: &Scalar,
) -> Vec<Relation<A::Elem>> {
    let b = beta as i32;
    let one = alg.one();
    let p = Scalar::p();
    let q = Scalar::q();
    let zs = alg.star(&g.z);
    let as_ = alg.star(&g.a);
    let bs = alg.star(&g.b);
    let eta = alg.sub(&alg.sub(&one, &alg.mul(&g.z, &zs)), &g.xi);
    let m = |x: &A::Elem, y: &A::Elem| alg.mul(x, y);
    let s = |c: &Scalar, x: &A::Elem| alg.scale(c, x);
    let pb = p.pow(b).expect("unit");
    let qb = q.pow(b).expect("unit");
    vec![
        rel("(a) xi* = xi", alg.star(&g.xi), g.xi.clone()),
        rel("(a) xi z = p z xi", m(&g.xi, &g.z), s(&p, &m(&g.z, &g.xi))),
        rel(
            "(a) z* z - q z z* = 1 - q - (p - q) xi",
            alg.sub(&m(&zs, &g.z), &s(&q, &m(&g.z, &zs))),
            alg.sub(&s(&(&Scalar::one() - &q), &one), &s(&(&p - &q), &g.xi)),
        ),
        rel("(b) (1 - z z* - xi) xi = 0", m(&eta, &g.xi), alg.zero()),
        rel("(c) xi a = p^beta a xi", m(&g.xi, &g.a), s(&pb, &m(&g.a, &g.xi))),
        rel("(c) xi b = b xi", m(&g.xi, &g.b), m(&g.b, &g.xi)),
        rel(
            "(c) z a = e^{-i theta} a z",
            m(&g.z, &g.a),
            s(&phase(ph, -2), &m(&g.a, &g.z)),
        ),
        rel(
            "(c) z b = e^{i theta} b z",
            m(&g.z, &g.b),
            s(&phase(ph, 2), &m(&g.b, &g.z)),
        ),
        rel(
            "(d) z a* - e^{i theta} a* z = (p^beta - 1) xi z^{1-beta} b",
            alg.sub(&m(&g.z, &as_), &s(&phase(ph, 2), &m(&as_, &g.z))),
            s(
                &(&pb - &Scalar::one()),
                &alg.product(&[&g.xi, &alg.pow(&g.z, 1 - b), &g.b]),
            ),
        ),
        rel(
            "(e) z* b - e^{-i theta} b z* = (1 - q^beta) z^{beta-1} (1 - z z* - xi) a*",
            alg.sub(&m(&zs, &g.b), &s(&phase(ph, -2), &m(&g.b, &zs))),
            s(
                &(&Scalar::one() - &qb),
                &alg.product(&[&alg.pow(&g.z, b - 1), &eta, &as_]),
            ),
        ),
        rel(
            "(f) a b = e^{i beta theta} b a",
            m(&g.a, &g.b),
            s(&phase(ph, 2 * b), &m(&g.b, &g.a)),
        ),
        rel(
            "(f) a b* = e^{-i beta theta} b* a",
            m(&g.a, &bs),
            s(&phase(ph, -2 * b), &m(&bs, &g.a)),
        ),
        rel("(g) b a = z^beta", m(&g.b, &g.a), alg.pow(&g.z, b)),
        rel(
            "(h) a* a",
            m(&as_, &g.a),
            binomial_sum(alg, &g.xi, beta, QVar::P, true),
        ),
        rel(
            "(i) a a*",
            m(&g.a, &as_),
            binomial_sum(alg, &g.xi, beta, QVar::P, false),
        ),
        rel("(j) b* b", m(&bs, &g.b), binomial_sum(alg, &eta, beta, QVar::Q, true)),
        rel("(k) b b*", m(&g.b, &bs), binomial_sum(alg, &eta, beta, QVar::Q, false)),
    ]
}

/// Consequences of the defining relations; `window` bounds the exponent family.
pub fn derived_relations<A: StarAlgebra>(
    alg: &A,
    g: &LensGens<A::Elem>,
    beta: u32,
    ph: &Scalar,
    window: i32,
) -> Vec<Relation<A::Elem>> {
    let b = beta as i32;
    let q = Scalar::q();
    let one = alg.one();
    let eta = alg.sub(&alg.sub(&one, &alg.mul(&g.z, &alg.star(&g.z))), &g.xi);
    let m = |x: &A::Elem, y: &A::Elem| alg.mul(x, y);
    let mut out = vec![
        rel("eta z = q z eta", m(&eta, &g.z), alg.scale(&q, &m(&g.z, &eta))),
        rel("eta a = a eta", m(&eta, &g.a), m(&g.a, &eta)),
        rel(
            "eta b = q^beta b eta",
            m(&eta, &g.b),
            alg.scale(&q.pow(b).expect("unit"), &m(&g.b, &eta)),
        ),
    ];
    for n in -window..=window {
        out.push(rel(
            &format!("xi a^{n} = e^(i beta theta n(n+1)/2) xi z^(beta n) b^(-n)"),
            m(&g.xi, &alg.pow(&g.a, n)),
            alg.scale(
                &phase(ph, b * n * (n + 1)),
                &alg.product(&[&g.xi, &alg.pow(&g.z, b * n), &alg.pow(&g.b, -n)]),
            ),
        ));
    }
    out
}

/// Relations of the Heegaard-type presentation at charge one, in terms of `a, b`.
pub fn heegaard_relations<A: StarAlgebra>(
    alg: &A,
    a: &A::Elem,
    b: &A::Elem,
    ph: &Scalar,
) -> Vec<Relation<A::Elem>> {
    let p = Scalar::p();
    let q = Scalar::q();
    let one = alg.one();
    let as_ = alg.star(a);
    let bs = alg.star(b);
    let m = |x: &A::Elem, y: &A::Elem| alg.mul(x, y);
    vec![
        rel(
            "a* a - p a a* = 1 - p",
            alg.sub(&m(&as_, a), &alg.scale(&p, &m(a, &as_))),
            alg.scalar(&(&Scalar::one() - &p)),
        ),
        rel(
            "b* b - q b b* = 1 - q",
            alg.sub(&m(&bs, b), &alg.scale(&q, &m(b, &bs))),
            alg.scalar(&(&Scalar::one() - &q)),
        ),
        rel("a b = e^{i theta} b a", m(a, b), alg.scale(&phase(ph, 2), &m(b, a))),
        rel(
            "a b* = e^{-i theta} b* a",
            m(a, &bs),
            alg.scale(&phase(ph, -2), &m(&bs, a)),
        ),
        rel(
            "(1 - a a*)(1 - b b*) = 0",
            m(&alg.sub(&one, &m(a, &as_)), &alg.sub(&one, &m(b, &bs))),
            alg.zero(),
        ),
    ]
}

/// Relation tags whose two sides differ in the glued algebra.
pub fn failing<E: PartialEq>(rels: &[Relation<E>]) -> Vec<String> {
    rels.iter()
        .filter(|r| r.lhs != r.rhs)
        .map(|r| r.tag.clone())
        .collect()
}

/// Outcome of the charge-one reduction and the maps `f_β`.
#[derive(Clone, Debug, Default)]
pub struct HeegaardReport {
    /// `z = b a` and `ξ = 1 - a a*` at charge one.
    pub generators_reduce: bool,
    pub heegaard_failures: Vec<String>,
    /// Lens relations rewritten through `a, b` only.
    pub reduced_failures: Vec<String>,
    /// Relations of the charge-`β` algebra (angle `βθ`) that fail on the `f_β` images.
    pub f_beta_failures: Vec<String>,
    /// Every image is homogeneous of degree in `βℤ`.
    pub graded: bool,
}

impl HeegaardReport {
    pub fn ok(&self) -> bool {
        self.generators_reduce
            && self.heegaard_failures.is_empty()
            && self.reduced_failures.is_empty()
            && self.f_beta_failures.is_empty()
            && self.graded
    }
}

/// Images of `ξ, z, a, b` under `f_β` inside the charge-one algebra.
pub fn f_beta_images(one: &LensAlgebra, beta: u32) -> LensGens<GluedElement> {
    let g = one.generators();
    let b = beta as i32;
    LensGens {
        xi: one.sub(&one.one(), &one.mul(&g.a, &one.star(&g.a))),
        z: one.mul(&g.b, &g.a),
        a: one.pow(&g.a, b),
        b: one.pow(&g.b, b).scaled(&Scalar::u_pow(b * (b - 1))),
    }
}

pub fn heegaard_and_fbeta(beta: u32) -> HeegaardReport {
    let one = LensAlgebra::new(1).expect("positive charge");
    let g = one.generators();
    let u = Scalar::u();
    let mut report = HeegaardReport {
        generators_reduce: g.z == one.mul(&g.b, &g.a)
            && g.xi == one.sub(&one.one(), &one.mul(&g.a, &one.star(&g.a))),
        heegaard_failures: failing(&heegaard_relations(&one, &g.a, &g.b, &u)),
        ..Default::default()
    };
    let reduced = f_beta_images(&one, 1);
    report.reduced_failures = failing(&lens_relations(&one, &reduced, 1, &u));
    let images = f_beta_images(&one, beta);
    let ph = Scalar::u_pow(beta as i32);
    report.f_beta_failures = failing(&lens_relations(&one, &images, beta, &ph));
    let b = beta as i32;
    let graded_in = |e: &GluedElement| {
        let parts = one.grade_decompose(e);
        parts.len() <= 1 && parts.keys().all(|d| b == 0 && *d == 0 || b != 0 && d % b == 0)
    };
    report.graded = [&images.xi, &images.z, &images.a, &images.b]
        .into_iter()
        .all(graded_in);
    report
}

// ---------------------------------------------------------------------------
// Gauge classification

/// Failure witness of a candidate gauge table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeWitness {
    pub left: (i32, i32),
    pub right: (i32, i32),
    pub reason: String,
}

/// Decides whether `χ(ξ^k y^m g^n) = δ_{k0} μ(n) V^{m+ν(n)} U^n` is a unital *-homomorphism
/// with `α = 1` on the window `|n| ≤ window`, by checking products and adjoints of window
/// monomials.
pub fn validate_gauge_classification(
    mu: &dyn Fn(i32) -> Scalar,
    nu: &dyn Fn(i32) -> i32,
    window: i32,
) -> Result<(), GaugeWitness> {
    let p2 = shared_algebra(AlgebraKind::SolidTorusQ);
    let torus = shared_algebra(AlgebraKind::Torus);
    let chi = |e: &AlgElement| {
        let mut out = AlgElement::zero(AlgebraKind::Torus);
        for (m, c) in e.terms().filter(|(m, _)| m.k == 0) {
            out.add_term(Mono::new(0, m.m + nu(m.n), m.n), &(c * &mu(m.n)));
        }
        out
    };
    let unit = AlgElement::one(AlgebraKind::SolidTorusQ);
    if chi(&unit) != AlgElement::one(AlgebraKind::Torus) {
        return Err(GaugeWitness {
            left: (0, 0),
            right: (0, 0),
            reason: "unit not preserved".into(),
        });
    }
    // α = 1: the coefficient of U is u^{ν(1)}, the residue of the quadratic phase.
    if mu(1) != Scalar::u_pow(nu(1)) {
        return Err(GaugeWitness {
            left: (0, 1),
            right: (0, 1),
            reason: "α differs from 1".into(),
        });
    }
    let mrange = -2..=2;
    for n1 in -window..=window {
        for m1 in mrange.clone() {
            let x = AlgElement::mono(AlgebraKind::SolidTorusQ, Mono::new(0, m1, n1), Scalar::one());
            if chi(&p2.star(&x)) != torus.star(&chi(&x)) {
                return Err(GaugeWitness {
                    left: (m1, n1),
                    right: (m1, n1),
                    reason: "adjoint not preserved".into(),
                });
            }
            for n2 in -window..=window {
                if (n1 + n2).abs() > window {
                    continue;
                }
                for m2 in mrange.clone() {
                    let y = AlgElement::mono(
                        AlgebraKind::SolidTorusQ,
                        Mono::new(0, m2, n2),
                        Scalar::one(),
                    );
                    let lhs = chi(&p2.mul(&x, &y));
                    let rhs = torus.mul(&chi(&x), &chi(&y));
                    if lhs != rhs {
                        return Err(GaugeWitness {
                            left: (m1, n1),
                            right: (m2, n2),
                            reason: format!("product maps to {lhs}, expected {rhs}"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Candidate gauge data `μ(n) = s p^{c n} u^{a n² + b n}`, `ν(n) = d n + e n²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaugeCandidate {
    pub s: i64,
    pub a: i32,
    pub b: i32,
    pub c: i32,
    pub d: i32,
    pub e: i32,
}

impl GaugeCandidate {
    pub fn family(beta: i32) -> Self {
        GaugeCandidate { s: 1, a: beta, b: 0, c: 0, d: beta, e: 0 }
    }

    pub fn in_family(&self) -> bool {
        self.s == 1 && self.b == 0 && self.c == 0 && self.e == 0 && self.a == self.d
    }

    pub fn mu(&self, n: i32) -> Scalar {
        &Scalar::from_int(self.s.pow(n.unsigned_abs()))
            * &Scalar::pqu(self.c * n, 0, self.a * n * n + self.b * n)
    }

    pub fn nu(&self, n: i32) -> i32 {
        self.d * n + self.e * n * n
    }

    pub fn validate(&self, window: i32) -> Result<(), GaugeWitness> {
        validate_gauge_classification(&|n| self.mu(n), &|n| self.nu(n), window)
    }

    /// The charge-`β` member with one or two fields redrawn, never landing in the family.
    pub fn random_perturbation<R: Rng>(rng: &mut R, beta: i32) -> Self {
        loop {
            let mut g = Self::family(beta);
            for _ in 0..rng.gen_range(1..=2) {
                match rng.gen_range(0..6) {
                    0 => g.s = [-1, 2, 3][rng.gen_range(0..3)],
                    1 => g.a += rng.gen_range(-2..=2),
                    2 => g.b += rng.gen_range(-2..=2),
                    3 => g.c += rng.gen_range(-2..=2),
                    4 => g.d += rng.gen_range(-2..=2),
                    _ => g.e += rng.gen_range(-1..=1),
                }
            }
            if !g.in_family() {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_members() {
        for beta in 0..=3 {
            let l = LensAlgebra::new(beta).unwrap();
            let g = l.generators();
            for e in [&g.xi, &g.z, &g.a, &g.b] {
                assert!(l.is_member(e), "beta {beta}: {e}");
            }
        }
        assert_eq!(build_chi_maps(-1).unwrap_err(), LensError::NegativeCharge(-1));
    }

    #[test]
    fn decompose_b() {
        let l = LensAlgebra::new(2).unwrap();
        let c = l.basis_decompose(&l.generators().b).unwrap();
        assert!(c.f1.is_empty() && c.f2.is_empty());
        assert_eq!(c.f3.get(&(0, -1)), Some(&Scalar::u_pow(2)));
    }

    #[test]
    fn non_member_rejected() {
        let l = LensAlgebra::new(1).unwrap();
        let g = l.generators();
        let bad = GluedElement {
            e1: g.a.e1.clone(),
            e2: AlgElement::zero(AlgebraKind::SolidTorusQ),
        };
        assert!(matches!(l.basis_decompose(&bad), Err(LensError::NotMember(_))));
    }
}
