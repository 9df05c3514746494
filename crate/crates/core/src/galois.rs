//! Canonical map, translation map and entwining for the glued lens algebra, with exact
//! normal forms on `P ⊗_B P` (`B` the degree-zero part).
//!
//! `P ⊗_B P` has the basis
//! `X̄_m H_s ⊗ H_t`, `(ξ^k x^m h^s, 0) ⊗ H_t` and `(0, ξ^k y^m g^s) ⊗ G_t` (`k > 0`) with
//! `X̄_m = (x^m, y^m)`, `H_s = (h^s, u^{-βs²} y^{-βs} g^s)` and `G_t = (u^{βt²} x^{βt} h^t, g^t)`.
//! Normal forms are reached by sliding degree-zero factors from the right leg to the left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::comodule::GradedAlgebra;
use crate::lens::{GluedElement, LensAlgebra, LensBasis, LensError};
use crate::linalg::QMatrix;
use crate::ncalg::{shared_algebra, AlgElement, AlgebraKind, Mono, StarAlgebra};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error("reduction left the expected sector: {0}")]
    Sector(String),
}

/// Finite sum `Σ c_i l_i ⊗ r_i` in `P ⊗ P`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlainTensor<E> {
    pub terms: Vec<(Scalar, E, E)>,
}

impl<E: Clone> PlainTensor<E> {
    pub fn new() -> Self {
        PlainTensor { terms: Vec::new() }
    }

    pub fn simple(l: E, r: E) -> Self {
        PlainTensor {
            terms: vec![(Scalar::one(), l, r)],
        }
    }

    pub fn push(&mut self, c: Scalar, l: E, r: E) {
        if !c.is_zero() {
            self.terms.push((c, l, r));
        }
    }

    pub fn extend(&mut self, other: &PlainTensor<E>, c: &Scalar) {
        for (d, l, r) in &other.terms {
            self.push(c * d, l.clone(), r.clone());
        }
    }
}

impl<E: Clone> Default for PlainTensor<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// `p ⊗ q ↦ Σ_n p q_n ⊗ u^n`, keyed by `n`.
pub fn canonical_map<A: GradedAlgebra>(alg: &A, t: &PlainTensor<A::Elem>) -> BTreeMap<i32, A::Elem> {
    let mut out: BTreeMap<i32, A::Elem> = BTreeMap::new();
    for (c, l, r) in &t.terms {
        for (n, rn) in alg.grade_decompose(r) {
            let v = alg.scale(c, &alg.mul(l, &rn));
            let slot = out.entry(n).or_insert_with(|| alg.zero());
            *slot = alg.add(slot, &v);
        }
    }
    out.retain(|_, v| !alg.is_zero(v));
    out
}

/// `τ(u^n) = b^n ⊗ b^{-n} + a^{-n} ⊗ a^n (1 - b^n b^{-n})`, negative powers read as star powers.
pub fn translation_tau(lens: &LensAlgebra, n: i32) -> PlainTensor<GluedElement> {
    let g = lens.generators();
    let bn = lens.pow(&g.b, n);
    let bmn = lens.pow(&g.b, -n);
    let proj = lens.sub(&lens.one(), &lens.mul(&bn, &bmn));
    let mut t = PlainTensor::new();
    t.push(Scalar::one(), bn, bmn);
    let right = lens.mul(&lens.pow(&g.a, n), &proj);
    if !right.is_zero() {
        t.push(Scalar::one(), lens.pow(&g.a, -n), right);
    }
    t
}

/// `(e, n) ↦ e h^{-n} ⊗ h^n` for a solid torus.
pub fn cleft_can_inverse(e: &AlgElement, n: i32) -> PlainTensor<AlgElement> {
    let alg = shared_algebra(e.kind());
    PlainTensor::simple(alg.mul(e, &alg.h_pow(-n)), alg.h_pow(n))
}

/// Basis vector of `P ⊗_B P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    /// `X̄_m H_s ⊗ H_t`
    Bar { m: i32, s: i32, t: i32 },
    /// `(ξ^k x^m h^s, 0) ⊗ H_t`, `k > 0`
    Xi { k: u32, m: i32, s: i32, t: i32 },
    /// `(0, ξ^k y^m g^s) ⊗ G_t`, `k > 0`
    Eta { k: u32, m: i32, s: i32, t: i32 },
}

impl Sector {
    pub fn degree(&self) -> u32 {
        match *self {
            Sector::Bar { m, s, t } => m.unsigned_abs() + s.unsigned_abs() + t.unsigned_abs(),
            Sector::Xi { k, m, s, t } | Sector::Eta { k, m, s, t } => {
                2 * k + m.unsigned_abs() + s.unsigned_abs() + t.unsigned_abs()
            }
        }
    }

    /// Degree in `C` of the right leg.
    pub fn right_degree(&self) -> i32 {
        match *self {
            Sector::Bar { t, .. } | Sector::Xi { t, .. } | Sector::Eta { t, .. } => t,
        }
    }
}

/// Coordinates of an element of `P ⊗_B P` over [`Sector`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BTensor {
    pub coords: BTreeMap<Sector, Scalar>,
}

impl BTensor {
    pub fn add_term(&mut self, s: Sector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(s).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for BTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(s, c)| format!("({c}) {s:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact normal forms in `P ⊗_B P` for one lens algebra.
pub struct TensorReducer<'a> {
    lens: &'a LensAlgebra,
}

impl<'a> TensorReducer<'a> {
    pub fn new(lens: &'a LensAlgebra) -> Self {
        TensorReducer { lens }
    }

    pub fn lens(&self) -> &LensAlgebra {
        self.lens
    }

    fn beta(&self) -> i32 {
        self.lens.beta()
    }

    fn first(&self, m: Mono, c: Scalar) -> GluedElement {
        GluedElement {
            e1: AlgElement::mono(AlgebraKind::SolidTorusP, m, c),
            e2: AlgElement::zero(AlgebraKind::SolidTorusQ),
        }
    }

    fn second(&self, m: Mono, c: Scalar) -> GluedElement {
        GluedElement {
            e1: AlgElement::zero(AlgebraKind::SolidTorusP),
            e2: AlgElement::mono(AlgebraKind::SolidTorusQ, m, c),
        }
    }

    /// `X̄_m = (x^m, y^m)`.
    pub fn xbar(&self, m: i32) -> GluedElement {
        GluedElement {
            e1: AlgElement::mono(AlgebraKind::SolidTorusP, Mono::new(0, m, 0), Scalar::one()),
            e2: AlgElement::mono(AlgebraKind::SolidTorusQ, Mono::new(0, m, 0), Scalar::one()),
        }
    }

    pub fn h_elem(&self, s: i32) -> GluedElement {
        self.lens.basis_vector(LensBasis::F3(0, s))
    }

    pub fn g_elem(&self, t: i32) -> GluedElement {
        let b = self.beta();
        GluedElement {
            e1: AlgElement::mono(
                AlgebraKind::SolidTorusP,
                Mono::new(0, b * t, t),
                Scalar::u_pow(b * t * t),
            ),
            e2: AlgElement::mono(AlgebraKind::SolidTorusQ, Mono::new(0, 0, t), Scalar::one()),
        }
    }

    /// Plain representative of a basis vector.
    pub fn sector_tensor(&self, s: Sector) -> PlainTensor<GluedElement> {
        match s {
            Sector::Bar { m, s, t } => {
                PlainTensor::simple(self.lens.mul(&self.xbar(m), &self.h_elem(s)), self.h_elem(t))
            }
            Sector::Xi { k, m, s, t } => {
                PlainTensor::simple(self.first(Mono::new(k, m, s), Scalar::one()), self.h_elem(t))
            }
            Sector::Eta { k, m, s, t } => {
                PlainTensor::simple(self.second(Mono::new(k, m, s), Scalar::one()), self.g_elem(t))
            }
        }
    }

    /// Basis vectors of `P ⊗_B P` of degree `≤ d`.
    pub fn sectors(&self, d: u32) -> Vec<Sector> {
        let di = d as i32;
        let mut out = Vec::new();
        for t in -di..=di {
            for s in -di..=di {
                for m in -di..=di {
                    let bar = Sector::Bar { m, s, t };
                    if bar.degree() <= d {
                        out.push(bar);
                    }
                    for k in 1..=d / 2 {
                        let xi = Sector::Xi { k, m, s, t };
                        if xi.degree() <= d {
                            out.push(xi);
                            out.push(Sector::Eta { k, m, s, t });
                        }
                    }
                }
            }
        }
        out
    }

    /// `y^m y^{-βn} - y^{m-βn} = Σ_j c_j ξ^j y^{m-βn}`: pairs `(j, c_j)` with `j ≥ 1`.
    fn q_correction(&self, m: i32, n: i32) -> Vec<(u32, Scalar)> {
        let s = m - self.beta() * n;
        let q = self
            .lens
            .p2()
            .compute_q(m, -self.beta() * n)
            .expect("q-solid torus has a disc part");
        // y^s ξ^j = q^{-sj} ξ^j y^s
        q.into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, &c * &Scalar::q_pow(-s * j as i32)))
            .collect()
    }

    /// Normal form of the class of `t` in `P ⊗_B P`.
    pub fn normal_form(&self, t: &PlainTensor<GluedElement>) -> Result<BTensor, GaloisError> {
        let lens = self.lens;
        let b = self.beta();
        let mut h_legs: BTreeMap<i32, GluedElement> = BTreeMap::new();
        let mut g_legs: BTreeMap<i32, GluedElement> = BTreeMap::new();
        let add = |map: &mut BTreeMap<i32, GluedElement>, k: i32, v: GluedElement| {
            let slot = map.entry(k).or_insert_with(|| lens.zero());
            *slot = slot.plus(&v);
        };
        // Right leg: F1 = X·H_n, F2 = Y·G_n, F3 = X̄_m H_n - Σ_j c_j u^{-βn²} Y_j G_n.
        for (c, p, q) in &t.terms {
            let coords = lens.basis_decompose(q)?;
            for (mono, s) in &coords.f1 {
                let x = self.first(Mono::new(mono.k, mono.m, 0), s * c);
                add(&mut h_legs, mono.n, lens.mul(p, &x));
            }
            for (mono, s) in &coords.f2 {
                let y = self.second(Mono::new(mono.k, mono.m, 0), s * c);
                add(&mut g_legs, mono.n, lens.mul(p, &y));
            }
            for (&(m, n), s) in &coords.f3 {
                let sc = s * c;
                add(&mut h_legs, n, lens.mul(p, &self.xbar(m).scaled(&sc)));
                let phase = &sc * &Scalar::u_pow(-b * n * n);
                for (j, cj) in self.q_correction(m, n) {
                    let y = self.second(Mono::new(j, m - b * n, 0), -(&phase * &cj));
                    add(&mut g_legs, n, lens.mul(p, &y));
                }
            }
        }
        let mut out = BTensor::default();
        for (tdeg, left) in &g_legs {
            self.push_eta(&mut out, left, *tdeg)?;
        }
        // Left legs against H_t; F2 parts are rewritten as G_s Y' ⊗ H_t = G_s ⊗ Y' H_t.
        for (&tdeg, left) in &h_legs {
            let coords = lens.basis_decompose(left)?;
            let mut f2_parts: Vec<(Mono, Scalar)> =
                coords.f2.iter().map(|(m, c)| (*m, c.clone())).collect();
            for (mono, c) in &coords.f1 {
                out.add_term(
                    Sector::Xi {
                        k: mono.k,
                        m: mono.m,
                        s: mono.n,
                        t: tdeg,
                    },
                    c,
                );
            }
            for (&(m, s), c) in &coords.f3 {
                out.add_term(Sector::Bar { m, s, t: tdeg }, c);
                let phase = c * &Scalar::u_pow(-b * s * s);
                for (j, cj) in self.q_correction(m, s) {
                    f2_parts.push((Mono::new(j, m - b * s, s), -(&phase * &cj)));
                }
            }
            for (mono, c) in f2_parts {
                self.push_f2_against_h(&mut out, mono, &c, tdeg)?;
            }
        }
        Ok(out)
    }

    /// Adds `left ⊗ G_t`; `left` must lie in the `F2` span.
    fn push_eta(&self, out: &mut BTensor, left: &GluedElement, t: i32) -> Result<(), GaloisError> {
        let coords = self.lens.basis_decompose(left)?;
        if !coords.f1.is_empty() || !coords.f3.is_empty() {
            return Err(GaloisError::Sector(format!("{left} ⊗ G_{t}")));
        }
        for (mono, c) in &coords.f2 {
            out.add_term(
                Sector::Eta {
                    k: mono.k,
                    m: mono.m,
                    s: mono.n,
                    t,
                },
                c,
            );
        }
        Ok(())
    }

    /// `c (0, ξ^k y^m g^s) ⊗ H_t = c G_s ⊗ Y' H_t` with `Y' = (0, g^{-s} ξ^k y^m g^s)`.
    fn push_f2_against_h(
        &self,
        out: &mut BTensor,
        mono: Mono,
        c: &Scalar,
        t: i32,
    ) -> Result<(), GaloisError> {
        let p2 = self.lens.p2();
        let s = mono.n;
        let y_prime = p2.mul(
            &p2.h_pow(-s),
            &AlgElement::mono(AlgebraKind::SolidTorusQ, Mono::new(mono.k, mono.m, 0), c.clone()),
        );
        let y_prime = p2.mul(&y_prime, &p2.h_pow(s));
        let right = GluedElement {
            e1: AlgElement::zero(AlgebraKind::SolidTorusP),
            e2: p2.mul(&y_prime, &self.h_elem(t).e2),
        };
        let coords = self.lens.basis_decompose(&right)?;
        if !coords.f1.is_empty() || !coords.f3.is_empty() {
            return Err(GaloisError::Sector(format!("Y'H_{t} = {right}")));
        }
        let gs = self.g_elem(s);
        for (m2, c2) in &coords.f2 {
            if m2.n != t {
                return Err(GaloisError::Sector(format!("Y'H_{t} has degree {}", m2.n)));
            }
            let y = self.second(Mono::new(m2.k, m2.m, 0), c2.clone());
            self.push_eta(out, &self.lens.mul(&gs, &y), t)?;
        }
        Ok(())
    }
}

/// `Σ_n e_n τ(u^n)^{[1]} ⊗ τ(u^n)^{[2]}` against `1 ⊗ e` in `P ⊗_B P`.
pub fn check_trpp(lens: &LensAlgebra, e: &GluedElement) -> Result<bool, GaloisError> {
    let red = TensorReducer::new(lens);
    let mut lhs = PlainTensor::new();
    for (n, en) in lens.grade_decompose(e) {
        for (c, l, r) in translation_tau(lens, n).terms {
            lhs.push(c, lens.mul(&en, &l), r);
        }
    }
    let rhs = PlainTensor::simple(lens.one(), e.clone());
    Ok(red.normal_form(&lhs)? == red.normal_form(&rhs)?)
}

/// Specialization point used for exact rank computations.
pub fn rank_point() -> (BigRational, BigRational, BigRational) {
    (
        BigRational::new(2.into(), 7.into()),
        BigRational::new(3.into(), 11.into()),
        BigRational::new(5.into(), 13.into()),
    )
}

/// `F_i(p ⊗ q) = Σ_n (χ_i(p) χ_i(q_n) γ_i^{-n}, n)` for both solid tori; these factor through
/// the (injective) cleft canonical maps of the two pieces.
pub fn component_images(
    lens: &LensAlgebra,
    t: &PlainTensor<GluedElement>,
) -> [BTreeMap<(i32, Mono), Scalar>; 2] {
    let mut out = [BTreeMap::new(), BTreeMap::new()];
    for (c, p, q) in &t.terms {
        for (i, (alg, pl, ql)) in [(lens.p1(), &p.e1, &q.e1), (lens.p2(), &p.e2, &q.e2)]
            .into_iter()
            .enumerate()
        {
            for (n, qn) in ql.grade_decompose() {
                let v = alg.mul(&alg.mul(pl, &qn), &alg.h_pow(-n));
                for (m, s) in v.terms() {
                    let slot: &mut Scalar = out[i].entry((n, *m)).or_insert_with(Scalar::zero);
                    *slot += &(s * c);
                }
            }
        }
    }
    for map in &mut out {
        map.retain(|_, s| !s.is_zero());
    }
    out
}

/// Rank data of the combined map `F_1 ⊕ F_2` on a family of tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub tensors: usize,
    pub rank: usize,
}

impl KernelReport {
    pub fn injective(&self) -> bool {
        self.rank == self.tensors
    }
}

/// Exact rank of `F_1 ⊕ F_2` on `family`, after specializing `p, q, u` at [`rank_point`].
/// Full rank there implies full rank over the Laurent coefficients.
pub fn combined_rank(lens: &LensAlgebra, family: &[PlainTensor<GluedElement>]) -> KernelReport {
    let (pv, qv, uv) = rank_point();
    let images: Vec<_> = family.iter().map(|t| component_images(lens, t)).collect();
    // Both maps keep the C-degree n of a homogeneous right leg, so the matrix is block
    // diagonal in n unless some tensor mixes degrees.
    let degrees: Vec<Vec<i32>> = images
        .iter()
        .map(|img| {
            let mut ks: Vec<i32> = img.iter().flat_map(|m| m.keys().map(|k| k.0)).collect();
            ks.dedup();
            ks.sort_unstable();
            ks.dedup();
            ks
        })
        .collect();
    let mixed = degrees.iter().any(|ks| ks.len() > 1);
    let mut blocks: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (idx, ks) in degrees.iter().enumerate() {
        let n = match ks.first() {
            None => i32::MIN,
            Some(_) if mixed => 0,
            Some(&n) => n,
        };
        blocks.entry(n).or_default().push(idx);
    }
    let mut rank = 0;
    for (n, rows) in blocks {
        if n == i32::MIN {
            continue;
        }
        let mut cols: HashMap<(usize, i32, Mono), usize> = HashMap::new();
        let mut entries: Vec<Vec<(usize, BigRational)>> = Vec::new();
        for &r in &rows {
            let mut row = Vec::new();
            for (i, img) in images[r].iter().enumerate() {
                for (&(nn, m), s) in img {
                    let next = cols.len();
                    let col = *cols.entry((i, nn, m)).or_insert(next);
                    row.push((col, s.specialize(&pv, &qv, &uv)));
                }
            }
            entries.push(row);
        }
        let mut mat = QMatrix::zeros(entries.len(), cols.len());
        for (r, row) in entries.into_iter().enumerate() {
            for (c, v) in row {
                mat[(r, c)] = v;
            }
        }
        rank += mat.rank();
    }
    KernelReport {
        tensors: family.len(),
        rank,
    }
}

/// `ker(χ_1 ⊗_B χ_1) ∩ ker(χ_2 ⊗_B χ_2) = 0` on the basis tensors of degree `≤ d`, with
/// `extra` tensors appended to the family.
pub fn kernel_intersection_report(
    lens: &LensAlgebra,
    d: u32,
    extra: &[PlainTensor<GluedElement>],
) -> KernelReport {
    let red = TensorReducer::new(lens);
    let mut family: Vec<_> = red.sectors(d).into_iter().map(|s| red.sector_tensor(s)).collect();
    family.extend_from_slice(extra);
    combined_rank(lens, &family)
}

pub fn kernel_intersection_check(lens: &LensAlgebra, d: u32) -> bool {
    kernel_intersection_report(lens, d, &[]).injective()
}

// ---------------------------------------------------------------------------
// Entwining

/// `ψ(u^m ⊗ p) = Σ_n p_n ⊗ u^{m+n}`.
pub fn psi<A: GradedAlgebra>(alg: &A, m: i32, p: &A::Elem) -> BTreeMap<i32, A::Elem> {
    alg.grade_decompose(p)
        .into_iter()
        .map(|(n, pn)| (m + n, pn))
        .collect()
}

/// Outcome of the four bow-tie identities and the entwined-module law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EntwiningReport {
    pub unit: bool,
    pub multiplicative: bool,
    pub comultiplicative: bool,
    pub counital: bool,
    pub entwined_module: bool,
    pub coaction: bool,
    pub cases: usize,
}

impl EntwiningReport {
    pub fn ok(&self) -> bool {
        self.unit
            && self.multiplicative
            && self.comultiplicative
            && self.counital
            && self.entwined_module
            && self.coaction
    }
}

fn collect<A: GradedAlgebra, K: Ord>(alg: &A, map: BTreeMap<K, A::Elem>) -> BTreeMap<K, A::Elem> {
    map.into_iter().filter(|(_, v)| !alg.is_zero(v)).collect()
}

fn accumulate<A: GradedAlgebra, K: Ord>(alg: &A, map: &mut BTreeMap<K, A::Elem>, k: K, v: A::Elem) {
    let slot = map.entry(k).or_insert_with(|| alg.zero());
    *slot = alg.add(slot, &v);
}

/// Checks the bow-tie identities for `ψ` on all pairs from `samples` and `|m| ≤ window`.
pub fn entwining_check<A>(alg: &A, samples: &[A::Elem], window: i32) -> EntwiningReport
where
    A: GradedAlgebra,
    A::Elem: PartialEq,
{
    let mut r = EntwiningReport {
        unit: true,
        multiplicative: true,
        comultiplicative: true,
        counital: true,
        entwined_module: true,
        coaction: true,
        cases: 0,
    };
    for m in -window..=window {
        let mut unit = BTreeMap::new();
        unit.insert(m, alg.one());
        r.unit &= psi(alg, m, &alg.one()) == unit;
        for a in samples {
            r.cases += 1;
            let pa = psi(alg, m, a);
            // (A ⊗ Δ)ψ = (ψ ⊗ C)(C ⊗ ψ)(Δ ⊗ A)
            let lhs: BTreeMap<(i32, i32), A::Elem> =
                pa.iter().map(|(k, v)| ((*k, *k), v.clone())).collect();
            let mut rhs = BTreeMap::new();
            for (k, ak) in &pa {
                for (j, e) in psi(alg, m, ak) {
                    accumulate(alg, &mut rhs, (j, *k), e);
                }
            }
            r.comultiplicative &= collect(alg, lhs) == collect(alg, rhs);
            let sum = pa.values().fold(alg.zero(), |acc, v| alg.add(&acc, v));
            r.counital &= sum == *a;
            if m == 0 {
                r.coaction &= collect(alg, pa.clone()) == alg.coaction(a);
            }
            for b in samples {
                let lhs = collect(alg, psi(alg, m, &alg.mul(a, b)));
                let mut rhs = BTreeMap::new();
                for (k, ak) in &pa {
                    for (l, bl) in psi(alg, *k, b) {
                        accumulate(alg, &mut rhs, l, alg.mul(ak, &bl));
                    }
                }
                r.multiplicative &= lhs == collect(alg, rhs);
                if m == 0 {
                    let lhs = alg.coaction(&alg.mul(a, b));
                    let mut rhs = BTreeMap::new();
                    for (k, ak) in alg.coaction(a) {
                        for (l, e) in psi(alg, k, b) {
                            accumulate(alg, &mut rhs, l, alg.mul(&ak, &e));
                        }
                    }
                    r.entwined_module &= lhs == collect(alg, rhs);
                }
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Kernel factorization

/// Outcome of `J = K γ(C)` for `J = ker χ¹₂` in the `p`-solid torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub kernel_dim: usize,
    /// Every kernel element is `Σ k_n h^n` with `k_n ∈ K`.
    pub factors: bool,
    /// `K h^n ⊆ J` on the window.
    pub converse: bool,
    /// Degree-zero part of `J` equals `K`.
    pub coinvariant_part: bool,
    /// `h^n ker(π) = ker(π) h^n` on the window, for both solid tori.
    pub commutes: bool,
}

impl FactorizationReport {
    pub fn ok(&self) -> bool {
        self.factors && self.converse && self.coinvariant_part && self.commutes
    }
}

fn chi12_kernel(monos: &[Mono]) -> Vec<AlgElement> {
    let st = shared_algebra(AlgebraKind::SolidTorusP);
    let chi = crate::lens::build_chi_maps(0).expect("charge zero");
    let images: Vec<AlgElement> = monos.iter().map(|m| chi.chi12(&st.elem(*m))).collect();
    let mut rows: BTreeMap<Mono, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = rows.len();
            rows.entry(*m).or_insert(next);
        }
    }
    // χ¹₂ sends monomials to monomials with coefficient one.
    let mut mat = QMatrix::zeros(rows.len(), monos.len());
    for (j, img) in images.iter().enumerate() {
        for (m, _) in img.terms() {
            mat[(rows[m], j)] = BigRational::from_integer(1.into());
        }
    }
    mat.kernel()
        .iter()
        .map(|v| {
            let mut e = AlgElement::zero(AlgebraKind::SolidTorusP);
            for (c, m) in v.iter().zip(monos) {
                e.add_term(*m, &Scalar::from_rational(c.clone()));
            }
            e
        })
        .collect()
}

/// `J` is computed as the kernel of the matrix of `χ¹₂` on monomials of degree `≤ d`.
pub fn kernel_factorization_check(d: u32) -> FactorizationReport {
    let st = shared_algebra(AlgebraKind::SolidTorusP);
    let chi = crate::lens::build_chi_maps(0).expect("charge zero");
    let monos = st.basis_enumerate(d);
    let kernel = chi12_kernel(&monos);
    let in_k = |e: &AlgElement| e.terms().all(|(m, _)| m.k > 0 && m.n == 0);
    let mut factors = true;
    for e in &kernel {
        let mut rebuilt = AlgElement::zero(AlgebraKind::SolidTorusP);
        for (n, en) in e.grade_decompose() {
            let k = st.mul(&en, &st.h_pow(-n));
            factors &= in_k(&k);
            rebuilt = rebuilt.plus(&st.mul(&k, &st.h_pow(n)));
        }
        factors &= rebuilt == *e;
    }
    let di = d as i32;
    let k_basis: Vec<Mono> = monos.iter().copied().filter(|m| m.k > 0 && m.n == 0).collect();
    let mut converse = true;
    for m in &k_basis {
        for n in -di..=di {
            converse &= chi.chi12(&st.mul(&st.elem(*m), &st.h_pow(n))).is_zero();
        }
    }
    let degree_zero: Vec<Mono> = monos.iter().copied().filter(|m| m.n == 0).collect();
    let j0 = chi12_kernel(&degree_zero);
    let coinvariant_part = j0.len() == k_basis.len() && j0.iter().all(in_k);
    let mut commutes = true;
    for kind in [AlgebraKind::SolidTorusP, AlgebraKind::SolidTorusQ] {
        let alg = shared_algebra(kind);
        for m in alg.basis_enumerate(d).into_iter().filter(|m| m.k > 0 && m.n == 0) {
            for n in -di..=di {
                let conj = alg.mul(&alg.mul(&alg.h_pow(n), &alg.elem(m)), &alg.h_pow(-n));
                commutes &= conj.terms().all(|(x, _)| x.k > 0 && x.n == 0);
            }
        }
    }
    FactorizationReport {
        kernel_dim: kernel.len(),
        factors,
        converse,
        coinvariant_part,
        commutes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_map_examples() {
        let l = LensAlgebra::new(1).unwrap();
        let g = l.generators();
        let c = canonical_map(&l, &PlainTensor::simple(l.one(), g.a.clone()));
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(1, g.a.clone())]);
        let bs = l.star(&g.b);
        let c = canonical_map(&l, &PlainTensor::simple(g.b.clone(), bs.clone()));
        assert_eq!(c.get(&1), Some(&l.mul(&g.b, &bs)));
    }

    #[test]
    fn basis_tensors_are_fixed() {
        let l = LensAlgebra::new(2).unwrap();
        let red = TensorReducer::new(&l);
        for s in red.sectors(2) {
            let nf = red.normal_form(&red.sector_tensor(s)).unwrap();
            let mut expect = BTensor::default();
            expect.add_term(s, &Scalar::one());
            assert_eq!(nf, expect, "{s:?}");
        }
    }

    #[test]
    fn mixed_kernel_tensor_vanishes() {
        let l = LensAlgebra::new(1).unwrap();
        let red = TensorReducer::new(&l);
        let x = l.basis_vector(LensBasis::F1(Mono::new(1, 1, 0)));
        let y = l.basis_vector(LensBasis::F2(Mono::new(1, 0, 1)));
        assert!(red.normal_form(&PlainTensor::simple(x, y)).unwrap().is_zero());
    }
}
