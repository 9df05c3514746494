//! Truncated matrix models of the representation families of the disc, torus, solid torus and
//! lens algebras, with relation residuals and Gram-rank independence.

use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::lens::{express_basis, lens_relations, LensAlgebra, LensGens, Relation};
use crate::ncalg::{shared_algebra, AlgebraKind, Gen, StarAlgebra};
use crate::scalar::Scalar;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("invalid representation parameters: {0}")]
    Domain(String),
    #[error("families act on different algebras")]
    MixedSources,
}

/// Representation family and its own parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RepKind {
    DiscChar { phi: f64 },
    DiscInf,
    /// `θ = 2πM/N` on `ℤ_N`; `alpha`, `beta_angle` are the eigenphase parameters.
    TorusRational { m: u32, n: u32, alpha: f64, beta_angle: f64 },
    TorusIrrational { alpha: f64 },
    SolidTorus { alpha: f64 },
    LensPrime { mu: f64 },
    LensDoublePrime { mu: f64 },
    /// `θ = 2πM/N` on `ℤ_N`.
    LensZeroRational { m: i32, n: u32, mu: f64, nu: f64 },
    LensZeroIrrational { mu: f64 },
}

/// A family with deformation parameters, charge and truncation size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepSpec {
    pub kind: RepKind,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
    pub beta: u32,
    pub dim: usize,
}

/// Algebra a family represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Presented(AlgebraKind),
    Lens(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Geometry {
    /// Basis `Ψ_0, Ψ_1, …` cut at `N`.
    Half,
    /// Basis `Ψ_n`, `n ∈ ℤ`, cut to a centred window.
    Bilateral,
    /// Basis indexed by `ℤ_N`; no truncation.
    Cyclic,
}

impl RepSpec {
    pub fn new(kind: RepKind, p: f64, q: f64, theta: f64, beta: u32, dim: usize) -> Self {
        RepSpec {
            kind,
            p,
            q,
            theta,
            beta,
            dim,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            RepKind::DiscChar { .. } => "disc_char",
            RepKind::DiscInf => "disc_inf",
            RepKind::TorusRational { .. } => "torus_rational",
            RepKind::TorusIrrational { .. } => "torus_irrational",
            RepKind::SolidTorus { .. } => "solid_torus",
            RepKind::LensPrime { .. } => "lens_prime",
            RepKind::LensDoublePrime { .. } => "lens_doubleprime",
            RepKind::LensZeroRational { .. } => "lens_zero_rational",
            RepKind::LensZeroIrrational { .. } => "lens_zero_irrational",
        }
    }

    pub fn source(&self) -> Source {
        match self.kind {
            RepKind::DiscChar { .. } | RepKind::DiscInf => Source::Presented(AlgebraKind::DiscP),
            RepKind::TorusRational { .. } | RepKind::TorusIrrational { .. } => {
                Source::Presented(AlgebraKind::Torus)
            }
            RepKind::SolidTorus { .. } => Source::Presented(AlgebraKind::SolidTorusP),
            _ => Source::Lens(self.beta),
        }
    }

    fn geometry(&self) -> Geometry {
        match self.kind {
            RepKind::DiscChar { .. } | RepKind::TorusRational { .. } | RepKind::LensZeroRational { .. } => {
                Geometry::Cyclic
            }
            RepKind::TorusIrrational { .. } | RepKind::LensZeroIrrational { .. } => Geometry::Bilateral,
            _ => Geometry::Half,
        }
    }

    /// Deformation angle actually used: rational families fix `θ = 2πM/N`.
    pub fn effective_theta(&self) -> f64 {
        match self.kind {
            RepKind::TorusRational { m, n, .. } => 2.0 * PI * m as f64 / n as f64,
            RepKind::LensZeroRational { m, n, .. } => 2.0 * PI * m as f64 / n as f64,
            _ => self.theta,
        }
    }

    /// Dimension of the matrices.
    pub fn effective_dim(&self) -> usize {
        match self.kind {
            RepKind::DiscChar { .. } => 1,
            RepKind::TorusRational { n, .. } | RepKind::LensZeroRational { n, .. } => n as usize,
            _ => self.dim,
        }
    }

    pub fn margin(&self) -> usize {
        self.beta as usize + 1
    }

    /// Rows on which the truncation reproduces the infinite-dimensional action.
    pub fn interior(&self) -> Range<usize> {
        let n = self.effective_dim();
        let m = self.margin();
        match self.geometry() {
            Geometry::Cyclic => 0..n,
            Geometry::Half => 0..n.saturating_sub(m),
            Geometry::Bilateral => m.min(n)..n.saturating_sub(m),
        }
    }

    pub fn validate(&self) -> Result<(), RepError> {
        let bad = |s: String| Err(RepError::Domain(s));
        if !(self.p > 0.0 && self.p < 1.0 && self.q > 0.0 && self.q < 1.0) {
            return bad(format!("p = {}, q = {} must lie in (0,1)", self.p, self.q));
        }
        if !self.theta.is_finite() {
            return bad(format!("theta = {} is not finite", self.theta));
        }
        match self.kind {
            RepKind::TorusRational { m, n, .. } if n == 0 || m >= n || m.gcd(&n) != 1 => {
                return bad(format!("M = {m}, N = {n} must be coprime with M < N"));
            }
            RepKind::LensZeroRational { m, n, .. } if n == 0 || m.unsigned_abs().gcd(&n) != 1 => {
                return bad(format!("M = {m}, N = {n} must be coprime with N > 0"));
            }
            _ => {}
        }
        let min_dim = match self.geometry() {
            Geometry::Cyclic => 1,
            Geometry::Half => self.beta as usize + 2,
            Geometry::Bilateral => 2 * self.margin() + 1,
        };
        if self.effective_dim() < min_dim {
            return bad(format!("dimension {} below {min_dim}", self.effective_dim()));
        }
        Ok(())
    }
}

/// Generator matrices of one representation, including the images of the adjoint letters.
#[derive(Clone, Debug)]
pub struct RepOperators {
    pub spec: RepSpec,
    /// `(name, matrix)` pairs in a fixed order.
    pub generators: Vec<(&'static str, CMatrix)>,
    pub interior: Range<usize>,
}

impl RepOperators {
    pub fn get(&self, name: &str) -> &CMatrix {
        &self
            .generators
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("no generator {name}"))
            .1
    }

    pub fn dim(&self) -> usize {
        self.spec.effective_dim()
    }

    /// `(w, w*)` name pairs whose images must be mutually adjoint.
    pub fn adjoint_pairs(&self) -> Vec<(&'static str, &'static str)> {
        match self.spec.source() {
            Source::Presented(AlgebraKind::Torus) => vec![("U", "U*"), ("V", "V*")],
            Source::Presented(k) if k.has_h() => vec![("x", "x*"), ("h", "h*"), ("xi", "xi")],
            Source::Presented(_) => vec![("x", "x*"), ("xi", "xi")],
            Source::Lens(_) => vec![("xi", "xi"), ("z", "z*"), ("a", "a*"), ("b", "b*")],
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// Raising operator `Ψ_n ↦ w(n) Ψ_{n+1}` on `Ψ_0..Ψ_{N-1}`.
fn raising(n: usize, w: impl Fn(usize) -> Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        m[(i + 1, i)] = w(i);
    }
    m
}

fn diagonal(n: usize, w: impl Fn(usize) -> Complex64) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| if i == j { w(i) } else { c(0.0, 0.0) })
}

/// `Ψ_n ↦ w(n) Ψ_{n+s}`, cyclic or cut.
fn shift(n: usize, s: i64, cyclic: bool, w: impl Fn(usize) -> Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        let t = i as i64 + s;
        let t = if cyclic {
            t.rem_euclid(n as i64)
        } else if t < 0 || t >= n as i64 {
            continue;
        } else {
            t
        };
        m[(t as usize, i)] = w(i);
    }
    m
}

/// `√(1-t^{n+1}) … √(1-t^{n+k})`.
fn sqrt_prod(t: f64, n: usize, k: u32) -> f64 {
    (1..=k as i32)
        .map(|j| (1.0 - t.powi(n as i32 + j)).sqrt())
        .product()
}

/// Builds the generator matrices of a representation.
pub fn build_rep(spec: &RepSpec) -> Result<RepOperators, RepError> {
    spec.validate()?;
    let n = spec.effective_dim();
    let (p, q, theta, beta) = (spec.p, spec.q, spec.effective_theta(), spec.beta);
    let adj = |m: &CMatrix| m.adjoint();
    let disc = |t: f64| {
        let x = raising(n, |i| c((1.0 - t.powi(i as i32 + 1)).sqrt(), 0.0));
        let xi = diagonal(n, |i| c(t.powi(i as i32), 0.0));
        (x, xi)
    };
    // bilateral index of row i
    let centre = (n / 2) as f64;
    let generators: Vec<(&'static str, CMatrix)> = match spec.kind {
        RepKind::DiscChar { phi } => {
            let x = CMatrix::from_element(1, 1, phase(phi));
            let xs = CMatrix::from_element(1, 1, phase(-phi));
            let xi = CMatrix::zeros(1, 1);
            vec![("x", x), ("x*", xs), ("xi", xi)]
        }
        RepKind::DiscInf => {
            let (x, xi) = disc(p);
            let xs = shift(n, -1, false, |i| c((1.0 - p.powi(i as i32)).sqrt(), 0.0));
            vec![("x", x), ("x*", xs), ("xi", xi)]
        }
        RepKind::TorusRational {
            m, alpha, beta_angle, ..
        } => {
            let nf = n as f64;
            let u = diagonal(n, |i| phase(alpha / nf + 2.0 * PI * i as f64 * m as f64 / nf));
            let v = shift(n, 1, true, |_| phase(beta_angle / nf));
            let vs = shift(n, -1, true, |_| phase(-beta_angle / nf));
            vec![("U", u.clone()), ("U*", adj(&u)), ("V", v), ("V*", vs)]
        }
        RepKind::TorusIrrational { alpha } => {
            let u = diagonal(n, |i| phase(alpha + (i as f64 - centre) * theta));
            let v = shift(n, 1, false, |_| c(1.0, 0.0));
            let vs = shift(n, -1, false, |_| c(1.0, 0.0));
            let us = diagonal(n, |i| phase(-alpha - (i as f64 - centre) * theta));
            vec![("U", u), ("U*", us), ("V", v), ("V*", vs)]
        }
        RepKind::SolidTorus { alpha } => {
            let (x, xi) = disc(p);
            let xs = shift(n, -1, false, |i| c((1.0 - p.powi(i as i32)).sqrt(), 0.0));
            let h = diagonal(n, |i| phase(alpha + i as f64 * theta));
            let hs = diagonal(n, |i| phase(-alpha - i as f64 * theta));
            vec![("x", x), ("x*", xs), ("xi", xi), ("h", h), ("h*", hs)]
        }
        RepKind::LensPrime { mu } => {
            let z = raising(n, |i| c((1.0 - q.powi(i as i32 + 1)).sqrt(), 0.0));
            let zs = shift(n, -1, false, |i| c((1.0 - q.powi(i as i32)).sqrt(), 0.0));
            let a = diagonal(n, |i| phase(mu + i as f64 * theta));
            let as_ = diagonal(n, |i| phase(-mu - i as f64 * theta));
            let b = shift(n, beta as i64, false, |i| {
                phase(-mu - i as f64 * theta) * sqrt_prod(q, i, beta)
            });
            let bs = shift(n, -(beta as i64), false, |i| {
                let j = i - beta as usize;
                phase(mu + j as f64 * theta) * sqrt_prod(q, j, beta)
            });
            let xi = CMatrix::zeros(n, n);
            vec![("xi", xi), ("z", z), ("z*", zs), ("a", a), ("a*", as_), ("b", b), ("b*", bs)]
        }
        RepKind::LensDoublePrime { mu } => {
            let (z, xi) = disc(p);
            let zs = shift(n, -1, false, |i| c((1.0 - p.powi(i as i32)).sqrt(), 0.0));
            let b = diagonal(n, |i| phase(mu - i as f64 * theta));
            let bs = diagonal(n, |i| phase(-mu + i as f64 * theta));
            let a = shift(n, beta as i64, false, |i| {
                phase(-(mu - (i + beta as usize) as f64 * theta)) * sqrt_prod(p, i, beta)
            });
            let as_ = shift(n, -(beta as i64), false, |i| {
                let j = i - beta as usize;
                phase(mu - i as f64 * theta) * sqrt_prod(p, j, beta)
            });
            vec![("xi", xi), ("z", z), ("z*", zs), ("a", a), ("a*", as_), ("b", b), ("b*", bs)]
        }
        RepKind::LensZeroRational { mu, nu, .. } => {
            let nf = n as f64;
            let bi = beta as i64;
            let a = diagonal(n, |i| phase(mu / nf + i as f64 * theta));
            let as_ = diagonal(n, |i| phase(-mu / nf - i as f64 * theta));
            let z = shift(n, 1, true, |_| phase(nu / nf));
            let zs = shift(n, -1, true, |_| phase(-nu / nf));
            let b = shift(n, bi, true, |i| {
                phase((nu * beta as f64 - mu) / nf - i as f64 * theta)
            });
            let bs = shift(n, -bi, true, |i| {
                phase((mu - nu * beta as f64) / nf + (i as f64 - beta as f64) * theta)
            });
            let xi = CMatrix::zeros(n, n);
            vec![("xi", xi), ("z", z), ("z*", zs), ("a", a), ("a*", as_), ("b", b), ("b*", bs)]
        }
        RepKind::LensZeroIrrational { mu } => {
            let bi = beta as i64;
            let k = |i: usize| i as f64 - centre;
            let a = diagonal(n, |i| phase(mu + k(i) * theta));
            let as_ = diagonal(n, |i| phase(-mu - k(i) * theta));
            let z = shift(n, 1, false, |_| c(1.0, 0.0));
            let zs = shift(n, -1, false, |_| c(1.0, 0.0));
            let b = shift(n, bi, false, |i| phase(-mu - k(i) * theta));
            let bs = shift(n, -bi, false, |i| phase(mu + (k(i) - beta as f64) * theta));
            let xi = CMatrix::zeros(n, n);
            vec![("xi", xi), ("z", z), ("z*", zs), ("a", a), ("a*", as_), ("b", b), ("b*", bs)]
        }
    };
    Ok(RepOperators {
        spec: spec.clone(),
        generators,
        interior: spec.interior(),
    })
}

/// Complex matrices as a model of the scalar ring `u ↦ e^{iθ/2}`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub dim: usize,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
}

impl MatrixModel {
    pub fn eval(&self, s: &Scalar) -> Complex64 {
        s.eval_numeric(self.p, self.q, self.theta)
            .expect("parameters validated on construction")
    }
}

impl StarAlgebra for MatrixModel {
    type Elem = CMatrix;

    fn zero(&self) -> CMatrix {
        CMatrix::zeros(self.dim, self.dim)
    }

    fn one(&self) -> CMatrix {
        CMatrix::identity(self.dim, self.dim)
    }

    fn add(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        a + b
    }

    fn scale(&self, c: &Scalar, a: &CMatrix) -> CMatrix {
        a * self.eval(c)
    }

    fn mul(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        sparse_mul(a, b)
    }

    fn star(&self, a: &CMatrix) -> CMatrix {
        a.adjoint()
    }
}

impl RepOperators {
    pub fn model(&self) -> MatrixModel {
        MatrixModel {
            dim: self.dim(),
            p: self.spec.p,
            q: self.spec.q,
            theta: self.spec.effective_theta(),
        }
    }

    fn letter(&self, g: Gen) -> &CMatrix {
        let torus = self.spec.source() == Source::Presented(AlgebraKind::Torus);
        self.get(match (g, torus) {
            (Gen::Xi, _) => "xi",
            (Gen::X, false) => "x",
            (Gen::XStar, false) => "x*",
            (Gen::H, false) => "h",
            (Gen::HStar, false) => "h*",
            (Gen::X, true) => "V",
            (Gen::XStar, true) => "V*",
            (Gen::H, true) => "U",
            (Gen::HStar, true) => "U*",
        })
    }

    pub fn word(&self, w: &[Gen]) -> CMatrix {
        let n = self.dim();
        w.iter()
            .fold(CMatrix::identity(n, n), |acc, g| sparse_mul(&acc, self.letter(*g)))
    }

    pub fn lens_generators(&self) -> Option<LensGens<CMatrix>> {
        match self.spec.source() {
            Source::Lens(_) => Some(LensGens {
                xi: self.get("xi").clone(),
                z: self.get("z").clone(),
                a: self.get("a").clone(),
                b: self.get("b").clone(),
            }),
            _ => None,
        }
    }
}

/// Product that skips zero entries of `b`; the generators are weighted shifts.
pub fn sparse_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let c = b[(k, j)];
            if c.re != 0.0 || c.im != 0.0 {
                out.column_mut(j).axpy(c, &a.column(k), Complex64::new(1.0, 0.0));
            }
        }
    }
    out
}

/// Largest entry modulus of `m` on rows `rows`.
pub fn interior_norm(m: &CMatrix, rows: &Range<usize>) -> f64 {
    let mut best = 0.0f64;
    for r in rows.clone() {
        for c in 0..m.ncols() {
            best = best.max(m[(r, c)].norm());
        }
    }
    best
}

/// Residuals of one representation.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub family: &'static str,
    pub beta: u32,
    pub dim: usize,
    /// Defining relations of the source algebra.
    pub relations: Vec<(String, f64)>,
    /// Reduced relation set of the family.
    pub reduced: Vec<(String, f64)>,
    /// `ϱ(w*) = ϱ(w)†` for every generator.
    pub adjoint: f64,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.relations
            .iter()
            .chain(&self.reduced)
            .map(|(_, r)| *r)
            .fold(self.adjoint, f64::max)
    }
}

fn residuals(rels: &[Relation<CMatrix>], rows: &Range<usize>) -> Vec<(String, f64)> {
    rels.iter()
        .map(|r| (r.tag.clone(), interior_norm(&(&r.lhs - &r.rhs), rows)))
        .collect()
}

fn reduced_relations(ops: &RepOperators) -> Vec<Relation<CMatrix>> {
    let m = ops.model();
    let g = |s: &str| ops.get(s).clone();
    let one = m.one();
    let beta = ops.spec.beta as i32;
    let e = |t: f64| phase(t);
    let th = m.theta;
    let rel = |tag: &str, lhs: CMatrix, rhs: CMatrix| Relation {
        tag: tag.to_string(),
        lhs,
        rhs,
    };
    let unitary = |name: &str, x: CMatrix| {
        let xs = x.adjoint();
        vec![
            rel(&format!("{name}* {name} = 1"), &xs * &x, one.clone()),
            rel(&format!("{name} {name}* = 1"), &x * &xs, one.clone()),
        ]
    };
    match ops.spec.kind {
        RepKind::LensPrime { .. } | RepKind::LensZeroRational { .. } | RepKind::LensZeroIrrational { .. } => {
            let (z, a) = (g("z"), g("a"));
            let mut out = vec![
                rel("xi = 0", g("xi"), m.zero()),
                rel("b = z^beta a*", g("b"), m.pow(&z, beta) * g("a*")),
                rel("a z = e^{i theta} z a", &a * &z, &z * &a * e(th)),
                rel("a z* = e^{-i theta} z* a", &a * g("z*"), g("z*") * &a * e(-th)),
            ];
            out.extend(unitary("a", a));
            if matches!(ops.spec.kind, RepKind::LensPrime { .. }) {
                out.push(rel(
                    "z* z - q z z* = 1 - q",
                    g("z*") * &z - &z * g("z*") * c(ops.spec.q, 0.0),
                    &one * c(1.0 - ops.spec.q, 0.0),
                ));
            } else {
                out.extend(unitary("z", z));
            }
            out
        }
        RepKind::LensDoublePrime { .. } => {
            let (z, b) = (g("z"), g("b"));
            let mut out = vec![
                rel("xi = 1 - z z*", g("xi"), &one - &z * g("z*")),
                rel("a = b* z^beta", g("a"), g("b*") * m.pow(&z, beta)),
                rel(
                    "z* z - p z z* = 1 - p",
                    g("z*") * &z - &z * g("z*") * c(ops.spec.p, 0.0),
                    &one * c(1.0 - ops.spec.p, 0.0),
                ),
                rel("z b = e^{i theta} b z", &z * &b, &b * &z * e(th)),
                rel("z b* = e^{-i theta} b* z", &z * g("b*"), g("b*") * &z * e(-th)),
            ];
            out.extend(unitary("b", b));
            out
        }
        _ => Vec::new(),
    }
}

/// Evaluates every defining relation (and the family's reduced relations) on interior rows.
pub fn relation_residual(spec: &RepSpec) -> Result<ResidualReport, RepError> {
    Ok(operator_residual(&build_rep(spec)?))
}

/// [`relation_residual`] for explicitly given operators.
pub fn operator_residual(ops: &RepOperators) -> ResidualReport {
    let spec = &ops.spec;
    let rows = ops.interior.clone();
    let relations = match spec.source() {
        Source::Presented(kind) => {
            let alg = shared_algebra(kind);
            let model = ops.model();
            alg.rules()
                .iter()
                .map(|rule| {
                    let lhs = ops.word(&rule.lhs);
                    let rhs = rule.rhs.iter().fold(model.zero(), |acc, (s, w)| {
                        acc + ops.word(w) * model.eval(s)
                    });
                    let tag = format!("{:?}{:?}", rule.lhs[0], rule.lhs[1]);
                    (tag, interior_norm(&(lhs - rhs), &rows))
                })
                .chain(std::iter::once((
                    "xi = 1 - x x*".to_string(),
                    if kind.has_xi() {
                        let x = ops.letter(Gen::X);
                        interior_norm(
                            &(ops.get("xi") - (model.one() - x * ops.letter(Gen::XStar))),
                            &rows,
                        )
                    } else {
                        0.0
                    },
                )))
                .collect()
        }
        Source::Lens(beta) => {
            let g = ops.lens_generators().expect("lens family");
            residuals(&lens_relations(&ops.model(), &g, beta, &Scalar::u()), &rows)
        }
    };
    let reduced = residuals(&reduced_relations(ops), &rows);
    let mut adjoint = 0.0f64;
    for (w, ws) in ops.adjoint_pairs() {
        let d = ops.get(ws) - ops.get(w).adjoint();
        // compare on the interior block only
        let mut worst = 0.0f64;
        for r in rows.clone() {
            for c in rows.clone() {
                worst = worst.max(d[(r, c)].norm());
            }
        }
        adjoint = adjoint.max(worst);
    }
    ResidualReport {
        family: spec.name(),
        beta: spec.beta,
        dim: ops.dim(),
        relations,
        reduced,
        adjoint,
    }
}

// ---------------------------------------------------------------------------
// Independence

/// Singular-value rank of the images of basis monomials.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub monomials: usize,
    pub rank: usize,
    pub smallest_singular_value: f64,
    /// Coefficients of a near-null combination when the rank is deficient.
    pub null_combination: Option<Vec<(String, Complex64)>>,
}

impl GramReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.monomials
    }
}

pub const GRAM_TOLERANCE: f64 = 1e-9;

/// Images are computed on a padded truncation and cropped to the requested window, which gives
/// the exact compression of the infinite-dimensional operators.
pub fn independence_gram(specs: &[RepSpec], d: u32) -> Result<GramReport, RepError> {
    let source = specs.first().map(|s| s.source()).ok_or(RepError::MixedSources)?;
    if specs.iter().any(|s| s.source() != source) {
        return Err(RepError::MixedSources);
    }
    let (labels, count) = match source {
        Source::Presented(kind) => {
            let monos = shared_algebra(kind).basis_enumerate(d);
            (monos.iter().map(|m| format!("{m:?}")).collect::<Vec<_>>(), monos.len())
        }
        Source::Lens(beta) => {
            let l = LensAlgebra::new(beta as i32).expect("non-negative charge");
            let b = l.basis_enumerate(d);
            (b.iter().map(|x| format!("{x:?}")).collect(), b.len())
        }
    };
    let mut columns: Vec<Vec<Complex64>> = vec![Vec::new(); count];
    for spec in specs {
        let pad = match spec.geometry() {
            Geometry::Cyclic => 0,
            _ => 2 * (d as usize + 2) * (spec.beta as usize + 1),
        };
        let mut big = spec.clone();
        big.dim = spec.effective_dim() + 2 * pad;
        let ops = build_rep(&big)?;
        let n = spec.effective_dim();
        let offset = match spec.geometry() {
            Geometry::Half | Geometry::Cyclic => 0,
            Geometry::Bilateral => pad,
        };
        let images: Vec<CMatrix> = match source {
            Source::Presented(kind) => shared_algebra(kind)
                .basis_enumerate(d)
                .iter()
                .map(|m| ops.word(&m.word()))
                .collect(),
            Source::Lens(beta) => {
                let l = LensAlgebra::new(beta as i32).expect("non-negative charge");
                let g = ops.lens_generators().expect("lens family");
                let model = ops.model();
                l.basis_enumerate(d)
                    .into_iter()
                    .map(|idx| express_basis(&l, &model, &g, idx))
                    .collect()
            }
        };
        for (col, img) in columns.iter_mut().zip(images) {
            for r in offset..offset + n {
                for c in offset..offset + n {
                    col.push(img[(r, c)]);
                }
            }
        }
    }
    let len = columns.first().map(|c| c.len()).unwrap_or(0);
    // Zero rows up to a square shape keep the singular values and give a full V.
    let rows = len.max(count);
    let mat = CMatrix::from_fn(rows, count, |r, c| {
        if r < len {
            columns[c][r]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    // R of a tall QR has the singular values and right singular vectors of `mat`.
    let reduced = if rows > count { mat.qr().r() } else { mat };
    let svd = reduced.svd(false, true);
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv.iter().filter(|s| **s > GRAM_TOLERANCE * smax).count();
    let (imin, smallest) = sv
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, s)| if *s < acc.1 { (i, *s) } else { acc });
    let null_combination = (rank < count).then(|| {
        let vt = svd.v_t.as_ref().expect("requested");
        labels
            .iter()
            .enumerate()
            .map(|(j, l)| (l.clone(), vt[(imin, j)].conj()))
            .collect()
    });
    Ok(GramReport {
        monomials: count,
        rank,
        smallest_singular_value: smallest,
        null_combination,
    })
}

/// Default parameter set `(p, q, θ) = (1/2, 1/3, √2)`.
pub fn default_params() -> (f64, f64, f64) {
    (0.5, 1.0 / 3.0, std::f64::consts::SQRT_2)
}

/// One spec per family at charge `beta`, truncation `dim`.
pub fn all_families(beta: u32, dim: usize, p: f64, q: f64, theta: f64) -> Vec<RepSpec> {
    let kinds = [
        RepKind::DiscChar { phi: 0.7 },
        RepKind::DiscInf,
        RepKind::TorusRational {
            m: 2,
            n: 5,
            alpha: 0.4,
            beta_angle: 1.1,
        },
        RepKind::TorusIrrational { alpha: 0.4 },
        RepKind::SolidTorus { alpha: 0.4 },
        RepKind::LensPrime { mu: 0.3 },
        RepKind::LensDoublePrime { mu: 0.7 },
        RepKind::LensZeroRational {
            m: 3,
            n: 7,
            mu: 0.3,
            nu: 0.9,
        },
        RepKind::LensZeroIrrational { mu: 0.3 },
    ];
    kinds
        .into_iter()
        .map(|k| RepSpec::new(k, p, q, theta, beta, dim))
        .collect()
}
