//! U(1)-comodule structure as a ℤ-grading, cleaving maps and gauge transformations.
//!
//! A right coaction of the circle Hopf algebra `span{u^n}` is the same thing as a
//! ℤ-grading: `ρ(e) = Σ_n e_n ⊗ u^n` with `e_n` the degree-`n` part. Group-likes make
//! convolution pointwise, so an `H`-map is just a function `n ↦ element`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::ncalg::{AlgElement, AlgebraKind, Gen, Mono, PresentedAlgebra, StarAlgebra};
use crate::scalar::Scalar;

pub const DEFAULT_WINDOW: i32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error("value at u^{n} is not homogeneous of degree {expected}")]
    NotColinear { n: i32, expected: i32 },
    #[error("value at u^{n} has no convolution inverse on the window")]
    NotInvertible { n: i32 },
    #[error("the algebra {0:?} carries no cleaving map")]
    NoCleaving(AlgebraKind),
}

/// Algebras whose elements split into homogeneous parts.
pub trait GradedAlgebra: StarAlgebra {
    fn grade_decompose(&self, e: &Self::Elem) -> BTreeMap<i32, Self::Elem>;
    fn is_zero(&self, e: &Self::Elem) -> bool;

    fn is_homogeneous(&self, e: &Self::Elem, d: i32) -> bool {
        self.grade_decompose(e).keys().all(|&k| k == d)
    }

    /// Coaction `e ↦ Σ e_n ⊗ u^n`, listed as (n, e_n).
    fn coaction(&self, e: &Self::Elem) -> BTreeMap<i32, Self::Elem> {
        self.grade_decompose(e)
    }
}

impl GradedAlgebra for PresentedAlgebra {
    fn grade_decompose(&self, e: &AlgElement) -> BTreeMap<i32, AlgElement> {
        if self.kind().has_h() {
            e.grade_decompose()
        } else {
            let mut m = BTreeMap::new();
            if !e.is_zero() {
                m.insert(0, e.clone());
            }
            m
        }
    }

    fn is_zero(&self, e: &AlgElement) -> bool {
        e.is_zero()
    }
}

/// Degree of a generator letter under the standard coaction.
pub fn generator_degree(kind: AlgebraKind, g: Gen) -> i32 {
    match (kind.has_h(), g) {
        (true, Gen::H) => 1,
        (true, Gen::HStar) => -1,
        _ => 0,
    }
}

/// Linear map out of the circle Hopf algebra, given on the basis `u^n`.
pub struct HMap<E> {
    f: Arc<dyn Fn(i32) -> E + Send + Sync>,
}

impl<E> Clone for HMap<E> {
    fn clone(&self) -> Self {
        HMap { f: self.f.clone() }
    }
}

impl<E> HMap<E> {
    pub fn new(f: impl Fn(i32) -> E + Send + Sync + 'static) -> Self {
        HMap { f: Arc::new(f) }
    }

    pub fn eval(&self, n: i32) -> E {
        (self.f)(n)
    }
}

/// A cleaving map with its convolution inverse.
#[derive(Clone)]
pub struct Cleaving<E> {
    pub gamma: HMap<E>,
    pub gamma_inv: HMap<E>,
}

/// Colinearity (`γ(u^n)` has degree `n`) and invertibility on `|n| ≤ window`.
pub fn validate_cleaving<A: GradedAlgebra>(
    alg: &A,
    c: &Cleaving<A::Elem>,
    window: i32,
) -> Result<(), ComoduleError>
where
    A::Elem: PartialEq,
{
    for n in -window..=window {
        let g = c.gamma.eval(n);
        if !alg.is_homogeneous(&g, n) || alg.is_zero(&g) {
            return Err(ComoduleError::NotColinear { n, expected: n });
        }
        let gi = c.gamma_inv.eval(n);
        let one = alg.one();
        if alg.mul(&g, &gi) != one || alg.mul(&gi, &g) != one {
            return Err(ComoduleError::NotInvertible { n });
        }
    }
    Ok(())
}

/// `γ(u^n) = h^n`, validated on the default window.
pub fn standard_cleaving(
    alg: &Arc<PresentedAlgebra>,
) -> Result<Cleaving<AlgElement>, ComoduleError> {
    let kind = alg.kind();
    if !kind.has_h() {
        return Err(ComoduleError::NoCleaving(kind));
    }
    let c = Cleaving {
        gamma: HMap::new(move |n| AlgElement::mono(kind, Mono::new(0, 0, n), Scalar::one())),
        gamma_inv: HMap::new(move |n| AlgElement::mono(kind, Mono::new(0, 0, -n), Scalar::one())),
    };
    validate_cleaving(alg.as_ref(), &c, DEFAULT_WINDOW)?;
    Ok(c)
}

/// `e ↦ Σ_n e_n γ^{-1}(u^n) ⊗ u^n`: coinvariant coefficients keyed by `n`.
pub fn cleft_trivialize<A: GradedAlgebra>(
    alg: &A,
    c: &Cleaving<A::Elem>,
    e: &A::Elem,
) -> BTreeMap<i32, A::Elem> {
    alg.grade_decompose(e)
        .into_iter()
        .map(|(n, en)| (n, alg.mul(&en, &c.gamma_inv.eval(n))))
        .filter(|(_, b)| !alg.is_zero(b))
        .collect()
}

/// Inverse of [`cleft_trivialize`]: `Σ b_n γ(u^n)`.
pub fn cleft_reconstruct<A: GradedAlgebra>(
    alg: &A,
    c: &Cleaving<A::Elem>,
    parts: &BTreeMap<i32, A::Elem>,
) -> A::Elem {
    parts.iter().fold(alg.zero(), |acc, (n, b)| {
        alg.add(&acc, &alg.mul(b, &c.gamma.eval(*n)))
    })
}

/// Convolution-invertible map into the coinvariants.
#[derive(Clone)]
pub struct Gauge<E> {
    pub values: HMap<E>,
    pub inverse: HMap<E>,
}

impl<E: Clone + Send + Sync + 'static> Gauge<E> {
    pub fn identity<A: StarAlgebra<Elem = E>>(alg: &A) -> Self {
        let one = alg.one();
        let one2 = one.clone();
        Gauge {
            values: HMap::new(move |_| one.clone()),
            inverse: HMap::new(move |_| one2.clone()),
        }
    }
}

pub fn validate_gauge<A: GradedAlgebra>(
    alg: &A,
    g: &Gauge<A::Elem>,
    window: i32,
) -> Result<(), ComoduleError>
where
    A::Elem: PartialEq,
{
    for n in -window..=window {
        let v = g.values.eval(n);
        if !alg.is_homogeneous(&v, 0) || alg.is_zero(&v) {
            return Err(ComoduleError::NotColinear { n, expected: 0 });
        }
        let vi = g.inverse.eval(n);
        let one = alg.one();
        if alg.mul(&v, &vi) != one || alg.mul(&vi, &v) != one {
            return Err(ComoduleError::NotInvertible { n });
        }
    }
    Ok(())
}

/// `γ'(u^n) = Γ(u^n) γ(u^n)`, `γ'^{-1}(u^n) = γ^{-1}(u^n) Γ^{-1}(u^n)`.
pub fn gauge_transform<A>(
    alg: &Arc<A>,
    g: &Gauge<A::Elem>,
    c: &Cleaving<A::Elem>,
    window: i32,
) -> Result<Cleaving<A::Elem>, ComoduleError>
where
    A: GradedAlgebra + Send + Sync + 'static,
    A::Elem: PartialEq + Send + Sync + 'static,
{
    validate_gauge(alg.as_ref(), g, window)?;
    let (a1, a2) = (alg.clone(), alg.clone());
    let (gv, gi) = (g.values.clone(), g.inverse.clone());
    let (cg, ci) = (c.gamma.clone(), c.gamma_inv.clone());
    let out = Cleaving {
        gamma: HMap::new(move |n| a1.mul(&gv.eval(n), &cg.eval(n))),
        gamma_inv: HMap::new(move |n| a2.mul(&ci.eval(n), &gi.eval(n))),
    };
    validate_cleaving(alg.as_ref(), &out, window)?;
    Ok(out)
}

/// Pointwise product `Γ_2 ∗ Γ_1` of two gauges.
pub fn compose_gauges<A>(alg: &Arc<A>, g2: &Gauge<A::Elem>, g1: &Gauge<A::Elem>) -> Gauge<A::Elem>
where
    A: StarAlgebra + Send + Sync + 'static,
    A::Elem: Send + Sync + 'static,
{
    let (a1, a2) = (alg.clone(), alg.clone());
    let (v2, v1) = (g2.values.clone(), g1.values.clone());
    let (i2, i1) = (g2.inverse.clone(), g1.inverse.clone());
    Gauge {
        values: HMap::new(move |n| a1.mul(&v2.eval(n), &v1.eval(n))),
        inverse: HMap::new(move |n| a2.mul(&i1.eval(n), &i2.eval(n))),
    }
}

/// The torus gauge `Γ(u^n) = u^{βn²} V^{βn}`.
pub fn torus_gauge(beta: i32) -> Gauge<AlgElement> {
    let t = AlgebraKind::Torus;
    Gauge {
        values: HMap::new(move |n| {
            AlgElement::mono(t, Mono::new(0, beta * n, 0), Scalar::u_pow(beta * n * n))
        }),
        inverse: HMap::new(move |n| {
            AlgElement::mono(t, Mono::new(0, -beta * n, 0), Scalar::u_pow(-beta * n * n))
        }),
    }
}

/// `p_(0) γ^{-1}(p_(1))` is coinvariant for every sample.
pub fn check_translation_coinvariance<A: GradedAlgebra>(
    alg: &A,
    c: &Cleaving<A::Elem>,
    samples: &[A::Elem],
) -> bool {
    samples.iter().all(|e| {
        cleft_trivialize(alg, c, e)
            .values()
            .all(|b| alg.is_homogeneous(b, 0))
    })
}
