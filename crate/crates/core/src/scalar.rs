//! Exact coefficients: Laurent polynomials in `p`, `q`, `u` over the rationals.
//!
//! `u` stands for the half-angle phase `e^{iθ/2}`, so `e^{iθ} = u^2` and complex
//! conjugation acts by `u ↦ u^{-1}` while fixing `p`, `q` and the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exponents of `p`, `q`, `u` in one monomial.
pub type Exponent = (i32, i32, i32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("numeric evaluation outside the domain: {0}")]
    Domain(String),
}

/// Variable used as the deformation parameter of a q-binomial coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QVar {
    P,
    Q,
    PInv,
    QInv,
}

impl QVar {
    fn exponent(self) -> Exponent {
        match self {
            QVar::P => (1, 0, 0),
            QVar::Q => (0, 1, 0),
            QVar::PInv => (-1, 0, 0),
            QVar::QInv => (0, -1, 0),
        }
    }
}

/// Element of `ℚ[p^{±1}, q^{±1}, u^{±1}]`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<Exponent, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::monomial(BigRational::one(), (0, 0, 0))
    }

    pub fn monomial(c: BigRational, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::monomial(BigRational::from_integer(BigInt::from(n)), (0, 0, 0))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::monomial(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            (0, 0, 0),
        )
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::monomial(c, (0, 0, 0))
    }

    /// `p^a q^b u^c` with coefficient one.
    pub fn pqu(a: i32, b: i32, c: i32) -> Self {
        Scalar::monomial(BigRational::one(), (a, b, c))
    }

    pub fn p() -> Self {
        Scalar::pqu(1, 0, 0)
    }

    pub fn q() -> Self {
        Scalar::pqu(0, 1, 0)
    }

    pub fn u() -> Self {
        Scalar::pqu(0, 0, 1)
    }

    pub fn p_pow(a: i32) -> Self {
        Scalar::pqu(a, 0, 0)
    }

    pub fn q_pow(b: i32) -> Self {
        Scalar::pqu(0, b, 0)
    }

    pub fn u_pow(c: i32) -> Self {
        Scalar::pqu(0, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a given monomial.
    pub fn coeff(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Single-term scalars are units of the Laurent ring (up to a nonzero rational).
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        let (e, c) = self.as_monomial()?;
        Some(Scalar::monomial(c.recip(), (-e.0, -e.1, -e.2)))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, n: i32) -> Option<Scalar> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Complex conjugation: `u ↦ u^{-1}`.
    pub fn conj(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c), r)| ((a, b, -c), r.clone()))
                .collect(),
        }
    }

    /// Substitution `u ↦ u^k`.
    pub fn scale_u(&self, k: i32) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a, b, c), r) in &self.terms {
            out.add_term((a, b, c * k), r.clone());
        }
        out
    }

    /// Gaussian binomial `[n m]_v` by the recurrence `[n m] = [n-1 m-1] + v^m [n-1 m]`.
    pub fn qbinom(n: u32, m: u32, v: QVar) -> Scalar {
        if m > n {
            return Scalar::zero();
        }
        let (ea, eb, ec) = v.exponent();
        let mut row: Vec<Scalar> = vec![Scalar::one()];
        for i in 1..=n as usize {
            let mut next = vec![Scalar::zero(); i + 1];
            next[0] = Scalar::one();
            next[i] = Scalar::one();
            for j in 1..i {
                let shift = Scalar::pqu(ea * j as i32, eb * j as i32, ec * j as i32);
                next[j] = &row[j - 1] + &(&shift * &row[j]);
            }
            row = next;
        }
        row.swap_remove(m as usize)
    }

    /// Evaluation at `p, q ∈ (0,1)` and `u = e^{iθ/2}`.
    pub fn eval_numeric(&self, p: f64, q: f64, theta: f64) -> Result<Complex64, ScalarError> {
        if !(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0) {
            return Err(ScalarError::Domain(format!(
                "p = {p}, q = {q} must lie in (0,1)"
            )));
        }
        if !theta.is_finite() {
            return Err(ScalarError::Domain(format!("theta = {theta} is not finite")));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b, c), r) in &self.terms {
            let coeff = r.to_f64().unwrap_or(f64::NAN);
            let mag = coeff * p.powi(a) * q.powi(b);
            acc += Complex64::from_polar(1.0, theta * c as f64 / 2.0) * mag;
        }
        Ok(acc)
    }

    /// Ring homomorphism to the rationals given nonzero values of `p`, `q`, `u`.
    pub fn specialize(&self, p: &BigRational, q: &BigRational, u: &BigRational) -> BigRational {
        let pw = |x: &BigRational, k: i32| -> BigRational {
            if k >= 0 {
                num_traits::pow(x.clone(), k as usize)
            } else {
                num_traits::pow(x.recip(), k.unsigned_abs() as usize)
            }
        };
        let mut acc = BigRational::zero();
        for (&(a, b, c), r) in &self.terms {
            acc += r * pw(p, a) * pw(q, b) * pw(u, c);
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a1, b1, c1), r1) in &self.terms {
            for (&(a2, b2, c2), r2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), r1 * r2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b, c), r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r}")?;
            for (name, e) in [("p", a), ("q", b), ("u", c)] {
                if e != 0 {
                    write!(f, " {name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarError::Parse("empty input".into()));
        }
        let mut out = Scalar::zero();
        for term in s.split(" + ") {
            let mut tokens = term.split_whitespace();
            let head = tokens
                .next()
                .ok_or_else(|| ScalarError::Parse(format!("empty term in {s:?}")))?;
            let coeff = BigRational::from_str(head)
                .map_err(|_| ScalarError::Parse(format!("bad coefficient {head:?}")))?;
            let mut e = (0, 0, 0);
            for tok in tokens {
                let (name, exp) = match tok.split_once('^') {
                    Some((n, x)) => (
                        n,
                        x.parse::<i32>()
                            .map_err(|_| ScalarError::Parse(format!("bad exponent in {tok:?}")))?,
                    ),
                    None => (tok, 1),
                };
                match name {
                    "p" => e.0 += exp,
                    "q" => e.1 += exp,
                    "u" => e.2 += exp,
                    _ => return Err(ScalarError::Parse(format!("unknown variable {name:?}"))),
                }
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }
}

/// Absolute size of the largest rational coefficient, as a float (diagnostics only).
pub fn max_abs_coeff(s: &Scalar) -> f64 {
    s.terms
        .values()
        .map(|r| r.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}
