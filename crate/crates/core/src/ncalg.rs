//! Presented *-algebras (quantum disc, quantum torus, quantum solid torus) with a
//! length-two rewriting system whose irreducible words are the normal monomials
//! `ξ^k x^m h^n`.
//!
//! The torus reuses the same letters: `V` is written with the `x` letters and `U`
//! with the `h` letters. Negative exponents denote powers of the starred letter.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::scalar::{QVar, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator {0:?} does not belong to {1:?}")]
    UnknownGenerator(Gen, AlgebraKind),
    #[error("elements of {0:?} and {1:?} cannot be combined")]
    Mismatch(AlgebraKind, AlgebraKind),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Xi,
    X,
    XStar,
    H,
    HStar,
}

impl Gen {
    pub const ALL: [Gen; 5] = [Gen::Xi, Gen::X, Gen::XStar, Gen::H, Gen::HStar];

    pub fn star(self) -> Gen {
        match self {
            Gen::Xi => Gen::Xi,
            Gen::X => Gen::XStar,
            Gen::XStar => Gen::X,
            Gen::H => Gen::HStar,
            Gen::HStar => Gen::H,
        }
    }
}

pub type Word = Vec<Gen>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    DiscP,
    DiscQ,
    Torus,
    SolidTorusP,
    SolidTorusQ,
}

impl AlgebraKind {
    pub fn generators(self) -> &'static [Gen] {
        match self {
            AlgebraKind::DiscP | AlgebraKind::DiscQ => &[Gen::Xi, Gen::X, Gen::XStar],
            AlgebraKind::Torus => &[Gen::X, Gen::XStar, Gen::H, Gen::HStar],
            AlgebraKind::SolidTorusP | AlgebraKind::SolidTorusQ => &Gen::ALL,
        }
    }

    /// Deformation parameter of the disc part, if any.
    pub fn parameter(self) -> Option<QVar> {
        match self {
            AlgebraKind::DiscP | AlgebraKind::SolidTorusP => Some(QVar::P),
            AlgebraKind::DiscQ | AlgebraKind::SolidTorusQ => Some(QVar::Q),
            AlgebraKind::Torus => None,
        }
    }

    fn names(self) -> [&'static str; 3] {
        match self {
            AlgebraKind::DiscP | AlgebraKind::SolidTorusP => ["xi", "x", "h"],
            AlgebraKind::DiscQ | AlgebraKind::SolidTorusQ => ["xi", "y", "g"],
            AlgebraKind::Torus => ["xi", "V", "U"],
        }
    }

    pub fn has_xi(self) -> bool {
        self != AlgebraKind::Torus
    }

    pub fn has_h(self) -> bool {
        !matches!(self, AlgebraKind::DiscP | AlgebraKind::DiscQ)
    }
}

/// Normal monomial `ξ^k x^m h^n`; unused slots stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub k: u32,
    pub m: i32,
    pub n: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { k: 0, m: 0, n: 0 };

    pub fn new(k: u32, m: i32, n: i32) -> Self {
        Mono { k, m, n }
    }

    /// Filtration degree `2k + |m| + |n|`.
    pub fn degree(&self) -> u32 {
        2 * self.k + self.m.unsigned_abs() + self.n.unsigned_abs()
    }

    pub fn word(&self) -> Word {
        let mut w = vec![Gen::Xi; self.k as usize];
        let xl = if self.m >= 0 { Gen::X } else { Gen::XStar };
        w.extend(std::iter::repeat_n(xl, self.m.unsigned_abs() as usize));
        let hl = if self.n >= 0 { Gen::H } else { Gen::HStar };
        w.extend(std::iter::repeat_n(hl, self.n.unsigned_abs() as usize));
        w
    }

    /// Inverse of [`Mono::word`] on words of the shape `ξ^k x^{±m} h^{±n}`.
    pub fn from_word(w: &[Gen]) -> Option<Mono> {
        let mut i = 0;
        let mut mono = Mono::ONE;
        while i < w.len() && w[i] == Gen::Xi {
            mono.k += 1;
            i += 1;
        }
        if i < w.len() && matches!(w[i], Gen::X | Gen::XStar) {
            let l = w[i];
            while i < w.len() && w[i] == l {
                mono.m += if l == Gen::X { 1 } else { -1 };
                i += 1;
            }
        }
        if i < w.len() && matches!(w[i], Gen::H | Gen::HStar) {
            let l = w[i];
            while i < w.len() && w[i] == l {
                mono.n += if l == Gen::H { 1 } else { -1 };
                i += 1;
            }
        }
        (i == w.len()).then_some(mono)
    }

    fn render(&self, kind: AlgebraKind) -> String {
        let [xi, x, h] = kind.names();
        let mut parts = Vec::new();
        if self.k != 0 {
            parts.push(format!("{xi}^{}", self.k));
        }
        if self.m != 0 {
            parts.push(format!("{x}^{}", self.m));
        }
        if self.n != 0 {
            parts.push(format!("{h}^{}", self.n));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Finite linear combination of normal monomials in a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    kind: AlgebraKind,
    terms: BTreeMap<Mono, Scalar>,
}

impl AlgElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        AlgElement {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        AlgElement::mono(kind, Mono::ONE, Scalar::one())
    }

    pub fn mono(kind: AlgebraKind, m: Mono, c: Scalar) -> Self {
        let mut e = AlgElement::zero(kind);
        e.add_term(m, &c);
        e
    }

    pub fn scalar(kind: AlgebraKind, c: Scalar) -> Self {
        AlgElement::mono(kind, Mono::ONE, c)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn try_add(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        if self.kind != other.kind {
            return Err(AlgebraError::Mismatch(self.kind, other.kind));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn plus(&self, other: &AlgElement) -> AlgElement {
        self.try_add(other).expect("adding elements of different algebras")
    }

    pub fn minus(&self, other: &AlgElement) -> AlgElement {
        self.plus(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> AlgElement {
        let mut out = AlgElement::zero(self.kind);
        for (m, s) in &self.terms {
            out.add_term(*m, &(s * c));
        }
        out
    }

    /// Largest filtration degree of a monomial (0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Split by the `h`-exponent, which is the comodule degree.
    pub fn grade_decompose(&self) -> BTreeMap<i32, AlgElement> {
        let mut out: BTreeMap<i32, AlgElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.n)
                .or_insert_with(|| AlgElement::zero(self.kind))
                .add_term(*m, c);
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c}) * {}", m.render(self.kind)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(kind: AlgebraKind, s: &str) -> Result<AlgElement, AlgebraError> {
        let s = s.trim();
        let mut out = AlgElement::zero(kind);
        if s == "0" {
            return Ok(out);
        }
        let names = kind.names();
        let mut rest = s;
        loop {
            let r = rest
                .strip_prefix('(')
                .ok_or_else(|| AlgebraError::Parse(format!("expected '(' at {rest:?}")))?;
            let close = r
                .find(')')
                .ok_or_else(|| AlgebraError::Parse("unbalanced parenthesis".into()))?;
            let coeff: Scalar = r[..close]
                .parse()
                .map_err(|e| AlgebraError::Parse(format!("{e}")))?;
            let r = r[close + 1..]
                .strip_prefix(" * ")
                .ok_or_else(|| AlgebraError::Parse("expected ' * '".into()))?;
            let (mono_txt, next) = match r.find(" + (") {
                Some(i) => (&r[..i], Some(&r[i + 3..])),
                None => (r, None),
            };
            let mut mono = Mono::ONE;
            if mono_txt.trim() != "1" {
                for tok in mono_txt.split_whitespace() {
                    let (name, exp) = tok
                        .split_once('^')
                        .ok_or_else(|| AlgebraError::Parse(format!("bad factor {tok:?}")))?;
                    let exp: i32 = exp
                        .parse()
                        .map_err(|_| AlgebraError::Parse(format!("bad exponent {tok:?}")))?;
                    if name == names[0] && kind.has_xi() && exp >= 0 {
                        mono.k = exp as u32;
                    } else if name == names[1] {
                        mono.m = exp;
                    } else if name == names[2] && kind.has_h() {
                        mono.n = exp;
                    } else {
                        return Err(AlgebraError::Parse(format!("unknown factor {tok:?}")));
                    }
                }
            }
            out.add_term(mono, &coeff);
            match next {
                Some(n) => rest = n,
                None => break,
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Process-wide instance of each algebra, so that product caches are shared.
pub fn shared_algebra(kind: AlgebraKind) -> Arc<PresentedAlgebra> {
    static ALGEBRAS: OnceLock<Vec<Arc<PresentedAlgebra>>> = OnceLock::new();
    let all = ALGEBRAS.get_or_init(|| {
        [
            AlgebraKind::DiscP,
            AlgebraKind::DiscQ,
            AlgebraKind::Torus,
            AlgebraKind::SolidTorusP,
            AlgebraKind::SolidTorusQ,
        ]
        .into_iter()
        .map(|k| Arc::new(PresentedAlgebra::new(k)))
        .collect()
    });
    let idx = match kind {
        AlgebraKind::DiscP => 0,
        AlgebraKind::DiscQ => 1,
        AlgebraKind::Torus => 2,
        AlgebraKind::SolidTorusP => 3,
        AlgebraKind::SolidTorusQ => 4,
    };
    all[idx].clone()
}

/// Rewrite rule `a b → Σ c_i w_i`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: [Gen; 2],
    pub rhs: Vec<(Scalar, Word)>,
}

/// Operations shared by every *-algebra model used for relation checking.
pub trait StarAlgebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Scalar::one(), b))
    }

    fn scalar(&self, c: &Scalar) -> Self::Elem {
        self.scale(c, &self.one())
    }

    /// `a^n`, with `a^{-n} = (a*)^n`.
    fn pow(&self, a: &Self::Elem, n: i32) -> Self::Elem {
        let base = if n < 0 { self.star(a) } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    fn product(&self, factors: &[&Self::Elem]) -> Self::Elem {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }
}

/// One of the five concrete algebras with its rewriting system.
pub struct PresentedAlgebra {
    kind: AlgebraKind,
    rules: Vec<Rule>,
    index: HashMap<(Gen, Gen), usize>,
    letter_cache: RwLock<HashMap<(Mono, Gen), AlgElement>>,
    mono_cache: RwLock<HashMap<(Mono, Mono), AlgElement>>,
}

impl fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedAlgebra({:?}, {} rules)", self.kind, self.rules.len())
    }
}

fn rule(lhs: [Gen; 2], rhs: Vec<(Scalar, Word)>) -> Rule {
    Rule { lhs, rhs }
}

impl PresentedAlgebra {
    pub fn new(kind: AlgebraKind) -> Self {
        use Gen::*;
        let one = Scalar::one;
        let w = Scalar::u_pow(2);
        let wi = Scalar::u_pow(-2);
        let mut rules = Vec::new();
        if let Some(v) = kind.parameter() {
            let t = match v {
                QVar::P | QVar::PInv => Scalar::p(),
                QVar::Q | QVar::QInv => Scalar::q(),
            };
            let ti = t.inverse().expect("monomial parameter");
            rules.push(rule([X, XStar], vec![(one(), vec![]), (-one(), vec![Xi])]));
            rules.push(rule([XStar, X], vec![(one(), vec![]), (-t.clone(), vec![Xi])]));
            rules.push(rule([X, Xi], vec![(ti, vec![Xi, X])]));
            rules.push(rule([XStar, Xi], vec![(t, vec![Xi, XStar])]));
        } else {
            rules.push(rule([X, XStar], vec![(one(), vec![])]));
            rules.push(rule([XStar, X], vec![(one(), vec![])]));
        }
        if kind.has_h() {
            rules.push(rule([H, X], vec![(w.clone(), vec![X, H])]));
            rules.push(rule([H, XStar], vec![(wi.clone(), vec![XStar, H])]));
            rules.push(rule([HStar, X], vec![(wi, vec![X, HStar])]));
            rules.push(rule([HStar, XStar], vec![(w, vec![XStar, HStar])]));
            if kind.has_xi() {
                rules.push(rule([H, Xi], vec![(one(), vec![Xi, H])]));
                rules.push(rule([HStar, Xi], vec![(one(), vec![Xi, HStar])]));
            }
            rules.push(rule([H, HStar], vec![(one(), vec![])]));
            rules.push(rule([HStar, H], vec![(one(), vec![])]));
        }
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| ((r.lhs[0], r.lhs[1]), i))
            .collect();
        PresentedAlgebra {
            kind,
            rules,
            index,
            letter_cache: RwLock::new(HashMap::new()),
            mono_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn check_word(&self, w: &[Gen]) -> Result<(), AlgebraError> {
        let allowed = self.kind.generators();
        match w.iter().find(|g| !allowed.contains(g)) {
            Some(g) => Err(AlgebraError::UnknownGenerator(*g, self.kind)),
            None => Ok(()),
        }
    }

    fn find_redex(&self, w: &[Gen]) -> Option<(usize, &Rule)> {
        w.windows(2).enumerate().find_map(|(i, pair)| {
            self.index
                .get(&(pair[0], pair[1]))
                .map(|&r| (i, &self.rules[r]))
        })
    }

    /// Apply one rule at position `i`.
    pub fn rewrite_at(&self, w: &[Gen], i: usize) -> Option<Vec<(Scalar, Word)>> {
        let r = self.index.get(&(*w.get(i)?, *w.get(i + 1)?))?;
        Some(
            self.rules[*r]
                .rhs
                .iter()
                .map(|(c, repl)| {
                    let mut nw = w[..i].to_vec();
                    nw.extend_from_slice(repl);
                    nw.extend_from_slice(&w[i + 2..]);
                    (c.clone(), nw)
                })
                .collect(),
        )
    }

    /// Leftmost-redex rewriting of a linear combination of words until every word is irreducible.
    fn reduce(&self, mut work: BTreeMap<Word, Scalar>) -> AlgElement {
        let mut out = AlgElement::zero(self.kind);
        while let Some((w, c)) = work.pop_last() {
            match self.find_redex(&w) {
                None => {
                    let m = Mono::from_word(&w)
                        .expect("irreducible word outside the normal-monomial pattern");
                    out.add_term(m, &c);
                }
                Some((i, r)) => {
                    for (rc, repl) in &r.rhs {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(repl);
                        nw.extend_from_slice(&w[i + 2..]);
                        let coeff = &c * rc;
                        let cancelled = match work.get_mut(&nw) {
                            Some(v) => {
                                *v += &coeff;
                                v.is_zero()
                            }
                            None => {
                                work.insert(nw.clone(), coeff);
                                false
                            }
                        };
                        if cancelled {
                            work.remove(&nw);
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal form of a word by rewriting the whole word with the leftmost strategy.
    pub fn rewrite_word(&self, w: &[Gen]) -> Result<AlgElement, AlgebraError> {
        self.check_word(w)?;
        let mut work = BTreeMap::new();
        work.insert(w.to_vec(), Scalar::one());
        Ok(self.reduce(work))
    }

    /// Normal form of a word, built letter by letter.
    pub fn normal_form(&self, w: &[Gen]) -> Result<AlgElement, AlgebraError> {
        self.check_word(w)?;
        let mut acc = AlgElement::one(self.kind);
        for &g in w {
            acc = self.mul_letter(&acc, g);
        }
        Ok(acc)
    }

    fn mono_times_letter(&self, m: Mono, g: Gen) -> AlgElement {
        if let Some(e) = self.letter_cache.read().expect("cache lock").get(&(m, g)) {
            return e.clone();
        }
        let mut w = m.word();
        w.push(g);
        let mut work = BTreeMap::new();
        work.insert(w, Scalar::one());
        let e = self.reduce(work);
        self.letter_cache
            .write()
            .expect("cache lock")
            .insert((m, g), e.clone());
        e
    }

    fn mul_letter(&self, a: &AlgElement, g: Gen) -> AlgElement {
        let mut out = AlgElement::zero(self.kind);
        for (m, c) in &a.terms {
            for (m2, c2) in &self.mono_times_letter(*m, g).terms {
                out.add_term(*m2, &(c * c2));
            }
        }
        out
    }

    pub fn mul_mono(&self, a: Mono, b: Mono) -> AlgElement {
        if let Some(e) = self.mono_cache.read().expect("cache lock").get(&(a, b)) {
            return e.clone();
        }
        let mut acc = AlgElement::mono(self.kind, a, Scalar::one());
        for g in b.word() {
            acc = self.mul_letter(&acc, g);
        }
        self.mono_cache
            .write()
            .expect("cache lock")
            .insert((a, b), acc.clone());
        acc
    }

    pub fn try_mul(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement, AlgebraError> {
        for e in [a, b] {
            if e.kind != self.kind {
                return Err(AlgebraError::Mismatch(self.kind, e.kind));
            }
        }
        let mut out = AlgElement::zero(self.kind);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                for (m, cm) in &self.mul_mono(*ma, *mb).terms {
                    out.add_term(*m, &(&c * cm));
                }
            }
        }
        Ok(out)
    }

    pub fn elem(&self, m: Mono) -> AlgElement {
        AlgElement::mono(self.kind, m, Scalar::one())
    }

    pub fn xi(&self) -> AlgElement {
        self.elem(Mono::new(1, 0, 0))
    }

    pub fn x_pow(&self, m: i32) -> AlgElement {
        self.elem(Mono::new(0, m, 0))
    }

    pub fn h_pow(&self, n: i32) -> AlgElement {
        self.elem(Mono::new(0, 0, n))
    }

    pub fn star_mono(&self, m: Mono) -> AlgElement {
        let w: Word = m.word().iter().rev().map(|g| g.star()).collect();
        self.normal_form(&w).expect("letters of a normal monomial")
    }

    /// The deformation parameter as a scalar (`p` or `q`).
    pub fn parameter(&self) -> Option<Scalar> {
        self.kind.parameter().map(|v| match v {
            QVar::P | QVar::PInv => Scalar::p(),
            QVar::Q | QVar::QInv => Scalar::q(),
        })
    }

    /// Termination measure: (non-ξ letters, inversions w.r.t. ξ < x < x* < h < h*).
    pub fn termination_measure(w: &[Gen]) -> (usize, usize) {
        let letters = w.iter().filter(|g| **g != Gen::Xi).count();
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        (letters, inv)
    }

    /// All overlaps `abc` of two left-hand sides, resolved both ways.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let gens = self.kind.generators();
        let mut out = Vec::new();
        for &a in gens {
            for &b in gens {
                for &c in gens {
                    if !(self.index.contains_key(&(a, b)) && self.index.contains_key(&(b, c))) {
                        continue;
                    }
                    let word = vec![a, b, c];
                    let resolve = |i: usize| -> AlgElement {
                        let mut work = BTreeMap::new();
                        for (s, w) in self.rewrite_at(&word, i).expect("redex") {
                            *work.entry(w).or_insert_with(Scalar::zero) += &s;
                        }
                        work.retain(|_, v| !v.is_zero());
                        self.reduce(work)
                    };
                    let left = resolve(0);
                    let right = resolve(1);
                    let joins = left == right;
                    out.push(CriticalPair {
                        word,
                        left,
                        right,
                        joins,
                    });
                }
            }
        }
        out
    }

    /// Monomials of filtration degree at most `d`, ordered by degree.
    pub fn basis_enumerate(&self, d: u32) -> Vec<Mono> {
        basis_enumerate(self.kind, d)
    }

    /// `(x*)^n x^n`, computed by rewriting, against its closed form.
    pub fn verify_power_identity(&self, n: u32, which: PowerIdentity) -> IdentityCheck {
        let n_i = n as i32;
        let lhs = match which {
            PowerIdentity::StarFirst => self.mul(&self.x_pow(-n_i), &self.x_pow(n_i)),
            PowerIdentity::StarLast => self.mul(&self.x_pow(n_i), &self.x_pow(-n_i)),
        };
        let rhs = self.power_identity_rhs(n, which);
        IdentityCheck::new(lhs, rhs)
    }

    /// Closed form `1 + Σ_m (-1)^m t^{e(m)} [n m] ξ^m`.
    pub fn power_identity_rhs(&self, n: u32, which: PowerIdentity) -> AlgElement {
        let var = self.kind.parameter().expect("algebra with a disc part");
        let (t_exp, binom_var) = match (var, which) {
            (QVar::P, PowerIdentity::StarFirst) => ((1, 0), QVar::PInv),
            (QVar::P, PowerIdentity::StarLast) => ((1, 0), QVar::P),
            (_, PowerIdentity::StarFirst) => ((0, 1), QVar::QInv),
            (_, PowerIdentity::StarLast) => ((0, 1), QVar::Q),
        };
        let n_i = n as i32;
        let mut out = AlgElement::one(self.kind);
        for m in 1..=n {
            let m_i = m as i32;
            let e = match which {
                PowerIdentity::StarFirst => n_i * m_i - m_i * (m_i - 1) / 2,
                PowerIdentity::StarLast => -n_i * m_i + m_i * (m_i + 1) / 2,
            };
            let sign = if m % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let c = &(&sign * &Scalar::pqu(t_exp.0 * e, t_exp.1 * e, 0))
                * &Scalar::qbinom(n, m, binom_var);
            out.add_term(Mono::new(m, 0, 0), &c);
        }
        out
    }

    /// `(1 - x x*)^n x^m` against `t^{mn} x^m (1 - x x*)^n`.
    pub fn verify_commutation_identity(&self, n: u32, m: i32) -> IdentityCheck {
        let one = AlgElement::one(self.kind);
        let xi_expr = one.minus(&self.mul(&self.x_pow(1), &self.x_pow(-1)));
        let xi_n = self.pow(&xi_expr, n as i32);
        let lhs = self.mul(&xi_n, &self.x_pow(m));
        let t = self.parameter().expect("algebra with a disc part");
        let tm = t.pow(m * n as i32).expect("monomial");
        let rhs = self.mul(&self.x_pow(m), &xi_n).scaled(&tm);
        IdentityCheck::new(lhs, rhs)
    }

    /// `x^n x^m = x^{n+m} (1 + Q(ξ))` with `ξ` to the right; returns the coefficients of
    /// `Q` (index `j` holds the coefficient of `ξ^j`; index 0 is always zero).
    pub fn compute_q(&self, n: i32, m: i32) -> Result<Vec<Scalar>, AlgebraError> {
        let t = self
            .parameter()
            .ok_or_else(|| AlgebraError::Parse("Q polynomials need a disc part".into()))?;
        let prod = self.mul(&self.x_pow(n), &self.x_pow(m));
        let s = n + m;
        let mut coeffs = vec![Scalar::zero()];
        for (mono, c) in prod.terms() {
            if mono.m != s || mono.n != 0 {
                return Err(AlgebraError::Parse(format!(
                    "unexpected monomial {mono:?} in x^{n} x^{m}"
                )));
            }
            let j = mono.k as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Scalar::zero());
            }
            if j == 0 {
                if !c.is_one() {
                    return Err(AlgebraError::Parse("constant term differs from 1".into()));
                }
                continue;
            }
            // ξ^j x^s = t^{s j} x^s ξ^j
            coeffs[j] = c * &t.pow(s * j as i32).expect("monomial");
        }
        Ok(coeffs)
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.try_mul(a, b).expect("multiplying elements of different algebras")
    }
}

impl StarAlgebra for PresentedAlgebra {
    type Elem = AlgElement;

    fn zero(&self) -> AlgElement {
        AlgElement::zero(self.kind)
    }

    fn one(&self) -> AlgElement {
        AlgElement::one(self.kind)
    }

    fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        a.plus(b)
    }

    fn scale(&self, c: &Scalar, a: &AlgElement) -> AlgElement {
        a.scaled(c)
    }

    fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        PresentedAlgebra::mul(self, a, b)
    }

    fn star(&self, a: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(self.kind);
        for (m, c) in &a.terms {
            out = out.plus(&self.star_mono(*m).scaled(&c.conj()));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerIdentity {
    /// `(x*)^n x^n`
    StarFirst,
    /// `x^n (x*)^n`
    StarLast,
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub lhs: AlgElement,
    pub rhs: AlgElement,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: AlgElement, rhs: AlgElement) -> Self {
        let holds = lhs == rhs;
        IdentityCheck { lhs, rhs, holds }
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub left: AlgElement,
    pub right: AlgElement,
    pub joins: bool,
}

/// Sort key: degree, then larger ξ-power, larger |m|, positive m, positive n.
fn basis_key(m: &Mono) -> (u32, std::cmp::Reverse<u32>, std::cmp::Reverse<u32>, bool, i32, bool) {
    (
        m.degree(),
        std::cmp::Reverse(m.k),
        std::cmp::Reverse(m.m.unsigned_abs()),
        m.m < 0,
        -m.n.abs(),
        m.n < 0,
    )
}

pub fn basis_enumerate(kind: AlgebraKind, d: u32) -> Vec<Mono> {
    let d_i = d as i32;
    let mut out = Vec::new();
    let kmax = if kind.has_xi() { d / 2 } else { 0 };
    for k in 0..=kmax {
        let rest = d_i - 2 * k as i32;
        for m in -rest..=rest {
            let nmax = if kind.has_h() { rest - m.abs() } else { 0 };
            for n in -nmax..=nmax {
                out.push(Mono::new(k, m, n));
            }
        }
    }
    out.sort_by_key(basis_key);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solid_torus_basis_example() {
        let b = basis_enumerate(AlgebraKind::SolidTorusP, 2);
        assert_eq!(b.len(), 14);
        assert_eq!(b[0], Mono::ONE);
        assert_eq!(&b[1..5], &[Mono::new(0, 1, 0), Mono::new(0, -1, 0), Mono::new(0, 0, 1), Mono::new(0, 0, -1)]);
        assert_eq!(b[5], Mono::new(1, 0, 0));
        assert_eq!(basis_enumerate(AlgebraKind::DiscP, 1), vec![Mono::ONE, Mono::new(0, 1, 0), Mono::new(0, -1, 0)]);
    }

    #[test]
    fn basic_rules() {
        let a = PresentedAlgebra::new(AlgebraKind::DiscP);
        let e = a.normal_form(&[Gen::XStar, Gen::X]).unwrap();
        assert_eq!(e.to_text(), "(1) * 1 + (-1 p^1) * xi^1");
        let t = PresentedAlgebra::new(AlgebraKind::Torus);
        let e = t.normal_form(&[Gen::H, Gen::X]).unwrap();
        assert_eq!(e.to_text(), "(1 u^2) * V^1 U^1");
        assert!(matches!(
            a.normal_form(&[Gen::H]),
            Err(AlgebraError::UnknownGenerator(Gen::H, AlgebraKind::DiscP))
        ));
    }

    #[test]
    fn element_text_round_trip() {
        let a = PresentedAlgebra::new(AlgebraKind::SolidTorusQ);
        let e = a.normal_form(&[Gen::Xi, Gen::H, Gen::XStar, Gen::X, Gen::HStar, Gen::X]).unwrap();
        let back = AlgElement::parse(AlgebraKind::SolidTorusQ, &e.to_text()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn q_for_small_exponents() {
        let a = PresentedAlgebra::new(AlgebraKind::DiscP);
        let q = a.compute_q(-1, 1).unwrap();
        assert_eq!(q, vec![Scalar::zero(), -Scalar::p()]);
    }
}
