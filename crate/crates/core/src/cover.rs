//! Finite-dimensional covers by subspaces, their completions, gluing of modules
//! along surjections, and the cocycle conditions that make gluing surjective.
//!
//! A submodule `J_i ⊆ ℚ^n` stands for the quotient `M_i = ℚ^n / J_i`; quotients are
//! coordinatised by the canonical annihilator of `J_i`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{q, QMatrix, Subspace, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("the family is not a cover: the intersection has dimension {0}")]
    NotACover(usize),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("gluing data is inconsistent: {0}")]
    BadGluing(String),
}

fn intersect_all<'a>(n: usize, it: impl Iterator<Item = &'a Subspace>) -> Subspace {
    it.fold(Subspace::full(n), |acc, s| acc.intersect(s))
}

/// Family of subspaces `J_i` of `ℚ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInstance {
    ambient: usize,
    subs: Vec<Subspace>,
}

/// Outcome of computing the covering completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub completion_dim: usize,
    pub kappa_rank: usize,
    pub injective: bool,
    pub complete: bool,
}

impl CoverInstance {
    pub fn new(ambient: usize, subs: Vec<Subspace>) -> Result<Self, CoverError> {
        if subs.iter().any(|s| s.ambient() != ambient) {
            return Err(CoverError::AmbientMismatch);
        }
        Ok(CoverInstance { ambient, subs })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn subs(&self) -> &[Subspace] {
        &self.subs
    }

    pub fn intersection(&self) -> Subspace {
        intersect_all(self.ambient, self.subs.iter())
    }

    pub fn is_cover(&self) -> bool {
        self.intersection().dim() == 0
    }

    /// `M^c = ker Ψ` with `Ψ((m_i)) = (π^i_j(m_i) - π^j_i(m_j))_{i<j}`, and the rank of `κ`.
    pub fn covering_completion(&self) -> Completion {
        let g = GluingInstance::from_cover(self);
        let glued = g.glue();
        let kappa = QMatrix::block_vstack(&g.quotients);
        let kappa_rank = kappa.rank();
        Completion {
            completion_dim: glued.dim(),
            kappa_rank,
            injective: kappa_rank == self.ambient,
            complete: kappa_rank == glued.dim(),
        }
    }

    pub fn is_complete_cover(&self) -> Result<bool, CoverError> {
        let i = self.intersection();
        if i.dim() != 0 {
            return Err(CoverError::NotACover(i.dim()));
        }
        Ok(self.covering_completion().complete)
    }

    /// `∩_{i<k}(J_i + J_k) = (∩_{i<k} J_i) + J_k` for every `k`; on failure returns that `k`.
    pub fn seminet_condition(&self) -> Result<(), usize> {
        for k in 1..self.subs.len() {
            let jk = &self.subs[k];
            let lhs = intersect_all(
                self.ambient,
                self.subs[..k].iter().map(|j| j.sum(jk)).collect::<Vec<_>>().iter(),
            );
            let rhs = intersect_all(self.ambient, self.subs[..k].iter()).sum(jk);
            if lhs != rhs {
                return Err(k);
            }
        }
        Ok(())
    }

    /// The necessary condition `∩_{i≠k}(J_i + J_k) = (∩_{i≠k} J_i) + J_k` for every `k`.
    pub fn distributivity_condition(&self) -> Result<(), usize> {
        for k in 0..self.subs.len() {
            let jk = &self.subs[k];
            let others: Vec<&Subspace> = (0..self.subs.len())
                .filter(|&i| i != k)
                .map(|i| &self.subs[i])
                .collect();
            let sums: Vec<Subspace> = others.iter().map(|j| j.sum(jk)).collect();
            let lhs = intersect_all(self.ambient, sums.iter());
            let rhs = intersect_all(self.ambient, others.into_iter()).sum(jk);
            if lhs != rhs {
                return Err(k);
            }
        }
        Ok(())
    }
}

impl QMatrix {
    /// Stack matrices with equal column counts.
    pub fn block_vstack(blocks: &[QMatrix]) -> QMatrix {
        let cols = blocks.first().map(|b| b.ncols()).unwrap_or(0);
        blocks
            .iter()
            .fold(QMatrix::zeros(0, cols), |acc, b| acc.vstack(b))
    }
}

/// Modules `M_i = ℚ^{d_i}` with surjections `π^i_j : M_i → M_ij` (`M_ij = M_ji`).
#[derive(Clone, Debug)]
pub struct GluingInstance {
    dims: Vec<usize>,
    maps: BTreeMap<(usize, usize), QMatrix>,
    /// Quotient maps `ℚ^n → M_i` when the data comes from a cover.
    quotients: Vec<QMatrix>,
}

/// The glued module as a subspace of `⊕ M_i`, with its projections.
#[derive(Clone, Debug)]
pub struct GluedModule {
    pub space: Subspace,
    /// `p_i` in coordinates of the basis of `space`.
    pub projections: Vec<QMatrix>,
}

impl GluedModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn surjective(&self) -> Vec<bool> {
        self.projections
            .iter()
            .map(|p| p.rank() == p.nrows())
            .collect()
    }

    /// The family `(ker p_i)` inside the glued module.
    pub fn kernel_cover(&self) -> CoverInstance {
        let g = self.dim();
        let subs = self
            .projections
            .iter()
            .map(Subspace::kernel_of)
            .collect();
        CoverInstance::new(g, subs).expect("kernels share the ambient space")
    }
}

impl GluingInstance {
    pub fn new(dims: Vec<usize>, maps: BTreeMap<(usize, usize), QMatrix>) -> Result<Self, CoverError> {
        let n = dims.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = maps
                    .get(&(i, j))
                    .ok_or_else(|| CoverError::BadGluing(format!("missing map {i}->{j}")))?;
                let back = &maps[&(j, i)];
                if m.ncols() != dims[i] || m.nrows() != back.nrows() {
                    return Err(CoverError::BadGluing(format!("shape of map {i}->{j}")));
                }
                if m.rank() != m.nrows() {
                    return Err(CoverError::BadGluing(format!("map {i}->{j} is not onto")));
                }
            }
        }
        Ok(GluingInstance {
            dims,
            maps,
            quotients: Vec::new(),
        })
    }

    /// Canonical gluing data `M_i = M/J_i`, `M_ij = M/(J_i + J_j)`.
    pub fn from_cover(c: &CoverInstance) -> Self {
        let quotients: Vec<QMatrix> = c.subs.iter().map(|j| j.annihilator()).collect();
        let mut maps = BTreeMap::new();
        for (i, qi) in quotients.iter().enumerate() {
            for j in 0..c.subs.len() {
                if i == j {
                    continue;
                }
                let a_ij = c.subs[i].sum(&c.subs[j]).annihilator();
                let t = qi
                    .solve_left(&a_ij)
                    .expect("J_i lies in J_i + J_j");
                maps.insert((i, j), t);
            }
        }
        GluingInstance {
            dims: quotients.iter().map(|a| a.nrows()).collect(),
            maps,
            quotients,
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, i: usize, j: usize) -> &QMatrix {
        &self.maps[&(i, j)]
    }

    /// Replace `π^i_j` by a new map into the same `M_ij`.
    pub fn with_map(&self, i: usize, j: usize, m: QMatrix) -> Self {
        let mut out = self.clone();
        out.maps.insert((i, j), m);
        out.quotients.clear();
        out
    }

    /// Change coordinates by automorphisms `R_i` of `M_i` and `S_ij = S_ji` of `M_ij`.
    pub fn twisted(&self, r: &[QMatrix], s: &BTreeMap<(usize, usize), QMatrix>) -> Self {
        let mut maps = BTreeMap::new();
        for (&(i, j), m) in &self.maps {
            let key = (i.min(j), i.max(j));
            let ri = r[i].inverse().expect("automorphism");
            maps.insert((i, j), s[&key].mul(m).mul(&ri));
        }
        GluingInstance {
            dims: self.dims.clone(),
            maps,
            quotients: Vec::new(),
        }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for d in &self.dims {
            off.push(off.last().unwrap() + d);
        }
        off
    }

    /// `{(m_i) : π^i_j(m_i) = π^j_i(m_j)}` and the projections `p_i`.
    pub fn glue(&self) -> GluedModule {
        let off = self.offsets();
        let total = off[self.dims.len()];
        let mut psi = QMatrix::zeros(0, total);
        for i in 0..self.dims.len() {
            for j in i + 1..self.dims.len() {
                let a = &self.maps[&(i, j)];
                let b = &self.maps[&(j, i)];
                let mut block = QMatrix::zeros(a.nrows(), total);
                for r in 0..a.nrows() {
                    for c in 0..a.ncols() {
                        block[(r, off[i] + c)] = a[(r, c)].clone();
                    }
                    for c in 0..b.ncols() {
                        block[(r, off[j] + c)] = -b[(r, c)].clone();
                    }
                }
                psi = psi.vstack(&block);
            }
        }
        let space = Subspace::kernel_of(&psi);
        let basis = space.basis();
        let projections = (0..self.dims.len())
            .map(|i| {
                let mut p = QMatrix::zeros(self.dims[i], space.dim());
                for b in 0..space.dim() {
                    for r in 0..self.dims[i] {
                        p[(r, b)] = basis[(b, off[i] + r)].clone();
                    }
                }
                p
            })
            .collect();
        GluedModule { space, projections }
    }

    fn kernel(&self, i: usize, k: usize) -> Subspace {
        if i == k {
            Subspace::zero(self.dims[i])
        } else {
            Subspace::kernel_of(&self.maps[&(i, k)])
        }
    }

    /// `θ^{ij}_k : M_i/(ker π^i_j + ker π^i_k) → M_ij/W`, in canonical quotient coordinates.
    fn theta(&self, i: usize, j: usize, k: usize, w: &Subspace) -> Option<QMatrix> {
        let dom = self.kernel(i, j).sum(&self.kernel(i, k)).annihilator();
        let cod = w.annihilator().mul(&self.maps[&(i, j)]);
        dom.solve_left(&cod)
    }

    /// Checks the hypotheses of the gluing-surjectivity theorem and its conclusion.
    pub fn check_cocycle_surjectivity(&self) -> CocycleReport {
        let n = self.dims.len();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| i != j && j != k && i != k)
            .collect();
        let mut calmat = true;
        for &(i, j, k) in &triples {
            let a = self.kernel(i, k).map(&self.maps[&(i, j)]);
            let b = self.kernel(j, k).map(&self.maps[&(j, i)]);
            if a != b {
                calmat = false;
            }
        }
        let mut cocycle = calmat;
        if calmat {
            let mut phi: BTreeMap<(usize, usize, usize), QMatrix> = BTreeMap::new();
            for &(i, j, k) in &triples {
                let w = self.kernel(i, k).map(&self.maps[&(i, j)]);
                let t_ij = self.theta(i, j, k, &w);
                let t_ji = self.theta(j, i, k, &w);
                match (t_ij.and_then(|t| t.inverse()), t_ji) {
                    (Some(inv), Some(t)) => {
                        phi.insert((k, i, j), inv.mul(&t));
                    }
                    _ => cocycle = false,
                }
            }
            if cocycle {
                for &(i, j, k) in &triples {
                    let lhs = &phi[&(j, i, k)];
                    let rhs = phi[&(k, i, j)].mul(&phi[&(i, j, k)]);
                    if *lhs != rhs {
                        cocycle = false;
                    }
                }
            }
        }
        let mut deep_cap = true;
        for k in 1..n {
            let target = k;
            for i in 1..k {
                let last = self.kernel(target, i);
                let ks: Vec<Subspace> = (0..i).map(|j| self.kernel(target, j)).collect();
                let sums: Vec<Subspace> = ks.iter().map(|s| s.sum(&last)).collect();
                let lhs = intersect_all(self.dims[target], sums.iter());
                let rhs = intersect_all(self.dims[target], ks.iter()).sum(&last);
                if lhs != rhs {
                    deep_cap = false;
                }
            }
        }
        let glued = self.glue();
        CocycleReport {
            calmat,
            cocycle,
            deep_cap,
            surjective: glued.surjective(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub calmat: bool,
    pub cocycle: bool,
    pub deep_cap: bool,
    pub surjective: Vec<bool>,
}

impl CocycleReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.calmat && self.cocycle && self.deep_cap
    }

    pub fn all_surjective(&self) -> bool {
        self.surjective.iter().all(|&b| b)
    }
}

// ---------------------------------------------------------------------------
// Random instances

fn small(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-2..=2))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = small(rng);
        }
    }
    m
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random subspace of exactly the given dimension.
pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Subspace {
    loop {
        let s = Subspace::row_space(&random_matrix(rng, dim, n));
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random cover with `count` members; each dimension drawn from `0..n`.
pub fn random_cover(rng: &mut ChaCha8Rng, n: usize, count: usize) -> CoverInstance {
    loop {
        let subs = (0..count)
            .map(|_| {
                let d = rng.gen_range(0..n);
                random_subspace(rng, n, d)
            })
            .collect();
        let c = CoverInstance::new(n, subs).expect("same ambient");
        if c.is_cover() {
            return c;
        }
    }
}

/// Cover spanned by subsets of a random basis; such families always satisfy the seminet criterion.
pub fn random_coordinate_cover(rng: &mut ChaCha8Rng, n: usize, count: usize) -> CoverInstance {
    let basis = random_invertible(rng, n);
    loop {
        let subs: Vec<Subspace> = (0..count)
            .map(|_| {
                let rows: Vec<Vec<Q>> = (0..n)
                    .filter(|_| rng.gen_bool(0.5))
                    .map(|r| basis.row(r))
                    .collect();
                Subspace::span(n, &rows)
            })
            .collect();
        let c = CoverInstance::new(n, subs).expect("same ambient");
        if c.is_cover() {
            return c;
        }
    }
}

fn random_twist(rng: &mut ChaCha8Rng, g: &GluingInstance) -> GluingInstance {
    let r: Vec<QMatrix> = g.dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let mut s = BTreeMap::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let d = g.maps[&(i, j)].nrows();
            s.insert((i, j), random_invertible(rng, d));
        }
    }
    g.twisted(&r, &s)
}

/// Gluing data satisfying the compatibility conditions, disguised by random coordinate changes.
pub fn random_gluing(rng: &mut ChaCha8Rng, n: usize, count: usize) -> GluingInstance {
    let c = random_cover(rng, n, count);
    random_twist(rng, &GluingInstance::from_cover(&c))
}

/// Three copies of `ℚ` glued pairwise by identities except one map scaled by 2;
/// the cocycle fails and the glued module is zero.
pub fn broken_cocycle_example() -> GluingInstance {
    let mut maps = BTreeMap::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                maps.insert((i, j), QMatrix::identity(1));
            }
        }
    }
    maps.insert((2, 0), QMatrix::identity(1).scale(&q(2)));
    GluingInstance::new(vec![1, 1, 1], maps).expect("valid gluing data")
}

// ---------------------------------------------------------------------------
// Exact-sequence lemma and the tensor-kernel lemma

/// Random instance of the exact-sequence lemma; returns whether the intersection
/// and sum sequences are exact.
pub fn exact_sequence_instance(rng: &mut ChaCha8Rng, max_dim: usize) -> (bool, bool) {
    let a = rng.gen_range(1..=max_dim.saturating_sub(1).max(1));
    let c = rng.gen_range(1..=(max_dim - a).max(1));
    let n = a + c;
    let p = random_invertible(rng, n);
    let pinv = p.inverse().expect("invertible");
    // s = P [I; 0], t = [0 I] P^{-1}
    let mut s = QMatrix::zeros(n, a);
    for r in 0..n {
        for col in 0..a {
            s[(r, col)] = p[(r, col)].clone();
        }
    }
    let mut t = QMatrix::zeros(c, n);
    for r in 0..c {
        for col in 0..n {
            t[(r, col)] = pinv[(a + r, col)].clone();
        }
    }
    let section = |v: &[Q]| -> Vec<Q> {
        let mut full = vec![Q::zero(); n];
        full[a..].clone_from_slice(v);
        p.apply(&full)
    };
    let dims: Vec<usize> = vec![
        rng.gen_range(0..=a),
        rng.gen_range(0..=a),
        rng.gen_range(0..=c),
        rng.gen_range(0..=c),
    ];
    let k = random_subspace(rng, a, dims[0]);
    let l = random_subspace(rng, a, dims[1]);
    let kv = random_subspace(rng, c, dims[2]).vectors();
    let lv_own = random_subspace(rng, c, dims[3]).vectors();
    let mut lifts_k = Vec::new();
    let mut lifts_l = Vec::new();
    for v in &kv {
        let m: Vec<Q> = (0..a).map(|_| small(rng)).collect();
        let lift: Vec<Q> = section(v)
            .iter()
            .zip(s.apply(&m))
            .map(|(x, y)| x + y)
            .collect();
        lifts_k.push(lift.clone());
        if rng.gen_bool(0.5) {
            // the same vector of M'' lifted either identically or shifted by s(m)
            if rng.gen_bool(0.5) {
                lifts_l.push(lift);
            } else {
                let m2: Vec<Q> = (0..a).map(|_| small(rng)).collect();
                lifts_l.push(lift.iter().zip(s.apply(&m2)).map(|(x, y)| x + y).collect());
            }
        }
    }
    let own = rng.gen_range(0..=lv_own.len());
    for v in lv_own.iter().take(own) {
        lifts_l.push(section(v));
    }
    // keep lifts whose images in M'' stay independent, so that L' ∩ ker t = s(L)
    let mut kept: Vec<Vec<Q>> = Vec::new();
    let mut images: Vec<Vec<Q>> = Vec::new();
    for lift in lifts_l {
        let mut trial = images.clone();
        trial.push(t.apply(&lift));
        if Subspace::span(c, &trial).dim() == trial.len() {
            images = trial;
            kept.push(lift);
        }
    }
    let lifts_l = kept;
    let sk = k.map(&s);
    let sl = l.map(&s);
    let kp = sk.sum(&Subspace::span(n, &lifts_k));
    let lp = sl.sum(&Subspace::span(n, &lifts_l));
    let kpp = kp.map(&t);
    let lpp = lp.map(&t);
    let ker_t = Subspace::kernel_of(&t);
    debug_assert_eq!(kp.intersect(&ker_t), sk);
    debug_assert_eq!(lp.intersect(&ker_t), sl);
    let cap_exact = kp.intersect(&lp).intersect(&ker_t) == k.intersect(&l).map(&s)
        && kp.intersect(&lp).map(&t) == kpp.intersect(&lpp);
    let sum_exact = kp.sum(&lp).intersect(&ker_t) == k.sum(&l).map(&s)
        && kp.sum(&lp).map(&t) == kpp.sum(&lpp);
    (cap_exact, sum_exact)
}

/// Random `f, g` with `ker f ∩ ker g = 0`; returns whether
/// `ker(f⊗f) ∩ ker(g⊗g) = ker f ⊗ ker g + ker g ⊗ ker f`.
pub fn tensor_kernel_instance(rng: &mut ChaCha8Rng, max_dim: usize) -> bool {
    let dim_m = rng.gen_range(1..=max_dim);
    loop {
        let rf = rng.gen_range(0..=dim_m);
        let rg = rng.gen_range(0..=dim_m);
        let nf = rng.gen_range(rf.max(1)..=max_dim);
        let ng = rng.gen_range(rg.max(1)..=max_dim);
        let f = random_matrix(rng, nf, rf).mul(&random_matrix(rng, rf, dim_m));
        let g = random_matrix(rng, ng, rg).mul(&random_matrix(rng, rg, dim_m));
        let kf = Subspace::kernel_of(&f);
        let kg = Subspace::kernel_of(&g);
        if kf.intersect(&kg).dim() != 0 {
            continue;
        }
        let lhs = Subspace::kernel_of(&f.kron(&f)).intersect(&Subspace::kernel_of(&g.kron(&g)));
        let rhs = kf.tensor(&kg).sum(&kg.tensor(&kf));
        return lhs == rhs;
    }
}

// ---------------------------------------------------------------------------
// Seeded suite

#[derive(Clone, Debug, Serialize)]
pub struct CoverCheck {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    pub failure: Option<String>,
}

impl CoverCheck {
    fn new(name: &str) -> Self {
        CoverCheck {
            name: name.into(),
            instances: 0,
            passed: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSuite {
    pub seed: u64,
    pub checks: Vec<CoverCheck>,
    /// A complete cover that violates the seminet criterion, if the search found one.
    pub complete_not_seminet: Option<String>,
}

impl CoverSuite {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CoverCheck::ok)
    }
}

fn describe(c: &CoverInstance) -> String {
    let dims: Vec<usize> = c.subs.iter().map(Subspace::dim).collect();
    format!("ambient {} with subspace dims {:?}: {:?}", c.ambient, dims, c.subs)
}

/// Randomized checks of the cover results; `trials` scales the instance counts.
pub fn run_cover_suite(trials: usize, seed: u64) -> CoverSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut two = CoverCheck::new("two-subspace covers are complete");
    let mut semi = CoverCheck::new("seminet criterion implies completeness");
    let mut prop4 = CoverCheck::new("complete covers satisfy the distributivity condition");
    let mut kernels = CoverCheck::new("kernels of glued projections form a complete cover");
    let mut glue3 = CoverCheck::new("three-module gluing with cocycle is surjective");
    let mut glue4 = CoverCheck::new("four-module gluing with cocycle is surjective");
    let mut broken = CoverCheck::new("broken cocycle is detected");
    let mut exact = CoverCheck::new("intersection sequence exact iff sum sequence exact");
    let mut tensor = CoverCheck::new("tensor kernel lemma");

    for _ in 0..trials {
        let n = rng.gen_range(1..=5);
        let c = random_cover(&mut rng, n, 2);
        two.record(c.is_complete_cover() == Ok(true), || describe(&c));
    }

    let mut complete_not_seminet = None;
    let mut attempts = 0;
    while semi.instances < trials && attempts < 200 * trials.max(1) {
        attempts += 1;
        let n = rng.gen_range(1..=5);
        let count = rng.gen_range(3..=4);
        let c = if rng.gen_bool(0.5) {
            random_coordinate_cover(&mut rng, n, count)
        } else {
            random_cover(&mut rng, n, count)
        };
        let completion = c.covering_completion();
        if completion.complete {
            prop4.record(c.distributivity_condition().is_ok(), || describe(&c));
            if complete_not_seminet.is_none() && c.seminet_condition().is_err() {
                complete_not_seminet = Some(describe(&c));
            }
        }
        if c.seminet_condition().is_ok() {
            semi.record(completion.complete, || describe(&c));
        }
        let glued = GluingInstance::from_cover(&c).glue();
        kernels.record(
            glued.kernel_cover().is_complete_cover() == Ok(true),
            || describe(&c),
        );
    }

    let want3 = trials.div_ceil(2);
    let want4 = trials.div_ceil(10);
    let mut tries = 0;
    while (glue3.instances < want3 || glue4.instances < want4) && tries < 50 * trials.max(1) {
        tries += 1;
        let count = if glue3.instances < want3 { 3 } else { 4 };
        let n = rng.gen_range(2..=5);
        let g = random_gluing(&mut rng, n, count);
        let report = g.check_cocycle_surjectivity();
        if !report.hypotheses_hold() {
            continue;
        }
        let target = if count == 3 { &mut glue3 } else { &mut glue4 };
        target.record(report.all_surjective(), || format!("{report:?} for {g:?}"));
    }

    if trials > 0 {
        let report = broken_cocycle_example().check_cocycle_surjectivity();
        broken.record(!report.cocycle && !report.all_surjective(), || format!("{report:?}"));
    }

    for _ in 0..2 * trials {
        let (cap, sum) = exact_sequence_instance(&mut rng, 6);
        exact.record(cap == sum, || format!("intersection sequence exact = {cap}, sum sequence exact = {sum}"));
        let ok = tensor_kernel_instance(&mut rng, 4);
        tensor.record(ok, || "kernel intersection differs from the tensor sum".into());
    }

    CoverSuite {
        seed,
        checks: vec![two, semi, prop4, kernels, glue3, glue4, broken, exact, tensor],
        complete_not_seminet,
    }
}

/// Fixed complete cover of `ℚ^2` violating the seminet criterion: three lines and the zero space last.
pub fn complete_not_seminet_example() -> CoverInstance {
    let line = |a: i64, b: i64| Subspace::span(2, &[vec![q(a), q(b)]]);
    CoverInstance::new(
        2,
        vec![line(1, 0), line(0, 1), line(1, 1), Subspace::zero(2)],
    )
    .expect("same ambient")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_lines_in_a_plane() {
        let line = |a: i64, b: i64| Subspace::span(2, &[vec![q(a), q(b)]]);
        let c = CoverInstance::new(2, vec![line(1, 0), line(0, 1), line(1, 1)]).unwrap();
        let comp = c.covering_completion();
        assert!(comp.injective);
        assert_eq!(comp.completion_dim, 3);
        assert!(!comp.complete);
        assert_eq!(c.seminet_condition(), Err(2));
        assert!(c.distributivity_condition().is_err());
    }

    #[test]
    fn complete_but_not_seminet() {
        let c = complete_not_seminet_example();
        assert_eq!(c.is_complete_cover(), Ok(true));
        assert!(c.seminet_condition().is_err());
        assert!(c.distributivity_condition().is_ok());
    }

    #[test]
    fn not_a_cover_is_an_error() {
        let l = Subspace::span(2, &[vec![q(1), q(0)]]);
        let c = CoverInstance::new(2, vec![l.clone(), l]).unwrap();
        assert_eq!(c.is_complete_cover(), Err(CoverError::NotACover(1)));
    }

    #[test]
    fn broken_cocycle() {
        let r = broken_cocycle_example().check_cocycle_surjectivity();
        assert!(r.calmat);
        assert!(!r.cocycle);
        assert!(!r.all_surjective());
    }
}
