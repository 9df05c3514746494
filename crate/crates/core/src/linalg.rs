//! Exact linear algebra over the rationals: dense matrices, row reduction and
//! subspaces kept in reduced row echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Self {
        let mut m = QMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row");
            for (c, v) in row.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        QMatrix {
            rows,
            cols,
            data: vals.iter().map(|&v| q(v)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        acc += &self[(r, c)] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = QMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&QMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Some `T` with `T · self = target`, if the row space of `target` lies in that of `self`.
    pub fn solve_left(&self, target: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.cols, target.cols);
        let t = self.transpose();
        let mut out = QMatrix::zeros(target.rows, self.rows);
        let (r, pivots) = t.hstack(&target.transpose()).rref();
        if pivots.iter().any(|&p| p >= self.rows) {
            return None;
        }
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..target.rows {
                out[(j, pc)] = r[(i, self.rows + j)].clone();
            }
        }
        Some(out)
    }
}

/// Subspace of `ℚ^n`, stored as a canonical reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: QMatrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: QMatrix::identity(n),
        }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &QMatrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let mut basis = QMatrix::zeros(k, m.ncols());
        for i in 0..k {
            for j in 0..m.ncols() {
                basis[(i, j)] = r[(i, j)].clone();
            }
        }
        Subspace {
            ambient: m.ncols(),
            basis,
        }
    }

    pub fn span(n: usize, vectors: &[Vec<Q>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::row_space(&QMatrix::from_rows(n, vectors.to_vec()))
    }

    /// Column space of a linear map.
    pub fn image(m: &QMatrix) -> Self {
        Subspace::row_space(&m.transpose())
    }

    pub fn kernel_of(m: &QMatrix) -> Self {
        Subspace::span(m.ncols(), &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Q>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let ext = self.basis.vstack(&QMatrix::from_rows(self.ambient, vec![v.to_vec()]));
        ext.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    /// Rows spanning the annihilator; as a map its kernel is exactly `self`.
    pub fn annihilator(&self) -> QMatrix {
        let rows = self.basis.kernel();
        QMatrix::from_rows(self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::kernel_of(&self.annihilator().vstack(&other.annihilator()))
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn map(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.ncols(), self.ambient);
        let vs: Vec<Vec<Q>> = self.vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.nrows(), &vs)
    }

    /// Preimage under a linear map.
    pub fn preimage(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.nrows(), self.ambient);
        Subspace::kernel_of(&self.annihilator().mul(m))
    }

    /// `{a ⊗ b}` spanned inside `ℚ^{n·m}`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in self.vectors() {
            for b in other.vectors() {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for x in &a {
                    for y in &b {
                        v.push(x * y);
                    }
                }
                vs.push(v);
            }
        }
        Subspace::span(self.ambient * other.ambient, &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let m = QMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64(3, 3, &[2, 1, 0, 0, 1, 4, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn solve_left_finds_factor() {
        let a = QMatrix::from_i64(2, 3, &[1, 0, 1, 0, 1, 1]);
        let t = QMatrix::from_i64(1, 2, &[3, -2]);
        let b = t.mul(&a);
        assert_eq!(a.solve_left(&b).unwrap().mul(&a), b);
        assert!(a.solve_left(&QMatrix::from_i64(1, 3, &[1, 0, 0])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let u = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let w = Subspace::span(3, &[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let i = u.intersect(&w);
        assert_eq!(i, Subspace::span(3, &[vec![q(0), q(5), q(0)]]));
        assert_eq!(u.sum(&w), Subspace::full(3));
        assert_eq!(u.annihilator().rank(), 1);
    }
}
