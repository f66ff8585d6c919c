//! Exact rational linear algebra: dense matrices, echelon forms, and subspaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::scalar::{format_scalar, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

/// Standard basis vector with a one at position `i` (0-based).
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(t: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| t * x).collect()
}

/// `acc += t * v`
pub fn axpy(acc: &mut [Scalar], t: &Scalar, v: &[Scalar]) {
    if t.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += t * x;
        }
    }
}

/// Largest absolute coordinate, zero for the empty vector.
pub fn max_abs(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
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

    pub fn scale(&self, t: &Scalar) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * t).collect() }
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `x^T A y`
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.mul_vec(y))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &factor * &m[(row, j)];
                    m[(r, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel `{x : Ax = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `Ax = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
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

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for j in col..n {
                    let v = &factor * &m[(col, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        det
    }

    /// Positive definiteness of a symmetric matrix via its leading principal
    /// minors, computed as the pivots of elimination without row exchanges.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let mut m = self.clone();
        let n = m.rows;
        for col in 0..n {
            let pivot = m[(col, col)].clone();
            if !pivot.is_positive() {
                return false;
            }
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for j in col..n {
                    let v = &factor * &m[(col, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.to_rows().iter().map(|r| r.iter().map(crate::scalar::to_f64).collect()).collect()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^n`, stored by its reduced-echelon basis so that
/// equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|i| unit(ambient, i)).collect() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        assert!(rows.iter().all(|v| v.len() == ambient), "vector length differs from ambient dim");
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = QMatrix::from_rows(rows).rref();
        Self { ambient, basis: (0..pivots.len()).map(|i| r.row(i)).collect() }
    }

    /// Span of the standard basis vectors at the given 0-based positions.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Self::span(ambient, indices.iter().map(|&i| unit(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        QMatrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // a·B1 = b·B2  <=>  (a, -b) in ker [B1^T | -B2^T]
        let k1 = self.dim();
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
        let kernel = QMatrix::from_columns(&cols).nullspace();
        Subspace::span(
            self.ambient,
            kernel.iter().map(|c| self.combine(&c[..k1])),
        )
    }

    /// `Σ coeffs[i] * basis[i]`
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut v = zero_vector(self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.is_zero() {
            return is_zero(v).then(Vec::new);
        }
        QMatrix::from_columns(&self.basis).solve(v)
    }

    /// Image under a linear map.
    pub fn image(&self, map: &QMatrix) -> Subspace {
        Subspace::span(map.rows(), self.basis.iter().map(|v| map.mul_vec(v)))
    }

    /// `{w in within : g(s, w) = 0 for all s in self}`.
    pub fn orthogonal_complement(&self, metric: &QMatrix, within: &Subspace) -> Subspace {
        assert_eq!(self.ambient, within.ambient);
        if within.is_zero() {
            return within.clone();
        }
        if self.is_zero() {
            return within.clone();
        }
        let rows: Vec<Vector> = self
            .basis
            .iter()
            .map(|s| {
                let gs = metric.transpose().mul_vec(s);
                within.basis.iter().map(|w| dot(&gs, w)).collect()
            })
            .collect();
        let kernel = QMatrix::from_rows(rows).nullspace();
        Subspace::span(self.ambient, kernel.iter().map(|c| within.combine(c)))
    }

    /// Orthogonal projection onto this subspace with respect to a metric.
    pub fn project(&self, metric: &QMatrix, v: &[Scalar]) -> Vector {
        if self.is_zero() {
            return zero_vector(self.ambient);
        }
        let b = QMatrix::from_columns(&self.basis);
        let gram = b.transpose().mul(metric).mul(&b);
        let rhs = b.transpose().mul_vec(&metric.mul_vec(v));
        let coeffs = gram.solve(&rhs).expect("Gram matrix of a positive definite metric is invertible");
        self.combine(&coeffs)
    }

    pub fn is_invariant_under(&self, map: &QMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&map.mul_vec(v)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .basis
            .iter()
            .map(|v| format!("({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "span{{{}}} in Q^{}", vs.join(", "), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q};

    #[test]
    fn rref_rank_and_nullspace() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(is_zero(&m.mul_vec(&ker[0])));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = QMatrix::from_i64(&[&[2, 1], &[5, 3]]);
        assert_eq!(m.determinant(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let p = QMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(p.determinant(), int(-3));
    }

    #[test]
    fn positive_definiteness() {
        assert!(QMatrix::from_i64(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!QMatrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!QMatrix::from_i64(&[&[0, 0], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn solve_inconsistent() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[int(1), int(2)]).is_none());
        assert_eq!(m.solve(&[int(2), int(2)]).unwrap(), vec![int(2), int(0)]);
    }

    #[test]
    fn subspace_calculus() {
        let s = Subspace::span(3, vec![vec![int(1), int(1), int(0)], vec![int(2), int(2), int(0)]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.intersect(&s), s);
        let plane = Subspace::coordinate(3, &[0, 1]);
        let line = Subspace::coordinate(3, &[2]);
        assert!(plane.intersect(&line).is_zero());
        assert_eq!(plane.sum(&line), Subspace::full(3));
        assert_eq!(plane.intersect(&s), s);

        let e1 = Subspace::coordinate(2, &[0]);
        let perp = e1.orthogonal_complement(&QMatrix::identity(2), &Subspace::full(2));
        assert_eq!(perp, Subspace::coordinate(2, &[1]));

        let g = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let perp_g = e1.orthogonal_complement(&g, &Subspace::full(2));
        assert_eq!(perp_g, Subspace::span(2, vec![vec![int(1), int(-2)]]));
        assert_eq!(s.coordinates(&[int(3), int(3), int(0)]).unwrap(), vec![int(3)]);
        assert!(s.coordinates(&[int(1), int(0), int(0)]).is_none());
        let p = plane.project(&QMatrix::identity(3), &[int(1), q(1, 2), int(7)]);
        assert_eq!(p, vec![int(1), q(1, 2), int(0)]);
    }
}
