//! Real Lie algebras given by exact structure constants in a fixed basis.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, QMatrix, Subspace, Vector};
use crate::scalar::Scalar;

/// A finite-dimensional real Lie algebra with basis `e_1, …, e_n`.
///
/// Brackets of basis vectors are stored densely; vectors passed to methods
/// are 0-indexed coordinate vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // table[i * dim + j] = [e_{i+1}, e_{j+1}]
    table: Vec<Vector>,
    validated: bool,
}

impl LieAlgebra {
    /// Builds an algebra from 1-indexed constants `(i, j, k, c)` meaning
    /// `[e_i, e_j] = … + c e_k + …`. Pairs with `i > j` are normalised by
    /// antisymmetry.
    pub fn new(dim: usize, constants: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim });
        }
        let mut seen = BTreeSet::new();
        let mut table = vec![linalg::zero_vector(dim); dim * dim];
        for (i, j, k, c) in constants {
            for &index in [i, j, k] {
                if index == 0 || index > dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::DiagonalEntry(*i));
            }
            let (a, b, c) = if i < j { (*i, *j, c.clone()) } else { (*j, *i, -c.clone()) };
            if !seen.insert((a, b, *k)) {
                return Err(Error::DuplicateEntry { i: a, j: b, k: *k });
            }
            table[(a - 1) * dim + (b - 1)][k - 1] += &c;
            table[(b - 1) * dim + (a - 1)][k - 1] -= &c;
        }
        Ok(Self::finish(dim, table))
    }

    /// Builds an algebra from a function giving `[e_i, e_j]` for `i < j`
    /// (0-indexed).
    pub fn from_fn(dim: usize, mut bracket: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut table = vec![linalg::zero_vector(dim); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bracket(i, j);
                assert_eq!(v.len(), dim, "bracket value has wrong length");
                table[j * dim + i] = v.iter().map(|x| -x).collect();
                table[i * dim + j] = v;
            }
        }
        Self::finish(dim, table)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| linalg::zero_vector(dim))
    }

    fn finish(dim: usize, table: Vec<Vector>) -> Self {
        let mut l = Self { dim, table, validated: false };
        l.validated = l.jacobi_residual().is_zero();
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the Jacobi identity holds exactly.
    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated)
        }
    }

    /// `[e_i, e_j]`, 0-indexed.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// Nonzero structure constants `(i, j, k, c)`, 1-indexed with `i < j`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found: v.len() })
        }
    }

    pub fn try_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket(x, y))
    }

    /// Panics on length mismatch; see [`Self::try_bracket`].
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length differs from dim");
        let mut out = linalg::zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let b = self.basis_bracket(i, j);
                if linalg::is_zero(b) {
                    continue;
                }
                linalg::axpy(&mut out, &(xi * yj), b);
            }
        }
        out
    }

    /// Max-abs coordinate of the cyclic Jacobi sum over basis triples.
    pub fn jacobi_residual(&self) -> Scalar {
        let n = self.dim;
        let e = |i| linalg::unit(n, i);
        let mut worst = Scalar::zero();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    let sum = linalg::add(&linalg::add(&a, &b), &c);
                    let m = max_abs(&sum);
                    if m > worst {
                        worst = m;
                    }
                }
            }
        }
        worst
    }

    /// Matrix of `ad(x) = [x, ·]`.
    pub fn ad(&self, x: &[Scalar]) -> QMatrix {
        let cols: Vec<Vector> =
            (0..self.dim).map(|j| self.bracket(x, &linalg::unit(self.dim, j))).collect();
        QMatrix::from_columns(&cols)
    }

    pub fn trace_ad(&self, x: &[Scalar]) -> Scalar {
        // tr ad(x) = Σ_i x_i tr ad(e_i)
        x.iter()
            .enumerate()
            .filter(|(_, xi)| !xi.is_zero())
            .fold(Scalar::zero(), |acc, (i, xi)| acc + xi * self.trace_ad_basis(i))
    }

    fn trace_ad_basis(&self, i: usize) -> Scalar {
        (0..self.dim).fold(Scalar::zero(), |acc, j| acc + &self.basis_bracket(i, j)[j])
    }

    /// The linear form `x ↦ tr ad(x)` as a coefficient vector.
    pub fn trace_form(&self) -> Vector {
        (0..self.dim).map(|i| self.trace_ad_basis(i)).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        linalg::is_zero(&self.trace_form())
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                out.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim, out)
    }

    /// The derived algebra `g′ = [g, g]`.
    pub fn derived_algebra(&self) -> Subspace {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push(self.basis_bracket(i, j).clone());
            }
        }
        Subspace::span(self.dim, out)
    }

    pub fn image_of_bracket(&self) -> Subspace {
        self.derived_algebra()
    }

    pub fn center(&self) -> Subspace {
        // x central iff Σ_i x_i [e_i, e_j] = 0 for all j
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.basis_bracket(i, j)[k].clone()).collect::<Vector>());
            }
        }
        let kernel = QMatrix::from_rows(rows).nullspace();
        Subspace::span(n, kernel)
    }

    /// Two-step solvable: the derived algebra is abelian (an abelian
    /// algebra counts).
    pub fn is_two_step_solvable(&self) -> bool {
        let d = self.derived_algebra();
        self.bracket_subspaces(&d, &d).is_zero()
    }

    /// Dimensions of `g ⊇ g′ ⊇ g″ ⊇ …` until the series stabilises.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut current = Subspace::full(self.dim);
        loop {
            let next = self.bracket_subspaces(&current, &current);
            if next.dim() == current.dim() {
                break;
            }
            dims.push(next.dim());
            current = next;
        }
        dims
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until it stabilises.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let full = Subspace::full(self.dim);
        let mut dims = vec![self.dim];
        let mut current = full.clone();
        loop {
            let next = self.bracket_subspaces(&full, &current);
            if next.dim() == current.dim() {
                break;
            }
            dims.push(next.dim());
            current = next;
        }
        dims
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series_dims().last() == Some(&0)
    }

    /// Rewrites the algebra in the basis given by the columns of `m`:
    /// the new bracket is `(x, y) ↦ m⁻¹[mx, my]`.
    pub fn change_basis(&self, m: &QMatrix) -> Result<Self> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.rows() });
        }
        let inv = m.inverse().ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?;
        let cols = m.columns();
        Ok(Self::from_fn(self.dim, |i, j| inv.mul_vec(&self.bracket(&cols[i], &cols[j]))))
    }

    /// Block direct sum; the basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let (n1, n) = (self.dim, self.dim + other.dim);
        Self::from_fn(n, |i, j| {
            let mut v = linalg::zero_vector(n);
            if j < n1 {
                v[..n1].clone_from_slice(self.basis_bracket(i, j));
            } else if i >= n1 {
                v[n1..].clone_from_slice(other.basis_bracket(i - n1, j - n1));
            }
            v
        })
    }

    pub fn structure_invariants(&self) -> Result<Fingerprint> {
        self.require_validated()?;
        let derived = self.derived_algebra();
        let center = self.center();
        Ok(Fingerprint {
            dim: self.dim,
            derived_series: self.derived_series_dims(),
            lower_central_series: self.lower_central_series_dims(),
            center: center.dim(),
            derived_cap_center: derived.intersect(&center).dim(),
            unimodular: self.is_unimodular(),
            nilpotent: self.is_nilpotent(),
        })
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}, {:?})", self.dim, self.constants())
    }
}

/// Basis-independent numerical invariants; equal fingerprints do not imply
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub center: usize,
    pub derived_cap_center: usize,
    pub unimodular: bool,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinction {
    /// The algebras are certainly not isomorphic.
    Distinct { reason: String },
    /// No invariant tells them apart.
    Inconclusive,
}

/// Compares fingerprints; never claims an isomorphism.
pub fn fingerprint_distinguish(a: &LieAlgebra, b: &LieAlgebra) -> Result<Distinction> {
    let (fa, fb) = (a.structure_invariants()?, b.structure_invariants()?);
    let reason = if fa.dim != fb.dim {
        Some(format!("dimension {} vs {}", fa.dim, fb.dim))
    } else if fa.derived_series != fb.derived_series {
        Some(format!("derived series {:?} vs {:?}", fa.derived_series, fb.derived_series))
    } else if fa.lower_central_series != fb.lower_central_series {
        Some(format!(
            "lower central series {:?} vs {:?}",
            fa.lower_central_series, fb.lower_central_series
        ))
    } else if fa.center != fb.center {
        Some(format!("center dimension {} vs {}", fa.center, fb.center))
    } else if fa.derived_cap_center != fb.derived_cap_center {
        Some(format!(
            "dim(g' ∩ center) {} vs {}",
            fa.derived_cap_center, fb.derived_cap_center
        ))
    } else if fa.unimodular != fb.unimodular {
        Some(format!("unimodular {} vs {}", fa.unimodular, fb.unimodular))
    } else if fa.nilpotent != fb.nilpotent {
        Some(format!("nilpotent {} vs {}", fa.nilpotent, fb.nilpotent))
    } else {
        None
    };
    Ok(match reason {
        Some(reason) => Distinction::Distinct { reason },
        None => Distinction::Inconclusive,
    })
}

/// `aff_R`: `[e1, e2] = e2`.
pub fn aff_r() -> LieAlgebra {
    LieAlgebra::new(2, &[(1, 2, 2, crate::scalar::one())]).expect("valid constants")
}

/// Heisenberg algebra `h3`: `[e1, e2] = e3`, i.e. `de^3 = e^{21}`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(3, &[(1, 2, 3, crate::scalar::one())]).expect("valid constants")
}

/// Direct sum of copies of `aff_R` followed by an abelian factor.
pub fn aff_sum(copies: usize, abelian: usize) -> LieAlgebra {
    let mut l = if copies == 0 { LieAlgebra::abelian(abelian) } else { aff_r() };
    for _ in 1..copies {
        l = l.direct_sum(&aff_r());
    }
    if copies > 0 && abelian > 0 {
        l = l.direct_sum(&LieAlgebra::abelian(abelian));
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, one};

    #[test]
    fn aff_r_bracket() {
        let l = aff_r();
        assert!(l.is_validated());
        assert_eq!(l.bracket(&linalg::unit(2, 0), &linalg::unit(2, 1)), linalg::unit(2, 1));
        assert_eq!(l.trace_ad(&linalg::unit(2, 0)), one());
        assert!(!l.is_unimodular());
        assert!(l.is_two_step_solvable());
    }

    #[test]
    fn invalid_table_has_unit_residual() {
        let l = LieAlgebra::new(3, &[(1, 2, 1, one()), (1, 3, 2, one())]).unwrap();
        assert!(!l.is_validated());
        assert_eq!(l.jacobi_residual(), one());
        assert_eq!(l.structure_invariants(), Err(Error::NotValidated));
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            LieAlgebra::new(2, &[(1, 3, 1, one())]),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        );
        assert_eq!(
            LieAlgebra::new(2, &[(1, 2, 2, one()), (2, 1, 2, one())]),
            Err(Error::DuplicateEntry { i: 1, j: 2, k: 2 })
        );
        assert_eq!(LieAlgebra::new(2, &[(1, 1, 2, one())]), Err(Error::DiagonalEntry(1)));
        assert!(LieAlgebra::new(0, &[]).is_err());
    }

    #[test]
    fn reversed_pair_is_normalised() {
        let l = LieAlgebra::new(2, &[(2, 1, 2, int(-1))]).unwrap();
        assert_eq!(l, aff_r());
    }

    #[test]
    fn heisenberg_invariants() {
        let h = heisenberg();
        assert_eq!(h.jacobi_residual(), Scalar::zero());
        assert!(h.is_unimodular() && h.is_two_step_solvable() && h.is_nilpotent());
        let f = h.structure_invariants().unwrap();
        assert_eq!(f.center, 1);
        assert_eq!(f.derived_cap_center, 1);
    }

    #[test]
    fn direct_sum_fingerprints() {
        let a = aff_r().direct_sum(&heisenberg()).direct_sum(&LieAlgebra::abelian(1));
        let fa = a.structure_invariants().unwrap();
        assert_eq!(a.derived_algebra().dim(), 2);
        assert_eq!(fa.derived_cap_center, 1);
        assert!(!fa.unimodular);
        let b = aff_sum(2, 2);
        let fb = b.structure_invariants().unwrap();
        assert_eq!(b.derived_algebra().dim(), 2);
        assert_eq!(fb.derived_cap_center, 0);
        assert!(matches!(fingerprint_distinguish(&a, &b).unwrap(), Distinction::Distinct { .. }));
        assert_eq!(fingerprint_distinguish(&a, &a).unwrap(), Distinction::Inconclusive);
        assert!(matches!(
            fingerprint_distinguish(&a, &aff_sum(3, 0)).unwrap(),
            Distinction::Distinct { .. }
        ));
        let ab = LieAlgebra::abelian(6).structure_invariants().unwrap();
        assert_eq!(ab.derived_series, vec![6, 0]);
        assert_eq!(ab.center, 6);
        assert_eq!(aff_sum(1, 4).derived_algebra().dim(), 1);
        assert_eq!(LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(3)), LieAlgebra::abelian(5));
    }

    #[test]
    fn change_basis_round_trip() {
        let l = aff_r().direct_sum(&heisenberg());
        let m = QMatrix::from_i64(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 0, 0, 2],
            &[0, 0, 1, 0, 0],
            &[3, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        let l2 = l.change_basis(&m).unwrap();
        assert!(l2.is_validated());
        assert_eq!(l2.change_basis(&m.inverse().unwrap()).unwrap(), l);
        assert_eq!(l.structure_invariants().unwrap(), l2.structure_invariants().unwrap());
    }
}
