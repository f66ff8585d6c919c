//! Complex structures, compatible metrics and the Kähler / balanced / SKT
//! conditions on Lie algebras.

mod decomposition;
mod surgery;

pub use decomposition::{
    balanced_structural, balanced_structural_with_pivots, hermitian_decomposition, unitary_basis,
    unitary_basis_with_pivots, HermitianDecomposition, PureType, StructuralBalance, UnitaryBasis,
    UnitaryPair,
};
pub use surgery::{
    kahler_from_skt_and_balanced_type_ii, metric_from_blocks, normalize_skt_type_ii,
    skt_splitting_holds, splice_metric,
};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{Differential, KForm};
use crate::linalg::{self, QMatrix, Subspace, Vector};
use crate::scalar::{int, Scalar};

/// An endomorphism `J` with `J² = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: QMatrix,
}

impl ComplexStructure {
    pub fn new(j: QMatrix) -> Result<Self> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(Error::NotAComplexStructure);
        }
        if j.mul(&j) != QMatrix::identity(j.rows()).neg() {
            return Err(Error::NotAComplexStructure);
        }
        Ok(Self { j })
    }

    /// `J e_{2i-1} = e_{2i}`.
    pub fn standard(dim: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..dim / 2).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        Self::from_pairs(dim, &pairs).expect("standard pairs cover every index")
    }

    /// `J e_a = e_b` (and so `J e_b = -e_a`) for each 1-indexed pair.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut j = QMatrix::zeros(dim, dim);
        for &(a, b) in pairs {
            for index in [a, b] {
                if index == 0 || index > dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            j[(b - 1, a - 1)] = Scalar::one();
            j[(a - 1, b - 1)] = -Scalar::one();
        }
        Self::new(j)
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.j
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.j.mul_vec(v)
    }

    /// `J A` for a subspace `A`.
    pub fn image(&self, s: &Subspace) -> Subspace {
        s.image(&self.j)
    }

    pub fn preserves(&self, s: &Subspace) -> bool {
        s.is_invariant_under(&self.j)
    }

    /// `J^*` on forms: `(J^*β)(x_1, …) = β(Jx_1, …)`.
    pub fn pullback(&self, form: &KForm) -> KForm {
        form.pullback(&self.j)
    }

    /// Conjugates `J` into the basis given by the columns of `m`.
    pub fn change_basis(&self, m: &QMatrix) -> Result<Self> {
        let inv = m.inverse().ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?;
        Self::new(inv.mul(&self.j).mul(m))
    }
}

/// The Nijenhuis tensor `N(x,y) = [Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y]`.
pub fn nijenhuis(l: &LieAlgebra, j: &ComplexStructure, x: &[Scalar], y: &[Scalar]) -> Vector {
    let (jx, jy) = (j.apply(x), j.apply(y));
    let a = l.bracket(&jx, &jy);
    let b = j.apply(&linalg::add(&l.bracket(&jx, y), &l.bracket(x, &jy)));
    linalg::sub(&linalg::sub(&a, &b), &l.bracket(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    /// 1-indexed basis pairs `(i, j)` with `N(e_i, e_j) ≠ 0`.
    pub failing_pairs: Vec<(usize, usize)>,
}

impl IntegrabilityReport {
    pub fn is_integrable(&self) -> bool {
        self.failing_pairs.is_empty()
    }
}

pub fn validate_complex_structure(l: &LieAlgebra, j: &ComplexStructure) -> Result<IntegrabilityReport> {
    let n = l.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.dim() });
    }
    let mut failing_pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !linalg::is_zero(&nijenhuis(l, j, &linalg::unit(n, a), &linalg::unit(n, b))) {
                failing_pairs.push((a + 1, b + 1));
            }
        }
    }
    Ok(IntegrabilityReport { failing_pairs })
}

pub fn is_integrable(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    validate_complex_structure(l, j).map(|r| r.is_integrable()).unwrap_or(false)
}

/// A positive definite symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    s: QMatrix,
}

impl Metric {
    pub fn new(s: QMatrix) -> Result<Self> {
        if !s.is_symmetric() {
            return Err(Error::InvalidInput("metric matrix is not symmetric".into()));
        }
        if !s.is_positive_definite() {
            return Err(Error::InvalidInput("metric matrix is not positive definite".into()));
        }
        Ok(Self { s })
    }

    pub fn identity(dim: usize) -> Self {
        Self { s: QMatrix::identity(dim) }
    }

    /// The metric for which the given vectors form an orthonormal basis.
    pub fn from_orthonormal_basis(vectors: &[Vector]) -> Result<Self> {
        let p = QMatrix::from_columns(vectors);
        let inv = p.inverse().ok_or_else(|| Error::InvalidInput("vectors are not a basis".into()))?;
        Self::new(inv.transpose().mul(&inv))
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.s
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.s.bilinear(x, y)
    }

    /// `Jᵀ S J = S`.
    pub fn is_compatible(&self, j: &ComplexStructure) -> bool {
        j.dim() == self.dim() && j.matrix().transpose().mul(&self.s).mul(j.matrix()) == self.s
    }

    pub fn require_compatible(&self, j: &ComplexStructure) -> Result<()> {
        if j.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: j.dim() });
        }
        if self.is_compatible(j) {
            Ok(())
        } else {
            Err(Error::IncompatibleMetric("g(J·,J·) ≠ g".into()))
        }
    }

    /// Gram matrix of a list of vectors.
    pub fn gram(&self, vectors: &[Vector]) -> QMatrix {
        let rows = vectors.iter().map(|x| vectors.iter().map(|y| self.inner(x, y)).collect()).collect();
        QMatrix::from_rows(rows)
    }

    /// Rewrites the metric in the basis given by the columns of `m`.
    pub fn change_basis(&self, m: &QMatrix) -> Result<Self> {
        Self::new(m.transpose().mul(&self.s).mul(m))
    }
}

/// `σ(x, y) = g(Jx, y)`.
pub fn fundamental_form(g: &Metric, j: &ComplexStructure) -> Result<KForm> {
    g.require_compatible(j)?;
    let sigma = j.matrix().transpose().mul(g.matrix());
    let n = g.dim();
    let mut form = KForm::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            form.add_term((1 << a) | (1 << b), sigma[(a, b)].clone());
        }
    }
    Ok(form)
}

pub fn j_pullback(j: &ComplexStructure, form: &KForm) -> KForm {
    j.pullback(form)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub kahler: bool,
    pub balanced: bool,
    pub skt: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Skip the integrability requirement (almost-Hermitian checks).
    pub allow_nonintegrable: bool,
}

/// The forms whose vanishing defines the three conditions.
#[derive(Clone, Debug)]
pub struct HermitianForms {
    pub sigma: KForm,
    pub d_sigma: KForm,
    /// `d(σ^{n-1})`
    pub d_sigma_power: KForm,
    /// `J^* dσ`
    pub j_d_sigma: KForm,
    /// `d J^* dσ`
    pub d_j_d_sigma: KForm,
}

impl HermitianForms {
    pub fn verdicts(&self) -> Verdicts {
        Verdicts {
            kahler: self.d_sigma.is_zero(),
            balanced: self.d_sigma_power.is_zero(),
            skt: self.d_j_d_sigma.is_zero(),
        }
    }
}

pub fn hermitian_forms(
    l: &LieAlgebra,
    g: &Metric,
    j: &ComplexStructure,
    opts: ClassifyOptions,
) -> Result<HermitianForms> {
    check_hermitian(l, g, j, opts)?;
    let d = Differential::<Scalar>::new(l);
    let sigma = fundamental_form(g, j)?;
    let d_sigma = d.apply(&sigma);
    let n = l.dim() / 2;
    let d_sigma_power = d.apply(&sigma.power(n - 1));
    let j_d_sigma = j.pullback(&d_sigma);
    let d_j_d_sigma = d.apply(&j_d_sigma);
    Ok(HermitianForms { sigma, d_sigma, d_sigma_power, j_d_sigma, d_j_d_sigma })
}

pub(crate) fn check_hermitian(
    l: &LieAlgebra,
    g: &Metric,
    j: &ComplexStructure,
    opts: ClassifyOptions,
) -> Result<()> {
    l.require_validated()?;
    if j.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: j.dim() });
    }
    g.require_compatible(j)?;
    if !opts.allow_nonintegrable && !validate_complex_structure(l, j)?.is_integrable() {
        return Err(Error::NotIntegrable);
    }
    Ok(())
}

/// Exact Kähler / balanced / SKT verdicts via the differential.
pub fn classify_metric(l: &LieAlgebra, g: &Metric, j: &ComplexStructure) -> Result<Verdicts> {
    classify_metric_with(l, g, j, ClassifyOptions::default())
}

pub fn classify_metric_with(
    l: &LieAlgebra,
    g: &Metric,
    j: &ComplexStructure,
    opts: ClassifyOptions,
) -> Result<Verdicts> {
    Ok(hermitian_forms(l, g, j, opts)?.verdicts())
}

/// A random metric compatible with `J`: `S = S₀ + JᵀS₀J` with
/// `S₀ = BᵀB + 1` for a small random integer matrix `B`.
pub fn random_compatible_metric<R: Rng + ?Sized>(j: &ComplexStructure, rng: &mut R) -> Metric {
    let n = j.dim();
    let b = random_int_matrix(n, 2, rng);
    let s0 = b.transpose().mul(&b).add(&QMatrix::identity(n));
    let s = s0.add(&j.matrix().transpose().mul(&s0).mul(j.matrix()));
    Metric::new(s).expect("sum of positive definite matrices")
}

/// A random invertible matrix commuting with `J`: `M = X - JXJ`.
pub fn random_complex_change_of_basis<R: Rng + ?Sized>(j: &ComplexStructure, rng: &mut R) -> QMatrix {
    let n = j.dim();
    loop {
        let x = random_int_matrix(n, 2, rng);
        let m = x.sub(&j.matrix().mul(&x).mul(j.matrix()));
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

pub(crate) fn random_int_matrix<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> QMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()).collect();
    QMatrix::from_rows(rows)
}
