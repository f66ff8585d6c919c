use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{check_hermitian, ClassifyOptions, ComplexStructure, Metric};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PureType {
    /// `g′ = 0`
    #[serde(rename = "none")]
    None,
    I,
    II,
    III,
    #[serde(rename = "mixed")]
    Mixed,
}

impl fmt::Display for PureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PureType::None => "none",
            PureType::I => "I",
            PureType::II => "II",
            PureType::III => "III",
            PureType::Mixed => "mixed",
        })
    }
}

/// `g = g′_J ⊕ V_r ⊕ V_J` for a Hermitian Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianDecomposition {
    pub derg: Subspace,
    pub derg_j: Subspace,
    pub derg_r: Subspace,
    pub v_r: Subspace,
    pub v_j: Subspace,
    pub s: usize,
    pub r: usize,
    pub ell: usize,
    /// The first matching pure type; `g′` totally real with
    /// `g = g′ + Jg′` is tagged `I` (see [`Self::is_type`]).
    pub pure_type: PureType,
}

impl HermitianDecomposition {
    /// Whether the defining condition of a pure type holds; types I and
    /// III can hold simultaneously.
    pub fn is_type(&self, t: PureType) -> bool {
        let nonzero = !self.derg.is_zero();
        match t {
            PureType::None => !nonzero,
            PureType::I => nonzero && self.s == 0,
            PureType::II => nonzero && self.r == 0,
            PureType::III => nonzero && self.ell == 0,
            PureType::Mixed => nonzero && self.s > 0 && self.r > 0 && self.ell > 0,
        }
    }
}

pub fn hermitian_decomposition(
    l: &LieAlgebra,
    g: &Metric,
    j: &ComplexStructure,
) -> Result<HermitianDecomposition> {
    check_hermitian(l, g, j, ClassifyOptions { allow_nonintegrable: true })?;
    let n = l.dim();
    let derg = l.derived_algebra();
    let j_derg = j.image(&derg);
    let derg_j = derg.intersect(&j_derg);
    let derg_r = derg_j.orthogonal_complement(g.matrix(), &derg);
    let v_r = derg_r.sum(&j.image(&derg_r));
    let v_j = derg.sum(&j_derg).orthogonal_complement(g.matrix(), &Subspace::full(n));
    let (s, r, ell) = (derg_j.dim() / 2, v_r.dim() / 2, v_j.dim() / 2);
    let pure_type = if derg.is_zero() {
        PureType::None
    } else if s == 0 {
        PureType::I
    } else if r == 0 {
        PureType::II
    } else if ell == 0 {
        PureType::III
    } else {
        PureType::Mixed
    };
    Ok(HermitianDecomposition { derg, derg_j, derg_r, v_r, v_j, s, r, ell, pure_type })
}

/// A `J`-paired orthogonal basis `v, Jv` of a complex subspace. Norms are
/// kept as exact squares instead of normalising, so `(v, Jv)/√norm_sq`
/// is the unitary pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryPair {
    pub v: Vector,
    pub jv: Vector,
    pub norm_sq: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitaryBasis {
    pub pairs: Vec<UnitaryPair>,
}

impl UnitaryBasis {
    /// `v_1, Jv_1, v_2, Jv_2, …`
    pub fn vectors(&self) -> Vec<Vector> {
        self.pairs.iter().flat_map(|p| [p.v.clone(), p.jv.clone()]).collect()
    }

    /// `Σ [v_i, Jv_i] / |v_i|²`, i.e. `Σ [X_{2i-1}, X_{2i}]` for the
    /// normalised basis.
    pub fn bracket_sum(&self, l: &LieAlgebra) -> Vector {
        let mut c = linalg::zero_vector(l.dim());
        for p in &self.pairs {
            linalg::axpy(&mut c, &p.norm_sq.recip(), &l.bracket(&p.v, &p.jv));
        }
        c
    }
}

/// Complex Gram–Schmidt, pivoting on the first canonical basis vector of
/// what remains.
pub fn unitary_basis(s: &Subspace, g: &Metric, j: &ComplexStructure) -> Result<UnitaryBasis> {
    unitary_basis_with_pivots(s, g, j, |rest| rest.basis()[0].clone())
}

/// Complex Gram–Schmidt with a caller-chosen pivot in each remaining
/// subspace. A zero pivot is replaced by the first canonical basis vector.
pub fn unitary_basis_with_pivots(
    s: &Subspace,
    g: &Metric,
    j: &ComplexStructure,
    mut pivot: impl FnMut(&Subspace) -> Vector,
) -> Result<UnitaryBasis> {
    g.require_compatible(j)?;
    if !j.preserves(s) {
        return Err(Error::NotJInvariant);
    }
    let mut rest = s.clone();
    let mut pairs = Vec::new();
    while !rest.is_zero() {
        let mut v = pivot(&rest);
        if linalg::is_zero(&v) || !rest.contains(&v) {
            v = rest.basis()[0].clone();
        }
        let jv = j.apply(&v);
        let norm_sq = g.inner(&v, &v);
        rest = Subspace::span(rest.ambient(), vec![v.clone(), jv.clone()])
            .orthogonal_complement(g.matrix(), &rest);
        pairs.push(UnitaryPair { v, jv, norm_sq });
    }
    Ok(UnitaryBasis { pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralBalance {
    pub balanced: bool,
    /// `C = Σ [X_{2i-1}, X_{2i}] + Σ [Z_{2j-1}, Z_{2j}]`
    pub c: Vector,
    pub trace_free_on_v_j: bool,
    pub c_orthogonal_to_derg_j: bool,
    pub trace_matches_on_v_r: bool,
    /// Whether the unimodular shortcut `balanced ⟺ C = 0` was used.
    pub unimodular: bool,
}

/// Balanced test through unitary bases of `V_r` and `V_J`.
pub fn balanced_structural(l: &LieAlgebra, g: &Metric, j: &ComplexStructure) -> Result<StructuralBalance> {
    balanced_structural_with_pivots(l, g, j, |rest| rest.basis()[0].clone())
}

pub fn balanced_structural_with_pivots(
    l: &LieAlgebra,
    g: &Metric,
    j: &ComplexStructure,
    mut pivot: impl FnMut(&Subspace) -> Vector,
) -> Result<StructuralBalance> {
    check_hermitian(l, g, j, ClassifyOptions::default())?;
    if !l.is_two_step_solvable() {
        return Err(Error::NotTwoStepSolvable);
    }
    let dec = hermitian_decomposition(l, g, j)?;
    let xs = unitary_basis_with_pivots(&dec.v_r, g, j, &mut pivot)?;
    let zs = unitary_basis_with_pivots(&dec.v_j, g, j, &mut pivot)?;
    let c = linalg::add(&xs.bracket_sum(l), &zs.bracket_sum(l));

    let trace_free_on_v_j = dec.v_j.basis().iter().all(|z| l.trace_ad(z).is_zero());
    let c_orthogonal_to_derg_j = dec.derg_j.basis().iter().all(|y| g.inner(&c, y).is_zero());
    // σ(C, X) = g(JC, X)
    let jc = j.apply(&c);
    let trace_matches_on_v_r =
        dec.v_r.basis().iter().all(|x| (l.trace_ad(x) + g.inner(&jc, x)).is_zero());
    let unimodular = l.is_unimodular();
    let balanced = if unimodular {
        linalg::is_zero(&c)
    } else {
        trace_free_on_v_j && c_orthogonal_to_derg_j && trace_matches_on_v_r
    };
    Ok(StructuralBalance {
        balanced,
        c,
        trace_free_on_v_j,
        c_orthogonal_to_derg_j,
        trace_matches_on_v_r,
        unimodular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{aff_r, heisenberg};
    use crate::hermitian::classify_metric;
    use crate::scalar::{int, one};

    fn example_type_one() -> (LieAlgebra, ComplexStructure) {
        let l = aff_r().direct_sum(&heisenberg()).direct_sum(&LieAlgebra::abelian(1));
        (l, ComplexStructure::standard(6))
    }

    #[test]
    fn decomposition_type_one() {
        let (l, j) = example_type_one();
        let d = hermitian_decomposition(&l, &Metric::identity(6), &j).unwrap();
        assert_eq!((d.s, d.r, d.ell), (0, 2, 1));
        assert_eq!(d.pure_type, PureType::I);
        assert_eq!(d.derg, Subspace::coordinate(6, &[1, 4]));
    }

    #[test]
    fn aff_r_is_type_one_and_three() {
        let d = hermitian_decomposition(&aff_r(), &Metric::identity(2), &ComplexStructure::standard(2))
            .unwrap();
        assert_eq!(d.pure_type, PureType::I);
        assert!(d.is_type(PureType::I) && d.is_type(PureType::III));
    }

    #[test]
    fn unitary_basis_with_scaled_norms() {
        let s = Subspace::span(
            4,
            vec![
                vec![int(1), int(0), int(1), int(0)],
                vec![int(0), int(1), int(0), int(1)],
            ],
        );
        let b = unitary_basis(&s, &Metric::identity(4), &ComplexStructure::standard(4)).unwrap();
        assert_eq!(b.pairs.len(), 1);
        assert_eq!(b.pairs[0].norm_sq, int(2));
        assert!(unitary_basis(
            &Subspace::coordinate(4, &[0]),
            &Metric::identity(4),
            &ComplexStructure::standard(4)
        )
        .is_err());
        let e = unitary_basis(&Subspace::coordinate(2, &[0, 1]), &Metric::identity(2), &ComplexStructure::standard(2))
            .unwrap();
        assert_eq!(e.vectors(), vec![linalg::unit(2, 0), linalg::unit(2, 1)]);
    }

    #[test]
    fn v_r_basis_of_type_one_example() {
        let (l, j) = example_type_one();
        let g = Metric::identity(6);
        let d = hermitian_decomposition(&l, &g, &j).unwrap();
        let b = unitary_basis(&d.v_r, &g, &j).unwrap();
        assert_eq!(b.vectors().len(), 4);
        assert!(b.pairs.iter().all(|p| p.norm_sq == one()));
    }

    #[test]
    fn structural_agrees_on_type_one_example() {
        let (l, j) = example_type_one();
        let g = Metric::identity(6);
        let sb = balanced_structural(&l, &g, &j).unwrap();
        assert!(!sb.balanced);
        assert_eq!(sb.balanced, classify_metric(&l, &g, &j).unwrap().balanced);
    }
}
