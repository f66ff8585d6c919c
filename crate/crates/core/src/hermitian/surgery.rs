//! Building new compatible metrics out of old ones.

use num_traits::Zero;

use super::{
    check_hermitian, classify_metric, hermitian_decomposition, unitary_basis, ClassifyOptions,
    ComplexStructure, Metric, PureType,
};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Subspace, Vector};

/// The metric making the given blocks mutually orthogonal, with the stated
/// Gram matrix on each block. The blocks' bases must together form a basis.
pub fn metric_from_blocks(blocks: &[(Vec<Vector>, QMatrix)]) -> Result<Metric> {
    let vectors: Vec<Vector> = blocks.iter().flat_map(|(b, _)| b.iter().cloned()).collect();
    let n = vectors.len();
    let mut gram = QMatrix::zeros(n, n);
    let mut offset = 0;
    for (basis, block) in blocks {
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                gram[(offset + a, offset + b)] = block[(a, b)].clone();
            }
        }
        offset += basis.len();
    }
    let p = QMatrix::from_columns(&vectors);
    let inv = p.inverse().ok_or_else(|| Error::InvalidInput("blocks do not form a basis".into()))?;
    Metric::new(inv.transpose().mul(&gram).mul(&inv))
}

/// `g_inner` on `s`, `g_outer` on the `g_outer`-orthogonal complement of
/// `s`, and the two declared orthogonal.
pub fn splice_metric(
    l: &LieAlgebra,
    j: &ComplexStructure,
    g_inner: &Metric,
    g_outer: &Metric,
    s: &Subspace,
) -> Result<Metric> {
    for dim in [j.dim(), g_inner.dim(), g_outer.dim(), s.ambient()] {
        if dim != l.dim() {
            return Err(Error::DimensionMismatch { expected: l.dim(), found: dim });
        }
    }
    g_inner.require_compatible(j)?;
    g_outer.require_compatible(j)?;
    if !j.preserves(s) {
        return Err(Error::NotJInvariant);
    }
    let w = s.orthogonal_complement(g_outer.matrix(), &Subspace::full(l.dim()));
    let inner = s.basis().to_vec();
    let outer = w.basis().to_vec();
    metric_from_blocks(&[
        (inner.clone(), g_inner.gram(&inner)),
        (outer.clone(), g_outer.gram(&outer)),
    ])
}

/// Whether `Ṽ ⟂ g′` and `g′ = [Ṽ, g′] ⊕ [Ṽ, Ṽ]` orthogonally.
pub fn skt_splitting_holds(l: &LieAlgebra, g: &Metric, v_tilde: &Subspace) -> bool {
    let derg = l.derived_algebra();
    if v_tilde.dim() + derg.dim() != l.dim() || !derg.intersect(v_tilde).is_zero() {
        return false;
    }
    let orthogonal = |a: &Subspace, b: &Subspace| {
        a.basis().iter().all(|x| b.basis().iter().all(|y| g.inner(x, y).is_zero()))
    };
    let a = l.bracket_subspaces(v_tilde, &derg);
    let b = l.bracket_subspaces(v_tilde, v_tilde);
    orthogonal(v_tilde, &derg)
        && orthogonal(&a, &b)
        && a.intersect(&b).is_zero()
        && a.sum(&b) == derg
}

fn require_pure_type_ii(l: &LieAlgebra, g: &Metric, j: &ComplexStructure) -> Result<()> {
    let d = hermitian_decomposition(l, g, j)?;
    if d.pure_type == PureType::II {
        Ok(())
    } else {
        Err(Error::NotPureTypeII)
    }
}

/// Replaces the complement `V_J` of `g′` by `Ṽ_J = R(V_J)`, `R = 1 + r`
/// with `r: V_J → [V_J, g′]` complex linear, so that `[Ṽ_J, Ṽ_J]` is
/// orthogonal to `[Ṽ_J, g′]`. Returns the new SKT metric and `Ṽ_J`.
pub fn normalize_skt_type_ii(
    l: &LieAlgebra,
    j: &ComplexStructure,
    g: &Metric,
) -> Result<(Metric, Subspace)> {
    check_hermitian(l, g, j, ClassifyOptions::default())?;
    require_pure_type_ii(l, g, j)?;
    if !classify_metric(l, g, j)?.skt {
        return Err(Error::NotSkt);
    }
    let n = l.dim();
    let derg = l.derived_algebra();
    let v_j = derg.orthogonal_complement(g.matrix(), &Subspace::full(n));
    let a = l.bracket_subspaces(&v_j, &derg);
    if !j.preserves(&a) {
        return Err(Error::NotJInvariant);
    }
    // real basis w = (z_1, Jz_1, …) of V_J
    let zs: Vec<Vector> = unitary_basis(&v_j, g, j)?.pairs.into_iter().map(|p| p.v).collect();
    let w: Vec<Vector> = zs.iter().flat_map(|z| [z.clone(), j.apply(z)]).collect();
    let k = a.dim();
    let unknowns = zs.len() * k;
    // r(z_p) = Σ_a u[p,a] A_a, r(Jz_p) = Σ_a u[p,a] J A_a
    let image_of = |idx: usize, a_idx: usize| -> Vector {
        let base = &a.basis()[a_idx];
        if idx % 2 == 0 {
            base.clone()
        } else {
            j.apply(base)
        }
    };
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for p in 0..w.len() {
        for q in p + 1..w.len() {
            // ad(w_p) r(w_q) - ad(w_q) r(w_p) = -P_A [w_p, w_q]
            let mut cols = vec![linalg::zero_vector(n); unknowns];
            for a_idx in 0..k {
                let col_q = &mut cols[(q / 2) * k + a_idx];
                *col_q = linalg::add(col_q, &l.bracket(&w[p], &image_of(q, a_idx)));
                let col_p = &mut cols[(p / 2) * k + a_idx];
                *col_p = linalg::sub(col_p, &l.bracket(&w[q], &image_of(p, a_idx)));
            }
            let target = a.project(g.matrix(), &l.bracket(&w[p], &w[q]));
            for coord in 0..n {
                rows.push(cols.iter().map(|c| c[coord].clone()).collect());
                rhs.push(-target[coord].clone());
            }
        }
    }
    let u = if unknowns == 0 || rows.is_empty() {
        linalg::zero_vector(unknowns)
    } else {
        QMatrix::from_rows(rows)
            .solve(&rhs)
            .ok_or_else(|| Error::PreconditionViolated("no complex-linear normalisation exists".into()))?
    };
    let r_of = |idx: usize| -> Vector {
        let mut out = linalg::zero_vector(n);
        for a_idx in 0..k {
            linalg::axpy(&mut out, &u[(idx / 2) * k + a_idx], &image_of(idx, a_idx));
        }
        out
    };
    let rw: Vec<Vector> = (0..w.len()).map(|idx| linalg::add(&w[idx], &r_of(idx))).collect();
    let derg_basis = derg.basis().to_vec();
    let metric = metric_from_blocks(&[
        (derg_basis.clone(), g.gram(&derg_basis)),
        (rw.clone(), g.gram(&w)),
    ])?;
    Ok((metric, Subspace::span(n, rw)))
}

/// Combines an SKT metric and a balanced metric on a unimodular pure
/// type II algebra into a Kähler metric.
pub fn kahler_from_skt_and_balanced_type_ii(
    l: &LieAlgebra,
    j: &ComplexStructure,
    g_skt: &Metric,
    g_bal: &Metric,
) -> Result<Metric> {
    let fail = |m: &str| Error::PreconditionViolated(m.to_string());
    check_hermitian(l, g_skt, j, ClassifyOptions::default())?;
    g_bal.require_compatible(j)?;
    if !l.is_two_step_solvable() {
        return Err(fail("algebra is not two-step solvable"));
    }
    if !l.is_unimodular() {
        return Err(fail("algebra is not unimodular"));
    }
    if require_pure_type_ii(l, g_skt, j).is_err() {
        return Err(fail("complex structure is not of pure type II"));
    }
    if !classify_metric(l, g_skt, j)?.skt {
        return Err(fail("first metric is not SKT"));
    }
    if !classify_metric(l, g_bal, j)?.balanced {
        return Err(fail("second metric is not balanced"));
    }
    let (g_tilde, v_tilde) = normalize_skt_type_ii(l, j, g_skt)?;
    let n = l.dim();
    let derg = l.derived_algebra();
    let v_hat = derg.orthogonal_complement(g_bal.matrix(), &Subspace::full(n));
    // R: Ṽ → V̂, projection along g′
    let mut basis = derg.basis().to_vec();
    basis.extend(v_hat.basis().iter().cloned());
    let p = QMatrix::from_columns(&basis);
    let k = derg.dim();
    let project = |z: &Vector| -> Vector {
        let coords = p.solve(z).expect("g′ ⊕ V̂ spans the algebra");
        v_hat.combine(&coords[k..])
    };
    let w = v_tilde.basis().to_vec();
    let rw: Vec<Vector> = w.iter().map(project).collect();
    let derg_basis = derg.basis().to_vec();
    metric_from_blocks(&[(derg_basis.clone(), g_tilde.gram(&derg_basis)), (w, g_bal.gram(&rw))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splice_of_identities_is_identity() {
        let l = LieAlgebra::abelian(4);
        let j = ComplexStructure::standard(4);
        let g = Metric::identity(4);
        let s = Subspace::coordinate(4, &[0, 1]);
        assert_eq!(splice_metric(&l, &j, &g, &g, &s).unwrap(), g);
        assert_eq!(
            splice_metric(&l, &j, &g, &g, &Subspace::coordinate(4, &[0])),
            Err(Error::NotJInvariant)
        );
    }
}
