use serde::Serialize;

use super::{check_complex_shear, PreShearData};
use crate::error::{Error, Result};
use crate::hermitian::{ComplexStructure, Metric};
use crate::linalg::{self, QMatrix, Subspace, Vector};

/// The endomorphisms `A_X = ω(JX,·)|_a` and `B_Z = ω(Z,·)|_a`, written in
/// the adapted basis `[a_J | a_r]` of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearOperators {
    pub a: Subspace,
    pub a_j: Subspace,
    pub a_r: Subspace,
    pub u_r: Subspace,
    pub u_j: Subspace,
    /// `a_J` basis followed by `a_r` basis.
    pub adapted_basis: Vec<Vector>,
    /// One entry per basis vector `X` of `a_r`.
    pub x_basis: Vec<Vector>,
    pub a_ops: Vec<QMatrix>,
    /// One entry per basis vector `Z` of `U_J`.
    pub z_basis: Vec<Vector>,
    pub b_ops: Vec<QMatrix>,
    /// `f[p][q] = F_{X_p}(X_q) ∈ a_r`
    pub f: Vec<Vec<Vector>>,
    /// `h[p][q] = H_{X_p}(X_q) ∈ a_J`
    pub h: Vec<Vec<Vector>>,
}

impl ShearOperators {
    pub fn dim_a_j(&self) -> usize {
        self.a_j.dim()
    }

    /// `(K, G, H, F)` blocks of `A_{X_p}`: `K: a_J → a_J`, `G: a_J → a_r`,
    /// `H: a_r → a_J`, `F: a_r → a_r`.
    pub fn blocks(&self, p: usize) -> (QMatrix, QMatrix, QMatrix, QMatrix) {
        split_blocks(&self.a_ops[p], self.dim_a_j())
    }
}

fn split_blocks(m: &QMatrix, k: usize) -> (QMatrix, QMatrix, QMatrix, QMatrix) {
    let n = m.rows();
    let sub = |r0: usize, r1: usize, c0: usize, c1: usize| {
        QMatrix::from_rows((r0..r1).map(|i| (c0..c1).map(|j| m[(i, j)].clone()).collect()).collect())
    };
    (sub(0, k, 0, k), sub(k, n, 0, k), sub(0, k, k, n), sub(k, n, k, n))
}

/// The conclusions of the structural lemma on complex shear data; each
/// flag is `true` when the statement holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub g_vanishes: bool,
    pub k_complex: bool,
    pub f_symmetric: bool,
    pub omega_jj_in_a_j: bool,
    pub omega_jj_formula: bool,
    pub a_commute: bool,
    pub a_b_commute: bool,
    pub b_commute: bool,
    pub k_commute: bool,
    pub omega_r_j_invariant: bool,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.g_vanishes
            && self.k_complex
            && self.f_symmetric
            && self.omega_jj_in_a_j
            && self.omega_jj_formula
            && self.a_commute
            && self.a_b_commute
            && self.b_commute
            && self.k_commute
            && self.omega_r_j_invariant
    }
}

struct Splitter<'a> {
    basis: &'a [Vector],
    k: usize,
}

impl Splitter<'_> {
    fn coords(&self, v: &[crate::scalar::Scalar]) -> Vector {
        QMatrix::from_columns(self.basis).solve(v).expect("value lies in a")
    }

    /// `(a_J part, a_r part)` of a vector of `a`.
    fn split(&self, v: &[crate::scalar::Scalar]) -> (Vector, Vector) {
        let c = self.coords(v);
        let n = v.len();
        let mut pj = linalg::zero_vector(n);
        let mut pr = linalg::zero_vector(n);
        for (i, b) in self.basis.iter().enumerate() {
            if i < self.k {
                linalg::axpy(&mut pj, &c[i], b);
            } else {
                linalg::axpy(&mut pr, &c[i], b);
            }
        }
        (pj, pr)
    }
}

pub fn shear_operators(
    data: &PreShearData,
    g: &Metric,
    j: &ComplexStructure,
) -> Result<(ShearOperators, LemmaReport)> {
    let check = check_complex_shear(data, j)?;
    if !check.is_complex_shear_data() {
        return Err(Error::NotComplexShearData(format!("{check:?}")));
    }
    g.require_compatible(j)?;
    let n = data.dim();
    let om = |x: &[crate::scalar::Scalar], y: &[crate::scalar::Scalar]| data.omega().eval(x, y);
    let a = data.a().clone();
    let a_j = a.intersect(&j.image(&a));
    let a_r = a_j.orthogonal_complement(g.matrix(), &a);
    let u_r = a_r.sum(&j.image(&a_r));
    let u_j = a.sum(&j.image(&a)).orthogonal_complement(g.matrix(), &Subspace::full(n));

    let mut adapted_basis = a_j.basis().to_vec();
    adapted_basis.extend(a_r.basis().iter().cloned());
    let k = a_j.dim();
    let sp = Splitter { basis: &adapted_basis, k };
    let endo = |f: &dyn Fn(&[crate::scalar::Scalar]) -> Vector| {
        let cols: Vec<Vector> = adapted_basis.iter().map(|v| sp.coords(&f(v))).collect();
        if cols.is_empty() {
            QMatrix::zeros(0, 0)
        } else {
            QMatrix::from_columns(&cols)
        }
    };

    let x_basis = a_r.basis().to_vec();
    let z_basis = u_j.basis().to_vec();
    let a_ops: Vec<QMatrix> = x_basis.iter().map(|x| endo(&|v| om(&j.apply(x), v))).collect();
    let b_ops: Vec<QMatrix> = z_basis.iter().map(|z| endo(&|v| om(z, v))).collect();

    let mut f = Vec::new();
    let mut h = Vec::new();
    for x in &x_basis {
        let jx = j.apply(x);
        let (hr, fr): (Vec<Vector>, Vec<Vector>) = x_basis.iter().map(|xh| sp.split(&om(&jx, xh))).unzip();
        h.push(hr);
        f.push(fr);
    }

    // (i), (ii)
    let mut g_vanishes = true;
    let mut k_complex = true;
    for x in &x_basis {
        let jx = j.apply(x);
        for y in a_j.basis() {
            let (kj, gr) = sp.split(&om(&jx, y));
            g_vanishes &= linalg::is_zero(&gr);
            let (kjy, _) = sp.split(&om(&jx, &j.apply(y)));
            k_complex &= kjy == j.apply(&kj);
        }
    }
    // (iii), (iv)
    let r = x_basis.len();
    let mut f_symmetric = true;
    let mut omega_jj_in_a_j = true;
    let mut omega_jj_formula = true;
    for p in 0..r {
        for q in 0..r {
            f_symmetric &= f[p][q] == f[q][p];
            let w = om(&j.apply(&x_basis[p]), &j.apply(&x_basis[q]));
            omega_jj_in_a_j &= a_j.contains(&w);
            omega_jj_formula &= w == j.apply(&linalg::sub(&h[p][q], &h[q][p]));
        }
    }
    // (v)
    let pairwise = |ms: &[QMatrix], ns: &[QMatrix]| ms.iter().all(|m| ns.iter().all(|o| m.commutator(o).is_zero()));
    let a_commute = pairwise(&a_ops, &a_ops);
    let a_b_commute = pairwise(&a_ops, &b_ops);
    let b_commute = pairwise(&b_ops, &b_ops);
    let k_ops: Vec<QMatrix> = a_ops.iter().map(|m| split_blocks(m, k).0).collect();
    let k_commute = pairwise(&k_ops, &k_ops);
    let mut omega_r_j_invariant = true;
    for z in &z_basis {
        for x in &x_basis {
            let (_, lhs) = sp.split(&om(&j.apply(z), &j.apply(x)));
            let (_, rhs) = sp.split(&om(z, x));
            omega_r_j_invariant &= lhs == rhs;
        }
    }

    let report = LemmaReport {
        g_vanishes,
        k_complex,
        f_symmetric,
        omega_jj_in_a_j,
        omega_jj_formula,
        a_commute,
        a_b_commute,
        b_commute,
        k_commute,
        omega_r_j_invariant,
    };
    let ops = ShearOperators { a, a_j, a_r, u_r, u_j, adapted_basis, x_basis, a_ops, z_basis, b_ops, f, h };
    Ok((ops, report))
}

/// Consequences of the Kähler condition on shear data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KahlerConsequences {
    pub omega_u_j_vanishes: bool,
    pub omega_j_a_r_vanishes: bool,
    pub h_vanishes: bool,
}

impl KahlerConsequences {
    pub fn all_hold(&self) -> bool {
        self.omega_u_j_vanishes && self.omega_j_a_r_vanishes && self.h_vanishes
    }
}

pub fn kahler_consequences(ops: &ShearOperators, data: &PreShearData, j: &ComplexStructure) -> KahlerConsequences {
    let om = |x: &[crate::scalar::Scalar], y: &[crate::scalar::Scalar]| data.omega().eval(x, y);
    let vanishes_on = |vs: &[Vector]| {
        vs.iter().enumerate().all(|(p, x)| vs[p + 1..].iter().all(|y| linalg::is_zero(&om(x, y))))
    };
    let ja_r: Vec<Vector> = ops.x_basis.iter().map(|x| j.apply(x)).collect();
    KahlerConsequences {
        omega_u_j_vanishes: vanishes_on(&ops.z_basis),
        omega_j_a_r_vanishes: vanishes_on(&ja_r),
        h_vanishes: ops.h.iter().flatten().all(|v| linalg::is_zero(v)),
    }
}
