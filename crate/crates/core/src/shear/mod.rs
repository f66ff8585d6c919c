//! Shears of the abelian Lie algebra `R^{2n}`: a two-step solvable algebra
//! is encoded by a subspace `a` and an `a`-valued two-form `ω` with
//! bracket `[x, y] = -ω(x, y)`.

mod normal_forms;
mod operators;
mod random;

pub use normal_forms::{
    skt_two_rotation_data, skt_one_rotation_data, kahler_normal_form, kahler_normal_form_unchecked, skt_6d_nonpure_normal_form,
    skt_type_ii_normal_form, skt_type_ii_normal_form_unchecked, ComplexForm, KahlerKind, KahlerNormalForm,
    NonPureReport, SixDNonPureData, TypeIINormalForm,
};
pub use operators::{kahler_consequences, shear_operators, KahlerConsequences, LemmaReport, ShearOperators};
pub use random::{random_complex_shear, random_kahler_params, random_type_ii_params, ShearProfile, ShearSample};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{KForm, VectorValuedTwoForm};
use crate::hermitian::{ComplexStructure, Metric, Verdicts};
use crate::linalg::{self, Subspace, Vector};
use crate::scalar::Scalar;

/// A subspace `a ⊆ R^N` with an `a`-valued two-form vanishing on `Λ²a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreShearData {
    a: Subspace,
    omega: VectorValuedTwoForm,
}

impl PreShearData {
    /// Fails if a value of `ω` leaves `a`; the restriction condition is
    /// reported by [`validate_pre_shear`].
    pub fn new(a: Subspace, omega: VectorValuedTwoForm) -> Result<Self> {
        if a.ambient() != omega.dim() {
            return Err(Error::DimensionMismatch { expected: omega.dim(), found: a.ambient() });
        }
        let omega = omega.with_target(a.clone())?;
        Ok(Self { a, omega })
    }

    /// The shear data of a two-step solvable algebra: `a = g′`, `ω = -[·,·]`.
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let omega = VectorValuedTwoForm::from_bracket(l);
        Self { a: omega.target().clone(), omega }
    }

    pub fn dim(&self) -> usize {
        self.a.ambient()
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn omega(&self) -> &VectorValuedTwoForm {
        &self.omega
    }

    /// Shrinks `a` to `im ω`.
    pub fn normalized(&self) -> Self {
        let image = self.omega.image();
        Self {
            omega: self.omega.with_target(image.clone()).expect("image contains all values"),
            a: image,
        }
    }

    fn omega_basis_table(&self) -> Vec<Vec<Vector>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.omega.basis_value(i, j).clone()).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreShearReport {
    /// Pairs `(p, q)` of canonical basis vectors of `a` with `ω(a_p, a_q) ≠ 0`
    /// (1-indexed).
    pub restriction_violations: Vec<(usize, usize)>,
    pub image_in_a: bool,
}

impl PreShearReport {
    pub fn is_valid(&self) -> bool {
        self.restriction_violations.is_empty() && self.image_in_a
    }
}

pub fn validate_pre_shear(data: &PreShearData) -> PreShearReport {
    let basis = data.a.basis();
    let mut restriction_violations = Vec::new();
    for p in 0..basis.len() {
        for q in p + 1..basis.len() {
            if !linalg::is_zero(&data.omega.eval(&basis[p], &basis[q])) {
                restriction_violations.push((p + 1, q + 1));
            }
        }
    }
    let image_in_a = data.a.contains_subspace(&data.omega.image());
    PreShearReport { restriction_violations, image_in_a }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexShearCheck {
    pub jacobi_ok: bool,
    pub integrable_ok: bool,
}

impl ComplexShearCheck {
    pub fn is_complex_shear_data(&self) -> bool {
        self.jacobi_ok && self.integrable_ok
    }
}

/// The two equations making `(a, ω)` complex shear data: the cyclic sum of
/// `ω(ω(·,·),·)` vanishes, and `J^*ω = ω - J∘(J.ω)`.
pub fn check_complex_shear(data: &PreShearData, j: &ComplexStructure) -> Result<ComplexShearCheck> {
    let report = validate_pre_shear(data);
    if !report.is_valid() {
        return Err(Error::InvalidPreShear(format!(
            "ω does not vanish on Λ²a at pairs {:?}",
            report.restriction_violations
        )));
    }
    if j.dim() != data.dim() {
        return Err(Error::DimensionMismatch { expected: data.dim(), found: j.dim() });
    }
    let n = data.dim();
    let w = data.omega_basis_table();
    let om = |x: &[Scalar], y: &[Scalar]| data.omega.eval(x, y);

    let mut jacobi_ok = true;
    'outer: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let ec = linalg::unit(n, c);
                let ea = linalg::unit(n, a);
                let eb = linalg::unit(n, b);
                let s1 = om(&w[a][b], &ec);
                let s2 = om(&w[b][c], &ea);
                let s3 = om(&w[c][a], &eb);
                if !linalg::is_zero(&linalg::add(&linalg::add(&s1, &s2), &s3)) {
                    jacobi_ok = false;
                    break 'outer;
                }
            }
        }
    }

    let je: Vec<Vector> = (0..n).map(|i| j.apply(&linalg::unit(n, i))).collect();
    let mut integrable_ok = true;
    'outer2: for a in 0..n {
        for b in a + 1..n {
            // ω(Jx,Jy) = ω(x,y) + J(ω(Jx,y) + ω(x,Jy))
            let lhs = om(&je[a], &je[b]);
            let inner = linalg::add(&om(&je[a], &linalg::unit(n, b)), &om(&linalg::unit(n, a), &je[b]));
            let rhs = linalg::add(&w[a][b], &j.apply(&inner));
            if lhs != rhs {
                integrable_ok = false;
                break 'outer2;
            }
        }
    }
    Ok(ComplexShearCheck { jacobi_ok, integrable_ok })
}

/// The sheared algebra `[x, y] = -ω(x, y)` on the same vector space.
pub fn build_shear(data: &PreShearData) -> Result<LieAlgebra> {
    let n = data.dim();
    let l = LieAlgebra::from_fn(n, |i, j| data.omega.basis_value(i, j).iter().map(|x| -x).collect());
    if !l.is_validated() {
        return Err(Error::JacobiFailed);
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    Kahler,
    Balanced,
    Skt,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 3] = [ConditionKind::Kahler, ConditionKind::Balanced, ConditionKind::Skt];
}

impl Verdicts {
    pub fn get(&self, kind: ConditionKind) -> bool {
        match kind {
            ConditionKind::Kahler => self.kahler,
            ConditionKind::Balanced => self.balanced,
            ConditionKind::Skt => self.skt,
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ConditionKind::Kahler => "kahler",
            ConditionKind::Balanced => "balanced",
            ConditionKind::Skt => "skt",
        })
    }
}

impl FromStr for ConditionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kahler" | "kähler" => Ok(ConditionKind::Kahler),
            "balanced" => Ok(ConditionKind::Balanced),
            "skt" => Ok(ConditionKind::Skt),
            other => Err(Error::InvalidInput(format!("unknown condition '{other}'"))),
        }
    }
}

/// Evaluates the Kähler, balanced or SKT equation for the shear directly
/// on `ω`, without building the algebra.
pub fn shear_condition(
    data: &PreShearData,
    g: &Metric,
    j: &ComplexStructure,
    kind: ConditionKind,
) -> Result<bool> {
    require_complex_shear(data, g, j)?;
    Ok(condition_holds(data, g, j, kind))
}

/// All three shear conditions at once, validating the data only once.
pub fn shear_verdicts(data: &PreShearData, g: &Metric, j: &ComplexStructure) -> Result<Verdicts> {
    require_complex_shear(data, g, j)?;
    Ok(Verdicts {
        kahler: condition_holds(data, g, j, ConditionKind::Kahler),
        balanced: condition_holds(data, g, j, ConditionKind::Balanced),
        skt: condition_holds(data, g, j, ConditionKind::Skt),
    })
}

fn require_complex_shear(data: &PreShearData, g: &Metric, j: &ComplexStructure) -> Result<()> {
    let check = check_complex_shear(data, j)?;
    if !check.is_complex_shear_data() {
        return Err(Error::NotComplexShearData(format!("{check:?}")));
    }
    if g.dim() != data.dim() {
        return Err(Error::DimensionMismatch { expected: data.dim(), found: g.dim() });
    }
    g.require_compatible(j)
}

fn condition_holds(data: &PreShearData, g: &Metric, j: &ComplexStructure, kind: ConditionKind) -> bool {
    match kind {
        ConditionKind::Kahler => kahler_tau(data, g, j).is_zero(),
        ConditionKind::Balanced => balanced_shear_form(data, g, j).is_zero(),
        ConditionKind::Skt => skt_shear_form(data, g, j).is_zero(),
    }
}

/// `σ(u, v) = g(Ju, v)`
fn sigma(g: &Metric, j: &ComplexStructure, u: &[Scalar], v: &[Scalar]) -> Scalar {
    g.inner(&j.apply(u), v)
}

/// The three-form `τ(a,b,c) = Σ_cyc σ(ω(a,b), c)`.
fn kahler_tau(data: &PreShearData, g: &Metric, j: &ComplexStructure) -> KForm {
    let n = data.dim();
    let w = data.omega_basis_table();
    let e = |i| linalg::unit(n, i);
    let mut tau = KForm::zero(n, 3);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let v = sigma(g, j, &w[a][b], &e(c))
                    + sigma(g, j, &w[b][c], &e(a))
                    + sigma(g, j, &w[c][a], &e(b));
                tau.add_term((1 << a) | (1 << b) | (1 << c), v);
            }
        }
    }
    tau
}

/// `τ ∧ σ^{n-2}`; identically zero when `n = 1`.
fn balanced_shear_form(data: &PreShearData, g: &Metric, j: &ComplexStructure) -> KForm {
    let n = data.dim() / 2;
    if n < 2 {
        return KForm::zero(data.dim(), 3);
    }
    let sigma_form = crate::hermitian::fundamental_form(g, j).expect("compatible metric");
    kahler_tau(data, g, j).wedge(&sigma_form.power(n - 2))
}

/// The alternation of `g(J^*ω(·,·), ω(·,·)) + 2 g(J^*ω(ω(·,·),·), ·)`.
fn skt_shear_form(data: &PreShearData, g: &Metric, j: &ComplexStructure) -> KForm {
    let n = data.dim();
    let w = data.omega_basis_table();
    let je: Vec<Vector> = (0..n).map(|i| j.apply(&linalg::unit(n, i))).collect();
    // jw[a][b] = ω(Je_a, Je_b)
    let jw: Vec<Vec<Vector>> =
        (0..n).map(|a| (0..n).map(|b| data.omega.eval(&je[a], &je[b])).collect()).collect();
    let gm = g.matrix();
    // gw[c][d] = G ω(e_c, e_d), gjw[k][c] = G ω(Je_k, Je_c)
    let gw: Vec<Vec<Vector>> = (0..n).map(|c| (0..n).map(|d| gm.mul_vec(&w[c][d])).collect()).collect();
    let gjw: Vec<Vec<Vector>> = (0..n).map(|k| (0..n).map(|c| gm.mul_vec(&jw[k][c])).collect()).collect();
    let t1 = |a: usize, b: usize, c: usize, d: usize| linalg::dot(&jw[a][b], &gw[c][d]);
    // g(J^*ω(ω(e_a, e_b), e_c), e_d) = Σ_k ω(e_a, e_b)_k g(ω(Je_k, Je_c), e_d)
    let t2 = |a: usize, b: usize, c: usize, d: usize| {
        let mut acc = Scalar::zero();
        for (k, uk) in w[a][b].iter().enumerate() {
            if !uk.is_zero() {
                acc += uk * &gjw[k][c][d];
            }
        }
        acc
    };
    let two = Scalar::from_integer(2.into());
    let mut out = KForm::zero(n, 4);
    for q in quadruples(n) {
        let mut total = Scalar::zero();
        for (perm, sign) in PERMS4.iter() {
            let (a, b, c, d) = (q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]);
            let v = t1(a, b, c, d) + &two * t2(a, b, c, d);
            if *sign > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        out.add_term(q.iter().fold(0, |m, &i| m | (1 << i)), total);
    }
    out
}

fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

const PERMS4: [([usize; 4], i8); 24] = [
    ([0, 1, 2, 3], 1),
    ([0, 1, 3, 2], -1),
    ([0, 2, 1, 3], -1),
    ([0, 2, 3, 1], 1),
    ([0, 3, 1, 2], 1),
    ([0, 3, 2, 1], -1),
    ([1, 0, 2, 3], -1),
    ([1, 0, 3, 2], 1),
    ([1, 2, 0, 3], 1),
    ([1, 2, 3, 0], -1),
    ([1, 3, 0, 2], -1),
    ([1, 3, 2, 0], 1),
    ([2, 0, 1, 3], 1),
    ([2, 0, 3, 1], -1),
    ([2, 1, 0, 3], -1),
    ([2, 1, 3, 0], 1),
    ([2, 3, 0, 1], 1),
    ([2, 3, 1, 0], -1),
    ([3, 0, 1, 2], -1),
    ([3, 0, 2, 1], 1),
    ([3, 1, 0, 2], 1),
    ([3, 1, 2, 0], -1),
    ([3, 2, 0, 1], -1),
    ([3, 2, 1, 0], 1),
];


#[cfg(test)]
mod oracle_smoke {
    use super::*;
    use crate::hermitian::{classify_metric, is_integrable};

    #[test]
    fn shear_conditions_match_direct_verdicts() {
        let mut mismatches = Vec::new();
        for profile in ShearProfile::ALL {
            for dim in [4, 6] {
                if dim < profile.min_dim() {
                    continue;
                }
                for seed in 0..12 {
                    let s = random_complex_shear(seed, profile, dim).unwrap();
                    let l = build_shear(&s.data).unwrap();
                    assert!(is_integrable(&l, &s.j));
                    let v = classify_metric(&l, &s.g, &s.j).unwrap();
                    let got = [
                        shear_condition(&s.data, &s.g, &s.j, ConditionKind::Kahler).unwrap(),
                        shear_condition(&s.data, &s.g, &s.j, ConditionKind::Balanced).unwrap(),
                        shear_condition(&s.data, &s.g, &s.j, ConditionKind::Skt).unwrap(),
                    ];
                    if got != [v.kahler, v.balanced, v.skt] {
                        mismatches.push((profile, dim, seed, got, v));
                    }
                    let (_, report) = shear_operators(&s.data, &s.g, &s.j).unwrap();
                    assert!(report.is_clean(), "{profile} {dim} {seed}: {report:?}");
                }
            }
        }
        assert!(mismatches.is_empty(), "{mismatches:#?}");
    }
}
