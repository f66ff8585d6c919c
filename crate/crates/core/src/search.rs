//! Numerical search for compatible metrics satisfying a condition, with an
//! exact verification pass on a rationalised result.
//!
//! A negative result is inconclusive: it only says that no witness turned
//! up within the configured budget.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{Differential, KForm, Mask};
use crate::hermitian::{classify_metric, is_integrable, ComplexStructure, Metric};
use crate::linalg::{QMatrix, Vector};
use crate::scalar::{rationalize, to_f64, Scalar};
use crate::shear::ConditionKind;

/// Exact basis of the `J`-compatible symmetric matrices.
#[derive(Clone, Debug)]
pub struct MetricParameterization {
    pub basis: Vec<QMatrix>,
    /// `(1 + JᵀJ)/2`, which is compatible and positive definite.
    pub reference: QMatrix,
    /// Coordinates of `reference` in `basis`.
    pub reference_coords: Vector,
}

impl MetricParameterization {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.reference.rows()
    }

    pub fn combine(&self, x: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let mut s = QMatrix::zeros(n, n);
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                s = s.add(&b.scale(c));
            }
        }
        s
    }

    pub fn combine_f64(&self, x: &[f64]) -> Vec<Vec<f64>> {
        combine_f64(&self.basis_f64(), x, self.dim())
    }

    fn basis_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.basis.iter().map(QMatrix::to_f64).collect()
    }
}

fn combine_f64(basis: &[Vec<Vec<f64>>], x: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; n]; n];
    for (c, b) in x.iter().zip(basis) {
        for (row, brow) in s.iter_mut().zip(b) {
            for (v, bv) in row.iter_mut().zip(brow) {
                *v += c * bv;
            }
        }
    }
    s
}

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

fn sym_matrix(n: usize, idx: &[(usize, usize)], v: &[Scalar]) -> QMatrix {
    let mut s = QMatrix::zeros(n, n);
    for (&(a, b), c) in idx.iter().zip(v) {
        s[(a, b)] = c.clone();
        s[(b, a)] = c.clone();
    }
    s
}

pub fn metric_parameterization(j: &ComplexStructure) -> MetricParameterization {
    let n = j.dim();
    let idx = sym_index(n);
    let jm = j.matrix();
    let jt = jm.transpose();
    // columns: the constraint JᵀSJ - S applied to each elementary symmetric matrix
    let images: Vec<QMatrix> = (0..idx.len())
        .map(|k| {
            let mut e = vec![Scalar::zero(); idx.len()];
            e[k] = crate::scalar::one();
            let s = sym_matrix(n, &idx, &e);
            jt.mul(&s).mul(jm).sub(&s)
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = idx
        .iter()
        .map(|&(a, b)| images.iter().map(|m| m[(a, b)].clone()).collect())
        .collect();
    let basis: Vec<QMatrix> =
        QMatrix::from_rows(rows).nullspace().iter().map(|v| sym_matrix(n, &idx, v)).collect();
    let reference = QMatrix::identity(n).add(&jt.mul(jm)).scale(&crate::scalar::q(1, 2));
    let reference_coords = coordinates(&basis, &reference).expect("reference is compatible");
    MetricParameterization { basis, reference, reference_coords }
}

fn coordinates(basis: &[QMatrix], s: &QMatrix) -> Option<Vector> {
    let n = s.rows();
    let idx = sym_index(n);
    let rows: Vec<Vec<Scalar>> =
        idx.iter().map(|&(a, b)| basis.iter().map(|m| m[(a, b)].clone()).collect()).collect();
    let rhs: Vec<Scalar> = idx.iter().map(|&(a, b)| s[(a, b)].clone()).collect();
    QMatrix::from_rows(rows).solve(&rhs)
}

fn sigma_f64(j: &[Vec<f64>], s: &[Vec<f64>]) -> KForm<f64> {
    // σ_ab = g(Je_a, e_b) = (JᵀS)_ab
    let n = s.len();
    let mut form = KForm::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            let v: f64 = (0..n).map(|c| j[c][a] * s[c][b]).sum();
            if v != 0.0 {
                form.add_term((1 << a) | (1 << b), v);
            }
        }
    }
    form
}

fn condition_form(d: &Differential<f64>, j: &[Vec<f64>], sigma: &KForm<f64>, kind: ConditionKind) -> KForm<f64> {
    match kind {
        ConditionKind::Kahler => d.apply(sigma),
        ConditionKind::Balanced => d.apply(&sigma.power(sigma.dim() / 2 - 1)),
        ConditionKind::Skt => d.apply(&d.apply(sigma).pullback_rows(j)),
    }
}

/// Squared coefficient norm of `dσ`, `d(σ^{n-1})` or `d(J^*dσ)` for a
/// floating-point metric matrix.
pub fn residual(l: &LieAlgebra, j: &ComplexStructure, s: &[Vec<f64>], kind: ConditionKind) -> Result<f64> {
    let n = l.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.dim() });
    }
    if s.len() != n || s.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: s.len() });
    }
    let jf = j.matrix().to_f64();
    let scale = s.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
    for a in 0..n {
        for b in 0..n {
            let jsj: f64 = (0..n).flat_map(|c| (0..n).map(move |e| (c, e))).map(|(c, e)| jf[c][a] * s[c][e] * jf[e][b]).sum();
            if (s[a][b] - s[b][a]).abs() > 1e-9 * scale || (jsj - s[a][b]).abs() > 1e-9 * scale {
                return Err(Error::IncompatibleMetric("g(J·,J·) ≠ g".into()));
            }
        }
    }
    let d = Differential::<f64>::new(l);
    Ok(condition_form(&d, &jf, &sigma_f64(&jf, s), kind).norm_sq_f64())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub seeds: Vec<u64>,
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Barrier weight `μ_k = max(initial · decay^k, floor)`.
    pub barrier_initial: f64,
    pub barrier_decay: f64,
    pub barrier_floor: f64,
    /// Armijo backtracking starts here; the step doubles after each accepted move.
    pub initial_step: f64,
    /// Denominator bounds tried, in order, when rationalising.
    pub denominators: Vec<i64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seeds: (0..16).collect(),
            max_iterations: 5000,
            tolerance: 1e-9,
            barrier_initial: 1e-2,
            barrier_decay: 0.995,
            barrier_floor: 0.0,
            initial_step: 0.1,
            denominators: vec![1, 2, 10, 100, 1000, 10_000, 1_000_000],
        }
    }
}

impl SearchConfig {
    /// Defaults, with the seed list taken from `HERMLIE_SEEDS` when set
    /// (`"0,1,5"` or a range `"0..32"`).
    pub fn from_env() -> Result<Self> {
        let mut c = Self::default();
        if let Ok(text) = std::env::var("HERMLIE_SEEDS") {
            c.seeds = parse_seeds(&text)?;
        }
        Ok(c)
    }
}

pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidInput(format!("bad seed list '{text}'"));
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a >= b {
            return Err(bad());
        }
        return Ok((a..b).collect());
    }
    let seeds: Vec<u64> =
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(seeds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NotFound,
}

impl SearchStatus {
    pub fn describe(&self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::NotFound => "no witness found (inconclusive)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub kind: ConditionKind,
    pub status: SearchStatus,
    /// The successful iterate, or the best one seen over all seeds, scaled
    /// to smallest eigenvalue 1.
    pub metric: Vec<Vec<f64>>,
    /// Residual of `metric`.
    pub residual: f64,
    pub iterations: usize,
    pub seed: u64,
    pub min_eigenvalue: f64,
    /// Smallest eigenvalue over every accepted iterate of the reported seed,
    /// before rescaling.
    pub min_eigenvalue_seen: f64,
    #[serde(skip)]
    pub exact_metric: Option<Metric>,
    pub exact_verified: bool,
}

/// Evaluates the residual on parameter coordinates.
struct Objective {
    n: usize,
    kind: ConditionKind,
    basis: Vec<Vec<Vec<f64>>>,
    /// Kähler and SKT residuals are `|Ax|²`.
    linear: Option<Vec<Vec<f64>>>,
    sigma_basis: Vec<KForm<f64>>,
    d: Differential<f64>,
}

/// Exact coefficient matrix of the linear map `x ↦ dσ` (Kähler) or
/// `x ↦ dJ^*dσ` (SKT) on parameter coordinates; `None` for the balanced
/// condition, which is not linear.
pub fn linear_condition_matrix(
    l: &LieAlgebra,
    j: &ComplexStructure,
    p: &MetricParameterization,
    kind: ConditionKind,
) -> Option<QMatrix> {
    (kind != ConditionKind::Balanced).then(|| exact_linear_map(l, j, p, kind))
}

fn exact_linear_map(l: &LieAlgebra, j: &ComplexStructure, p: &MetricParameterization, kind: ConditionKind) -> QMatrix {
    let d = Differential::<Scalar>::new(l);
    let jt = j.matrix().transpose();
    let forms: Vec<KForm<Scalar>> = p
        .basis
        .iter()
        .map(|s| {
            let sig = jt.mul(s);
            let mut form = KForm::zero(l.dim(), 2);
            for a in 0..l.dim() {
                for b in a + 1..l.dim() {
                    form.add_term((1 << a) | (1 << b), sig[(a, b)].clone());
                }
            }
            let ds = d.apply(&form);
            match kind {
                ConditionKind::Skt => d.apply(&j.pullback(&ds)),
                _ => ds,
            }
        })
        .collect();
    let masks: Vec<Mask> = {
        let mut all: BTreeMap<Mask, ()> = BTreeMap::new();
        for f in &forms {
            for m in f.terms().keys() {
                all.insert(*m, ());
            }
        }
        all.into_keys().collect()
    };
    if masks.is_empty() {
        return QMatrix::zeros(0, p.len());
    }
    let rows = masks
        .iter()
        .map(|m| forms.iter().map(|f| f.terms().get(m).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    QMatrix::from_rows(rows)
}

impl Objective {
    fn new(l: &LieAlgebra, j: &ComplexStructure, p: &MetricParameterization, kind: ConditionKind) -> Self {
        let n = l.dim();
        let jf = j.matrix().to_f64();
        let basis = p.basis_f64();
        let linear = match kind {
            ConditionKind::Balanced => None,
            _ => Some(exact_linear_map(l, j, p, kind).to_f64()),
        };
        let sigma_basis = basis.iter().map(|s| sigma_f64(&jf, s)).collect();
        Self { n, kind, basis, linear, sigma_basis, d: Differential::new(l) }
    }

    fn residual(&self, x: &[f64]) -> f64 {
        match &self.linear {
            Some(a) => a.iter().map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum::<f64>().powi(2)).sum(),
            None => {
                let mut sigma = KForm::zero(self.n, 2);
                for (c, s) in x.iter().zip(&self.sigma_basis) {
                    sigma = sigma.add(&s.scale(c));
                }
                let power = sigma.power(self.n / 2 - 1);
                debug_assert_eq!(self.kind, ConditionKind::Balanced);
                self.d.apply(&power).norm_sq_f64()
            }
        }
    }

    fn matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let s = combine_f64(&self.basis, x, self.n);
        DMatrix::from_fn(self.n, self.n, |a, b| s[a][b])
    }

    /// `-log det S`, or `None` outside the positive cone.
    fn barrier(&self, x: &[f64]) -> Option<f64> {
        let chol = self.matrix(x).cholesky()?;
        let l = chol.l();
        let mut logdet = 0.0;
        for i in 0..self.n {
            let d = l[(i, i)];
            if d <= 0.0 || !d.is_finite() {
                return None;
            }
            logdet += 2.0 * d.ln();
        }
        Some(-logdet)
    }

    fn min_eigenvalue(&self, x: &[f64]) -> f64 {
        self.matrix(x).symmetric_eigenvalues().min()
    }

    /// Residual of `S / λ_min(S)`. The conditions are homogeneous, so this
    /// is scale-free and blows up near the boundary of the cone.
    fn normalized_residual(&self, x: &[f64], r: f64) -> f64 {
        let degree = match self.kind {
            ConditionKind::Balanced => 2 * (self.n / 2).saturating_sub(1),
            _ => 2,
        };
        let lambda = self.min_eigenvalue(x);
        if lambda <= 0.0 {
            return f64::INFINITY;
        }
        r / lambda.powi(degree as i32)
    }

    fn value(&self, x: &[f64], mu: f64) -> f64 {
        match self.barrier(x) {
            Some(b) => self.residual(x) + mu * b,
            None => f64::INFINITY,
        }
    }

    /// Central differences, falling back to one side at the cone boundary.
    fn gradient(&self, x: &[f64], mu: f64, f0: f64) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        let mut y = x.to_vec();
        for i in 0..x.len() {
            let h = 1e-6 * x[i].abs().max(1.0);
            y[i] = x[i] + h;
            let fp = self.value(&y, mu);
            y[i] = x[i] - h;
            let fm = self.value(&y, mu);
            y[i] = x[i];
            g[i] = match (fp.is_finite(), fm.is_finite()) {
                (true, true) => (fp - fm) / (2.0 * h),
                (true, false) => (fp - f0) / h,
                (false, true) => (f0 - fm) / h,
                (false, false) => 0.0,
            };
        }
        g
    }
}

struct Run {
    x: Vec<f64>,
    residual: f64,
    iterations: usize,
    found: bool,
    min_eigenvalue_seen: f64,
}

fn project(g: &mut [f64], t: &[f64]) {
    let tt: f64 = t.iter().map(|v| v * v).sum();
    if tt == 0.0 {
        return;
    }
    let c = g.iter().zip(t).map(|(a, b)| a * b).sum::<f64>() / tt;
    for (gi, ti) in g.iter_mut().zip(t) {
        *gi -= c * ti;
    }
}

fn run_seed(obj: &Objective, p: &MetricParameterization, config: &SearchConfig, seed: u64) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x_ref: Vec<f64> = p.reference_coords.iter().map(to_f64).collect();
    // tr S stays fixed, which rules out the trivial shrink towards zero
    let t: Vec<f64> = obj.basis.iter().map(|b| (0..obj.n).map(|i| b[i][i]).sum()).collect();
    let mut dir: Vec<f64> = (0..x_ref.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project(&mut dir, &t);
    let mut eps = 0.5;
    let mut x: Vec<f64> = x_ref.clone();
    for _ in 0..60 {
        let cand: Vec<f64> = x_ref.iter().zip(&dir).map(|(a, d)| a + eps * d).collect();
        if obj.barrier(&cand).is_some() {
            x = cand;
            break;
        }
        eps /= 2.0;
    }

    let mut step = config.initial_step;
    let mut min_seen = obj.min_eigenvalue(&x);
    let mut r = obj.residual(&x);
    for k in 0..config.max_iterations {
        if r <= config.tolerance {
            let rn = obj.normalized_residual(&x, r);
            if rn <= config.tolerance {
                return Run { x, residual: rn, iterations: k, found: true, min_eigenvalue_seen: min_seen };
            }
        }
        let mu = (config.barrier_initial * config.barrier_decay.powi(k as i32)).max(config.barrier_floor);
        let f0 = obj.value(&x, mu);
        let mut g = obj.gradient(&x, mu, f0);
        project(&mut g, &t);
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if gg == 0.0 || !gg.is_finite() {
            continue;
        }
        let mut accepted = false;
        for _ in 0..60 {
            let cand: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - step * b).collect();
            let f1 = obj.value(&cand, mu);
            if f1.is_finite() && f1 <= f0 - 1e-4 * step * gg {
                x = cand;
                accepted = true;
                break;
            }
            step /= 2.0;
        }
        if accepted {
            step = (step * 2.0).min(1e6);
            min_seen = min_seen.min(obj.min_eigenvalue(&x));
            r = obj.residual(&x);
        } else {
            step = config.initial_step;
        }
    }
    let rn = obj.normalized_residual(&x, r);
    let found = rn <= config.tolerance;
    Run { x, residual: rn, iterations: config.max_iterations, found, min_eigenvalue_seen: min_seen }
}

/// Multi-start projected gradient descent on `residual + μ(-log det S)`
/// over compatible metrics of fixed trace, followed by rationalisation and
/// an exact check when a witness is found.
pub fn search_metric(
    l: &LieAlgebra,
    j: &ComplexStructure,
    kind: ConditionKind,
    config: &SearchConfig,
) -> Result<SearchResult> {
    l.require_validated()?;
    if j.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: j.dim() });
    }
    if !is_integrable(l, j) {
        return Err(Error::NotIntegrable);
    }
    if config.seeds.is_empty() {
        return Err(Error::InvalidInput("empty seed list".into()));
    }
    let p = metric_parameterization(j);
    let obj = Objective::new(l, j, &p, kind);
    let mut best: Option<(u64, Run)> = None;
    for &seed in &config.seeds {
        let run = run_seed(&obj, &p, config, seed);
        let found = run.found;
        if best.as_ref().is_none_or(|(_, b)| run.residual < b.residual || found) {
            best = Some((seed, run));
        }
        if found {
            break;
        }
    }
    let (seed, run) = best.expect("at least one seed");
    let lambda = obj.min_eigenvalue(&run.x);
    let normalized_x: Vec<f64> = run.x.iter().map(|v| v / lambda).collect();
    let (exact_metric, exact_verified) = if run.found {
        match rationalize_witness(l, j, &p, &normalized_x, kind, &config.denominators) {
            Some(m) => (Some(m), true),
            None => (None, false),
        }
    } else {
        (None, false)
    };
    Ok(SearchResult {
        kind,
        status: if run.found { SearchStatus::Found } else { SearchStatus::NotFound },
        metric: p.combine_f64(&normalized_x),
        residual: run.residual,
        iterations: run.iterations,
        seed,
        min_eigenvalue: obj.min_eigenvalue(&normalized_x),
        min_eigenvalue_seen: run.min_eigenvalue_seen,
        exact_metric,
        exact_verified,
    })
}

/// Rounds the coordinates by continued fractions and, for the linear
/// conditions, projects exactly onto the solution space; returns the first
/// candidate that is positive definite and passes the exact check.
pub fn rationalize_witness(
    l: &LieAlgebra,
    j: &ComplexStructure,
    p: &MetricParameterization,
    x: &[f64],
    kind: ConditionKind,
    denominators: &[i64],
) -> Option<Metric> {
    let kernel = match kind {
        ConditionKind::Balanced => None,
        _ => Some(exact_linear_map(l, j, p, kind).nullspace()),
    };
    for &den in denominators {
        let xq: Vec<Scalar> = x.iter().map(|v| rationalize(*v, den)).collect();
        let xq = match &kernel {
            Some(k) => match project_exact(k, &xq) {
                Some(v) => v,
                None => continue,
            },
            None => xq,
        };
        let Ok(g) = Metric::new(p.combine(&xq)) else { continue };
        if classify_metric(l, &g, j).is_ok_and(|v| v.get(kind)) {
            return Some(g);
        }
    }
    None
}

/// Orthogonal projection (in coordinates) onto the span of `kernel`.
fn project_exact(kernel: &[Vector], x: &[Scalar]) -> Option<Vector> {
    if kernel.is_empty() {
        return None;
    }
    let n = QMatrix::from_columns(kernel);
    let nt = n.transpose();
    let c = nt.mul(&n).solve(&nt.mul_vec(x))?;
    Some(n.mul_vec(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{salamon, type_i_counterexample};

    #[test]
    fn parameterization_dimension_is_n_squared() {
        for (dim, pairs) in [(2, vec![(1, 2)]), (4, vec![(1, 2), (3, 4)]), (6, vec![(1, 2), (3, 5), (4, 6)])] {
            let j = ComplexStructure::from_pairs(dim, &pairs).unwrap();
            let p = metric_parameterization(&j);
            assert_eq!(p.len(), (dim / 2) * (dim / 2));
            for s in &p.basis {
                assert_eq!(j.matrix().transpose().mul(s).mul(j.matrix()), *s);
            }
            assert_eq!(p.combine(&p.reference_coords), p.reference);
        }
    }

    #[test]
    fn residual_examples() {
        let e = type_i_counterexample();
        let id = QMatrix::identity(6).to_f64();
        assert_eq!(residual(&e.algebra, &e.j, &id, ConditionKind::Skt).unwrap(), 0.0);
        assert!(residual(&e.algebra, &e.j, &id, ConditionKind::Balanced).unwrap() > 0.0);
        let ab = LieAlgebra::abelian(4);
        let j = ComplexStructure::standard(4);
        let s = vec![vec![2.0, 0.0, 0.5, 0.1], vec![0.0, 2.0, -0.1, 0.5], vec![0.5, -0.1, 1.0, 0.0], vec![0.1, 0.5, 0.0, 1.0]];
        for kind in ConditionKind::ALL {
            assert_eq!(residual(&ab, &j, &s, kind).unwrap(), 0.0);
        }
        let bad = vec![vec![1.0, 0.5, 0.0, 0.0], vec![0.5, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]];
        assert!(matches!(residual(&ab, &j, &bad, ConditionKind::Kahler), Err(Error::IncompatibleMetric(_))));
    }

    #[test]
    fn finite_differences_match_analytic_gradient() {
        let l = salamon("(0,21,0,43)").unwrap();
        let j = ComplexStructure::standard(4);
        let p = metric_parameterization(&j);
        for kind in [ConditionKind::Kahler, ConditionKind::Skt] {
            let obj = Objective::new(&l, &j, &p, kind);
            let a = obj.linear.clone().unwrap();
            let x: Vec<f64> = p.reference_coords.iter().map(|v| to_f64(v) + 0.1).collect();
            let mu = 0.01;
            let fd = obj.gradient(&x, mu, obj.value(&x, mu));
            let s_inv = obj.matrix(&x).try_inverse().unwrap();
            for i in 0..x.len() {
                let ax: Vec<f64> = a.iter().map(|r| r.iter().zip(&x).map(|(u, v)| u * v).sum()).collect();
                let dres: f64 = 2.0 * a.iter().zip(&ax).map(|(r, v)| r[i] * v).sum::<f64>();
                let si = DMatrix::from_fn(4, 4, |r, c| obj.basis[i][r][c]);
                let dbar = -(s_inv.clone() * si).trace();
                assert!((fd[i] - (dres + mu * dbar)).abs() < 1e-6, "{kind} {i}");
            }
        }
    }

    #[test]
    fn finds_kahler_witness_and_verifies_it() {
        let l = salamon("(-25,15,-46,36,0,0)").unwrap();
        let j = ComplexStructure::standard(6);
        let r = search_metric(&l, &j, ConditionKind::Kahler, &SearchConfig::default()).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert!(r.residual < 1e-9 && r.min_eigenvalue > 0.0 && r.min_eigenvalue_seen > 0.0);
        assert!(r.exact_verified);
        assert!(classify_metric(&l, r.exact_metric.as_ref().unwrap(), &j).unwrap().kahler);
    }

    #[test]
    fn deterministic() {
        let e = type_i_counterexample();
        let config = SearchConfig { seeds: vec![3, 4], max_iterations: 300, ..SearchConfig::default() };
        let a = search_metric(&e.algebra, &e.j, ConditionKind::Balanced, &config).unwrap();
        let b = search_metric(&e.algebra, &e.j, ConditionKind::Balanced, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seed_lists() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("5, 7").unwrap(), vec![5, 7]);
        assert!(parse_seeds("x").is_err());
    }
}
