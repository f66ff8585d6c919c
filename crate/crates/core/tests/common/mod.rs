//! Brute-force oracles, independent of the bitmask form machinery: forms are
//! maps from sorted index tuples to coefficients, the differential comes from
//! the evaluation formula and wedges from shuffles.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hermlie::algebra::LieAlgebra;
use hermlie::forms::KForm;
use hermlie::hermitian::{ComplexStructure, Metric, Verdicts};
use hermlie::linalg::{unit, QMatrix, Vector};
use hermlie::scalar::Scalar;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, Scalar>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn det(m: &[Vec<Scalar>]) -> Scalar {
    // permutation expansion; sizes stay tiny
    let n = m.len();
    let mut total = Scalar::zero();
    for p in permutations(n) {
        let mut term = Scalar::from_integer(sign(&p).into());
        for (r, &c) in p.iter().enumerate() {
            term *= &m[r][c];
        }
        total += term;
    }
    total
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn eval(&self, vectors: &[Vector]) -> Scalar {
        let mut total = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let minor: Vec<Vec<Scalar>> = idx.iter().map(|&r| vectors.iter().map(|v| v[r].clone()).collect()).collect();
            total += c * det(&minor);
        }
        total
    }

    /// Rebuilds a form from its values on increasing basis tuples.
    fn from_values(dim: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut out = Self::zero(dim, degree);
        for s in subsets(dim, degree) {
            let v = f(&s);
            if !v.is_zero() {
                out.coeffs.insert(s, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }

    pub fn from_kform(k: &KForm) -> Self {
        Self::from_values(k.dim(), k.degree(), |s| {
            let one_based: Vec<usize> = s.iter().map(|i| i + 1).collect();
            k.coefficient(&one_based)
        })
    }

    pub fn matches(&self, k: &KForm) -> bool {
        *self == Self::from_kform(k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            *out.coeffs.entry(k.clone()).or_insert_with(Scalar::zero) += v;
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    /// Sum over shuffles of the index set.
    pub fn wedge(&self, other: &Self) -> Self {
        let (p, q) = (self.degree, other.degree);
        Self::from_values(self.dim, p + q, |set| {
            let mut total = Scalar::zero();
            for a in subsets(set.len(), p) {
                let b: Vec<usize> = (0..set.len()).filter(|i| !a.contains(i)).collect();
                let order: Vec<usize> = a.iter().chain(&b).copied().collect();
                let ia: Vec<usize> = a.iter().map(|&i| set[i]).collect();
                let ib: Vec<usize> = b.iter().map(|&i| set[i]).collect();
                let ca = self.coeffs.get(&ia).cloned().unwrap_or_else(Scalar::zero);
                let cb = other.coeffs.get(&ib).cloned().unwrap_or_else(Scalar::zero);
                if !ca.is_zero() && !cb.is_zero() {
                    total += Scalar::from_integer(sign(&order).into()) * ca * cb;
                }
            }
            total
        })
    }

    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, 0);
        out.coeffs.insert(vec![], Scalar::one());
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// `dβ(x_0, …, x_k) = Σ_{a<b} (-1)^{a+b} β([x_a, x_b], x_0, …, x̂_a, …, x̂_b, …)`.
    pub fn d(&self, l: &LieAlgebra) -> Self {
        let n = self.dim;
        Self::from_values(n, self.degree + 1, |set| {
            let xs: Vec<Vector> = set.iter().map(|&i| unit(n, i)).collect();
            let mut total = Scalar::zero();
            for a in 0..xs.len() {
                for b in a + 1..xs.len() {
                    let mut args = vec![l.bracket(&xs[a], &xs[b])];
                    args.extend(xs.iter().enumerate().filter(|(i, _)| *i != a && *i != b).map(|(_, v)| v.clone()));
                    let v = self.eval(&args);
                    if (a + b) % 2 == 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
            }
            total
        })
    }

    /// `(M^*β)(x, …) = β(Mx, …)`.
    pub fn pullback(&self, m: &QMatrix) -> Self {
        let n = self.dim;
        Self::from_values(n, self.degree, |set| {
            let args: Vec<Vector> = set.iter().map(|&i| m.mul_vec(&unit(n, i))).collect();
            self.eval(&args)
        })
    }
}

/// `σ(x, y) = g(Jx, y)` from the definition.
pub fn sigma(g: &Metric, j: &ComplexStructure) -> Form {
    let n = g.dim();
    Form::from_values(n, 2, |s| g.inner(&j.apply(&unit(n, s[0])), &unit(n, s[1])))
}

pub struct OracleForms {
    pub d_sigma: Form,
    pub d_sigma_power: Form,
    pub d_j_d_sigma: Form,
}

pub fn oracle_forms(l: &LieAlgebra, g: &Metric, j: &ComplexStructure) -> OracleForms {
    let s = sigma(g, j);
    let n = l.dim() / 2;
    let d_sigma = s.d(l);
    let d_sigma_power = s.power(n - 1).d(l);
    let d_j_d_sigma = d_sigma.pullback(j.matrix()).d(l);
    OracleForms { d_sigma, d_sigma_power, d_j_d_sigma }
}

pub fn oracle_verdicts(l: &LieAlgebra, g: &Metric, j: &ComplexStructure) -> Verdicts {
    let f = oracle_forms(l, g, j);
    Verdicts { kahler: f.d_sigma.is_zero(), balanced: f.d_sigma_power.is_zero(), skt: f.d_j_d_sigma.is_zero() }
}

/// Jacobi identity on all basis triples, straight from the bracket.
pub fn jacobi_holds(l: &LieAlgebra) -> bool {
    let n = l.dim();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (unit(n, a), unit(n, b), unit(n, c));
                let t1 = l.bracket(&x, &l.bracket(&y, &z));
                let t2 = l.bracket(&y, &l.bracket(&z, &x));
                let t3 = l.bracket(&z, &l.bracket(&x, &y));
                if (0..n).any(|i| !(t1[i].clone() + &t2[i] + &t3[i]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Nijenhuis tensor on all basis pairs.
pub fn nijenhuis_vanishes(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    let n = l.dim();
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (unit(n, a), unit(n, b));
            let (jx, jy) = (j.apply(&x), j.apply(&y));
            let t1 = l.bracket(&jx, &jy);
            let t2 = j.apply(&l.bracket(&jx, &y));
            let t3 = j.apply(&l.bracket(&x, &jy));
            let t4 = l.bracket(&x, &y);
            if (0..n).any(|i| !(t1[i].clone() - &t2[i] - &t3[i] - &t4[i]).is_zero()) {
                return false;
            }
        }
    }
    true
}
