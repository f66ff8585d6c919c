//! Alternating forms on `R^n` in the dual basis `e^1, …, e^n`.
//!
//! A monomial `e^{i_1 … i_k}` (increasing indices) is encoded as a bitmask
//! with bit `i-1` set for each index `i`. Evaluation uses the determinant
//! convention, so `e^{12}(e_1, e_2) = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Subspace, Vector};
use crate::scalar::{format_scalar, Scalar};

/// Coefficient rings for forms: exact rationals or `f64`.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_scalar(s: &Scalar) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coeff for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn to_f64(&self) -> f64 {
        crate::scalar::to_f64(self)
    }
}

impl Coeff for f64 {
    fn from_scalar(s: &Scalar) -> Self {
        crate::scalar::to_f64(s)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

pub type Mask = u32;

/// Increasing 0-based indices set in a mask.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}`; zero if they overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (x in A, y in B) with x > y
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (y + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed<T: Coeff>(c: T, sign: i32) -> T {
    if sign < 0 {
        -c
    } else {
        c
    }
}

/// An alternating `k`-form with coefficients in `T`.
#[derive(Clone, PartialEq)]
pub struct KForm<T: Coeff = Scalar> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Mask, T>,
}

impl Eq for KForm<Scalar> {}

impl<T: Coeff> KForm<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= 32, "forms support at most 32 dimensions");
        Self { dim, degree, terms: BTreeMap::new() }
    }

    /// The constant 0-form `1`.
    pub fn one(dim: usize) -> Self {
        let mut f = Self::zero(dim, 0);
        f.terms.insert(0, T::one());
        f
    }

    /// `c · e^{i_1} ∧ … ∧ e^{i_k}` with 1-based indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: T) -> Self {
        let mut f = Self::zero(dim, indices.len());
        let mut mask: Mask = 0;
        let mut sign = 1;
        for &i in indices {
            assert!(i >= 1 && i <= dim, "index {i} out of range for dimension {dim}");
            let bit = 1 << (i - 1);
            sign *= wedge_sign(mask, bit);
            mask |= bit;
        }
        if sign != 0 {
            f.add_term(mask, signed(c, sign));
        }
        f
    }

    /// `Σ c_i e^i` from a coefficient vector.
    pub fn one_form(coeffs: &[T]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Mask, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e^{i_1 … i_k}` for increasing 1-based indices.
    pub fn coefficient(&self, indices: &[usize]) -> T {
        let probe = Self::monomial(self.dim, indices, T::one());
        match probe.terms.iter().next() {
            Some((mask, s)) => self.terms.get(mask).cloned().map_or_else(T::zero, |c| c * s.clone()),
            None => T::zero(),
        }
    }

    pub fn add_term(&mut self, mask: Mask, c: T) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(mask, sum);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms live on different spaces");
        assert_eq!(self.degree, other.degree, "forms have different degrees");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, t: &T) -> Self {
        self.map_coeffs(|c| c.clone() * t.clone())
    }

    fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "forms live on different spaces");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = wedge_sign(*a, *b);
                if s != 0 {
                    out.add_term(a | b, signed(ca.clone() * cb.clone(), s));
                }
            }
        }
        out
    }

    /// `self ∧ … ∧ self` (`k` factors); `k = 0` gives the constant 1.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// Value on `k` vectors (determinant convention).
    pub fn evaluate(&self, vectors: &[Vec<T>]) -> Result<T> {
        if vectors.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let mut total = T::zero();
        for (mask, c) in &self.terms {
            let rows = mask_indices(*mask);
            let minor: Vec<Vec<T>> =
                rows.iter().map(|&r| vectors.iter().map(|v| v[r].clone()).collect()).collect();
            total = total + c.clone() * determinant(&minor);
        }
        Ok(total)
    }

    /// `(M^*β)(x_1, …) = β(Mx_1, …)` for the matrix with the given rows.
    pub fn pullback_rows(&self, rows: &[Vec<T>]) -> Self {
        assert_eq!(rows.len(), self.dim);
        let pulled: Vec<KForm<T>> = rows.iter().map(|r| Self::one_form(r)).collect();
        let mut out = Self::zero(self.dim, self.degree);
        for (mask, c) in &self.terms {
            let mut acc = Self::one(self.dim);
            for i in mask_indices(*mask) {
                acc = acc.wedge(&pulled[i]);
                if acc.is_zero() {
                    break;
                }
            }
            for (m, v) in acc.terms {
                out.add_term(m, v * c.clone());
            }
        }
        out
    }

    pub fn pullback(&self, m: &QMatrix) -> Self {
        let rows: Vec<Vec<T>> =
            m.to_rows().iter().map(|r| r.iter().map(T::from_scalar).collect()).collect();
        self.pullback_rows(&rows)
    }

    /// Sum of squared coefficients.
    pub fn norm_sq_f64(&self) -> f64 {
        self.terms.values().map(|c| c.to_f64().powi(2)).sum()
    }

    pub fn to_f64(&self) -> KForm<f64> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, c.to_f64());
        }
        out
    }
}

impl KForm<Scalar> {
    /// `(J^*β)(x_1, …, x_k) = β(Jx_1, …, Jx_k)`.
    pub fn j_pullback(&self, j: &QMatrix) -> Self {
        self.pullback(j)
    }
}

fn determinant<T: Coeff>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        n => {
            // Laplace expansion along the first row
            let mut total = T::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][col].clone() * determinant(&minor);
                total = if col % 2 == 0 { total + term } else { total - term };
            }
            total
        }
    }
}

impl fmt::Display for KForm<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in &self.terms {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            if !abs.is_one() || *mask == 0 {
                write!(f, "{}", format_scalar(&abs))?;
            }
            if *mask != 0 {
                let idx: Vec<String> = mask_indices(*mask).iter().map(|i| (i + 1).to_string()).collect();
                let sep = if self.dim > 9 { "," } else { "" };
                write!(f, "e^{{{}}}", idx.join(sep))?;
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for KForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let idx: Vec<String> = mask_indices(*m).iter().map(|i| (i + 1).to_string()).collect();
                format!("{c:?}·e^{{{}}}", idx.join(","))
            })
            .collect();
        write!(f, "KForm[{}; deg {}]({})", self.dim, self.degree, parts.join(" + "))
    }
}

/// The Chevalley–Eilenberg differential of a Lie algebra, precomputed on
/// the dual basis: `de^i(e_j, e_k) = -e^i([e_j, e_k])`.
#[derive(Clone, Debug)]
pub struct Differential<T: Coeff = Scalar> {
    dim: usize,
    // de[i] = list of (pair mask, coefficient)
    de: Vec<Vec<(Mask, T)>>,
}

impl<T: Coeff> Differential<T> {
    pub fn new(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut de = vec![Vec::new(); n];
        for j in 0..n {
            for k in j + 1..n {
                for (i, c) in l.basis_bracket(j, k).iter().enumerate() {
                    if !c.is_zero() {
                        de[i].push(((1 << j) | (1 << k), T::from_scalar(&-c.clone())));
                    }
                }
            }
        }
        Self { dim: n, de }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d(e^{i_1} ∧ … ∧ e^{i_k}) = Σ_p (-1)^p e^{i_1} ∧ … ∧ de^{i_p} ∧ … ∧ e^{i_k}`.
    pub fn apply(&self, form: &KForm<T>) -> KForm<T> {
        assert_eq!(form.dim, self.dim, "form lives on a different space");
        let mut out = KForm::zero(self.dim, form.degree + 1);
        if form.degree >= self.dim {
            return out;
        }
        for (mask, c) in &form.terms {
            for (pos, ip) in mask_indices(*mask).into_iter().enumerate() {
                let rest = mask & !(1 << ip);
                let before = rest & ((1 << ip) - 1);
                let after = rest & !before;
                for (pair, coeff) in &self.de[ip] {
                    if rest & pair != 0 {
                        continue;
                    }
                    let j = pair.trailing_zeros();
                    let k = 31 - pair.leading_zeros();
                    let inversions = pos as u32
                        + (before >> (j + 1)).count_ones()
                        + (before >> (k + 1)).count_ones()
                        + (after & ((1 << j) - 1)).count_ones()
                        + (after & ((1 << k) - 1)).count_ones();
                    let value = c.clone() * coeff.clone();
                    out.add_term(rest | pair, if inversions % 2 == 0 { value } else { -value });
                }
            }
        }
        out
    }
}

/// `dα` for a form on the underlying space of `l`.
pub fn ce_differential(l: &LieAlgebra, form: &KForm<Scalar>) -> Result<KForm<Scalar>> {
    if form.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: form.dim() });
    }
    Ok(Differential::new(l).apply(form))
}

/// A two-form on `R^n` with values in a subspace `target`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorValuedTwoForm {
    dim: usize,
    target: Subspace,
    // values[i * dim + j] = ω(e_i, e_j)
    values: Vec<Vector>,
}

impl VectorValuedTwoForm {
    pub fn zero(target: Subspace) -> Self {
        let dim = target.ambient();
        Self { dim, target, values: vec![linalg::zero_vector(dim); dim * dim] }
    }

    /// Builds ω from its values `ω(e_i, e_j)` for `i < j` (0-indexed);
    /// fails if a value leaves `target`.
    pub fn from_fn(target: Subspace, mut f: impl FnMut(usize, usize) -> Vector) -> Result<Self> {
        let mut omega = Self::zero(target);
        let n = omega.dim;
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                }
                if !omega.target.contains(&v) {
                    return Err(Error::InvalidPreShear(format!(
                        "value on (e{}, e{}) is outside the target",
                        i + 1,
                        j + 1
                    )));
                }
                omega.values[j * n + i] = v.iter().map(|x| -x).collect();
                omega.values[i * n + j] = v;
            }
        }
        Ok(omega)
    }

    /// `ω = -[·,·]` with target the derived algebra.
    pub fn from_bracket(l: &LieAlgebra) -> Self {
        let target = l.derived_algebra();
        Self::from_fn(target, |i, j| l.basis_bracket(i, j).iter().map(|x| -x).collect())
            .expect("brackets lie in the derived algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// Same values, smaller or larger target; fails if a value leaves it.
    pub fn with_target(&self, target: Subspace) -> Result<Self> {
        Self::from_fn(target, |i, j| self.basis_value(i, j).clone())
    }

    pub fn basis_value(&self, i: usize, j: usize) -> &Vector {
        &self.values[i * self.dim + j]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if i == j || yj.is_zero() {
                    continue;
                }
                linalg::axpy(&mut out, &(xi * yj), self.basis_value(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| linalg::is_zero(v))
    }

    /// Span of all values.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.dim, self.values.iter().cloned())
    }

    /// Scalar two-forms `ω^a` with `ω = Σ_a ω^a b_a` over the canonical basis
    /// `b_a` of the target.
    pub fn component_forms(&self) -> Vec<KForm<Scalar>> {
        let n = self.dim;
        let mut comps = vec![KForm::zero(n, 2); self.target.dim()];
        for i in 0..n {
            for j in i + 1..n {
                let coords = self.target.coordinates(self.basis_value(i, j)).expect("value in target");
                for (a, c) in coords.into_iter().enumerate() {
                    comps[a].add_term((1 << i) | (1 << j), c);
                }
            }
        }
        comps
    }
}

impl fmt::Debug for VectorValuedTwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorValuedTwoForm(target {:?}, {:?})", self.target, self.component_forms())
    }
}
