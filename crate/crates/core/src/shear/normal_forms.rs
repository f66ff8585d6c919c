//! Bracket tables realising the structure theorems for Kähler, SKT and
//! non-pure six-dimensional two-step solvable algebras.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::KForm;
use crate::hermitian::{classify_metric, hermitian_decomposition, is_integrable, ComplexStructure, Metric};
use crate::linalg::{self, QMatrix, Subspace, Vector};
use crate::scalar::{int, q, Cplx, Scalar};

fn violated(msg: impl Into<String>) -> Error {
    Error::ParameterConstraintViolated(msg.into())
}

/// Dense antisymmetric bracket table filled pair by pair.
struct Table {
    dim: usize,
    values: Vec<Vector>,
}

impl Table {
    fn new(dim: usize) -> Self {
        Self { dim, values: vec![linalg::zero_vector(dim); dim * dim] }
    }

    /// `[e_p, e_q] += v`
    fn add(&mut self, p: usize, q: usize, v: &[Scalar]) {
        let d = self.dim;
        self.values[p * d + q] = linalg::add(&self.values[p * d + q], v);
        self.values[q * d + p] = linalg::sub(&self.values[q * d + p], v);
    }

    /// `[e_p, e_q] += c·e_k + d·e_{k+1}` for a complex coefficient.
    fn add_complex(&mut self, p: usize, q: usize, k: usize, c: &Cplx) {
        let mut v = linalg::zero_vector(self.dim);
        v[k] = c.re.clone();
        v[k + 1] = c.im.clone();
        self.add(p, q, &v);
    }

    fn add_scaled(&mut self, p: usize, q: usize, k: usize, c: &Scalar) {
        let mut v = linalg::zero_vector(self.dim);
        v[k] = c.clone();
        self.add(p, q, &v);
    }

    fn build(self) -> LieAlgebra {
        let d = self.dim;
        LieAlgebra::from_fn(d, |i, j| self.values[i * d + j].clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KahlerKind {
    I,
    II,
    III,
    General,
}

/// Parameters of the Kähler normal form on the orthonormal basis
/// `Y_1, JY_1, …, Y_s, JY_s, X_1, JX_1, …, X_r, JX_r, Z_1, JZ_1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerNormalForm {
    pub kind: KahlerKind,
    pub s: usize,
    pub r: usize,
    pub ell: usize,
    /// `alpha[j][k] = α_j(X_k)`
    pub alpha: Vec<Vector>,
    /// `beta[j]` lists `β_j` on `Z_1, JZ_1, …, Z_ℓ, JZ_ℓ`.
    pub beta: Vec<Vector>,
    pub lambda: Vector,
}

impl KahlerNormalForm {
    pub fn dim(&self) -> usize {
        2 * (self.s + self.r + self.ell)
    }

    fn y(&self, j: usize) -> usize {
        2 * j
    }

    fn x(&self, k: usize) -> usize {
        2 * (self.s + k)
    }

    fn z(&self, i: usize) -> usize {
        2 * (self.s + self.r) + i
    }

    fn check_shapes(&self) -> Result<()> {
        let bad = |m: String| Err(violated(m));
        if self.alpha.len() != self.s || self.alpha.iter().any(|a| a.len() != self.r) {
            return bad(format!("alpha must be {}×{}", self.s, self.r));
        }
        if self.beta.len() != self.s || self.beta.iter().any(|b| b.len() != 2 * self.ell) {
            return bad(format!("beta must be {}×{}", self.s, 2 * self.ell));
        }
        if self.lambda.len() != self.r {
            return bad(format!("lambda must have {} entries", self.r));
        }
        Ok(())
    }

    /// `g′` when every parameter is non-vanishing: all `Y_j, JY_j` and all
    /// `X_k`.
    pub fn nominal_derived(&self) -> Subspace {
        let mut idx: Vec<usize> = (0..2 * self.s).collect();
        idx.extend((0..self.r).map(|k| self.x(k)));
        Subspace::coordinate(self.dim(), &idx)
    }

    pub fn validate(&self) -> Result<()> {
        self.check_shapes()?;
        let alpha_nonzero = self.alpha.iter().all(|a| !linalg::is_zero(a));
        let beta_nonzero = self.beta.iter().all(|b| !linalg::is_zero(b));
        let lambda_nonzero = self.lambda.iter().all(|l| !l.is_zero());
        let need = |ok: bool, m: &str| if ok { Ok(()) } else { Err(violated(m)) };
        match self.kind {
            KahlerKind::I => {
                need(self.s == 0, "type I requires s = 0")?;
                need(self.r >= 1, "type I requires r ≥ 1")?;
                need(lambda_nonzero, "every λ_k must be non-zero")
            }
            KahlerKind::II => {
                need(self.r == 0, "type II requires r = 0")?;
                need(self.s >= 1 && self.ell >= 1, "type II requires s, ℓ ≥ 1")?;
                need(beta_nonzero, "every β_j must be non-zero")
            }
            KahlerKind::III => {
                need(self.ell == 0, "type III requires ℓ = 0")?;
                need(self.r >= 1 && self.s >= 1, "type III requires r, s ≥ 1")?;
                need(alpha_nonzero, "every α_j must be non-zero")?;
                need(lambda_nonzero, "every λ_k must be non-zero")
            }
            KahlerKind::General => {
                let reached = self.alpha.iter().zip(&self.beta).all(|(a, b)| !linalg::is_zero(a) || !linalg::is_zero(b));
                need(reached, "each plane Y_j needs a non-zero α_j or β_j")?;
                need(lambda_nonzero, "every λ_k must be non-zero")
            }
        }
    }
}

/// Checks the parameters, then builds the algebra with the standard
/// complex structure and the identity metric.
pub fn kahler_normal_form(p: &KahlerNormalForm) -> Result<(LieAlgebra, Metric, ComplexStructure)> {
    p.validate()?;
    kahler_normal_form_unchecked(p)
}

/// Builds the bracket table without the non-vanishing checks.
pub fn kahler_normal_form_unchecked(p: &KahlerNormalForm) -> Result<(LieAlgebra, Metric, ComplexStructure)> {
    p.check_shapes()?;
    let n = p.dim();
    let mut t = Table::new(n);
    for j in 0..p.s {
        let (y, jy) = (p.y(j), p.y(j) + 1);
        for k in 0..p.r {
            let jx = p.x(k) + 1;
            let a = &p.alpha[j][k];
            // [JX, Y] = α JY, [JX, JY] = -α Y
            t.add_scaled(jx, y, jy, a);
            t.add_scaled(jx, jy, y, &-a);
        }
        for i in 0..2 * p.ell {
            let z = p.z(i);
            let b = &p.beta[j][i];
            t.add_scaled(z, y, jy, b);
            t.add_scaled(z, jy, y, &-b);
        }
    }
    for k in 0..p.r {
        t.add_scaled(p.x(k) + 1, p.x(k), p.x(k), &p.lambda[k]);
    }
    let l = t.build();
    l.require_validated()?;
    Ok((l, Metric::identity(n), ComplexStructure::standard(n)))
}

/// A complex-valued two-form `re + i·im` on `V_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexForm {
    pub re: KForm,
    pub im: KForm,
}

impl ComplexForm {
    pub fn new(re: KForm, im: KForm) -> Self {
        Self { re, im }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(KForm::zero(dim, 2), KForm::zero(dim, 2))
    }

    /// The `(2,0)`-form with the given real part; the imaginary part is
    /// `-re(J·,·)`. Only meaningful when `re` is `J`-anti-invariant.
    pub fn type_20_from_real(re: KForm) -> Self {
        let n = re.dim();
        let j = ComplexStructure::standard(n);
        let mut im = KForm::zero(n, 2);
        for a in 0..n {
            for b in a + 1..n {
                let v = eval2(&re, &j.apply(&linalg::unit(n, a)), &linalg::unit(n, b));
                im.add_term((1 << a) | (1 << b), -v);
            }
        }
        Self::new(re, im)
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        Self::new(self.re.scale(t), self.im.scale(t))
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Cplx {
        Cplx::new(eval2(&self.re, x, y), eval2(&self.im, x, y))
    }

    /// Both parts invariant under `(J·, J·)`.
    pub fn is_type_11(&self) -> bool {
        let j = ComplexStructure::standard(self.dim());
        j.pullback(&self.re) == self.re && j.pullback(&self.im) == self.im
    }

    /// `β(JZ, W) = i·β(Z, W)`.
    pub fn is_type_20(&self) -> bool {
        let n = self.dim();
        let j = ComplexStructure::standard(n);
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = self.eval(&j.apply(&linalg::unit(n, a)), &linalg::unit(n, b));
                let rhs = self.eval(&linalg::unit(n, a), &linalg::unit(n, b));
                lhs == Cplx::new(-rhs.im.clone(), rhs.re)
            })
        })
    }

    /// The real four-form `β∧β̄ = re∧re + im∧im`.
    pub fn wedge_conj(&self) -> KForm {
        self.re.wedge(&self.re).add(&self.im.wedge(&self.im))
    }
}

fn eval2(form: &KForm, x: &[Scalar], y: &[Scalar]) -> Scalar {
    form.evaluate(&[x.to_vec(), y.to_vec()]).expect("two vectors of matching length")
}

/// Parameters of the SKT normal form of pure type II on the orthonormal
/// basis `Y_1, JY_1, …, Y_s, JY_s, Z_1, JZ_1, …, Z_ℓ, JZ_ℓ`. The first
/// `m = alpha.len()` planes are rotated by `α_j`; the remaining ones are
/// reached through `φ_k + ψ_k` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIINormalForm {
    pub s: usize,
    pub ell: usize,
    /// One-forms on `V_J`, in the basis `Z_1, JZ_1, …`.
    pub alpha: Vec<Vector>,
    pub z: Vec<Cplx>,
    /// `(1,1)`-forms, one per `k > m`.
    pub phi: Vec<ComplexForm>,
    /// `(2,0)`-forms, one per `k > m`.
    pub psi: Vec<ComplexForm>,
}

impl TypeIINormalForm {
    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn dim(&self) -> usize {
        2 * (self.s + self.ell)
    }

    fn check_shapes(&self) -> Result<()> {
        let v = 2 * self.ell;
        let m = self.m();
        if self.ell == 0 || self.s == 0 {
            return Err(violated("type II needs s, ℓ ≥ 1"));
        }
        if m > self.s {
            return Err(violated("more one-forms α_j than planes Y_j"));
        }
        if self.z.len() != m || self.alpha.iter().any(|a| a.len() != v) {
            return Err(violated(format!("need {m} one-forms of length {v} and {m} coefficients z_j")));
        }
        if self.phi.len() != self.s - m || self.psi.len() != self.s - m {
            return Err(violated(format!("need {} forms φ_k and ψ_k", self.s - m)));
        }
        if self.phi.iter().chain(&self.psi).any(|f| f.dim() != v || f.re.degree() != 2 || f.im.degree() != 2) {
            return Err(violated(format!("φ_k, ψ_k must be two-forms on a {v}-dimensional space")));
        }
        Ok(())
    }

    /// `Σ φ_k∧φ̄_k − ψ_k∧ψ̄_k`
    pub fn constraint_form(&self) -> KForm {
        let mut out = KForm::zero(2 * self.ell, 4);
        for (phi, psi) in self.phi.iter().zip(&self.psi) {
            out = out.add(&phi.wedge_conj()).sub(&psi.wedge_conj());
        }
        out
    }

    /// Whether the real and imaginary parts of all `φ_k + ψ_k` are
    /// linearly independent over the reals.
    pub fn forms_independent(&self) -> bool {
        let v = 2 * self.ell;
        let masks: Vec<u32> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (1u32 << a) | (1u32 << b))).collect();
        let rows: Vec<Vector> = self
            .phi
            .iter()
            .zip(&self.psi)
            .flat_map(|(p, s)| {
                let sum = p.add(s);
                [sum.re, sum.im]
            })
            .map(|f| masks.iter().map(|mk| f.terms().get(mk).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect();
        rows.is_empty() || QMatrix::from_rows(rows.clone()).rank() == rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.check_shapes()?;
        if self.alpha.iter().any(|a| linalg::is_zero(a)) {
            return Err(violated("every α_j must be non-zero"));
        }
        if !self.phi.iter().all(ComplexForm::is_type_11) {
            return Err(violated("φ_k must be of type (1,1)"));
        }
        if !self.psi.iter().all(ComplexForm::is_type_20) {
            return Err(violated("ψ_k must be of type (2,0)"));
        }
        if !self.constraint_form().is_zero() {
            return Err(violated("Σ φ_k∧φ̄_k − ψ_k∧ψ̄_k ≠ 0"));
        }
        if !self.forms_independent() {
            return Err(violated("the forms φ_k + ψ_k are not linearly independent"));
        }
        Ok(())
    }
}

pub fn skt_type_ii_normal_form(p: &TypeIINormalForm) -> Result<(LieAlgebra, Metric, ComplexStructure)> {
    p.validate()?;
    skt_type_ii_normal_form_unchecked(p)
}

/// Builds the bracket table without the constraint checks.
pub fn skt_type_ii_normal_form_unchecked(p: &TypeIINormalForm) -> Result<(LieAlgebra, Metric, ComplexStructure)> {
    p.check_shapes()?;
    let n = p.dim();
    let v = 2 * p.ell;
    let jv = ComplexStructure::standard(v);
    let zi = |i: usize| 2 * p.s + i;
    let mut t = Table::new(n);
    let mut pair_forms: Vec<(usize, ComplexForm)> = Vec::new();
    for (j, (alpha, zj)) in p.alpha.iter().zip(&p.z).enumerate() {
        let (y, jy) = (2 * j, 2 * j + 1);
        for i in 0..v {
            t.add_scaled(zi(i), y, jy, &alpha[i]);
            t.add_scaled(zi(i), jy, y, &-alpha[i].clone());
        }
        // z_j (α_j ∧ J^*α_j)
        let a = KForm::one_form(alpha);
        let ja = KForm::one_form(&jv.matrix().transpose().mul_vec(alpha));
        let w = a.wedge(&ja);
        pair_forms.push((y, ComplexForm::new(w.scale(&zj.re), w.scale(&zj.im))));
    }
    for (k, (phi, psi)) in p.phi.iter().zip(&p.psi).enumerate() {
        pair_forms.push((2 * (p.m() + k), phi.add(psi)));
    }
    for (y, form) in &pair_forms {
        for a in 0..v {
            for b in a + 1..v {
                let c = form.eval(&linalg::unit(v, a), &linalg::unit(v, b));
                if !c.is_zero() {
                    t.add_complex(zi(a), zi(b), *y, &c);
                }
            }
        }
    }
    let l = t.build();
    l.require_validated()?;
    Ok((l, Metric::identity(n), ComplexStructure::standard(n)))
}

/// The family `(25,−15,46,−36,0,0)`.
pub fn skt_two_rotation_data() -> TypeIINormalForm {
    TypeIINormalForm {
        s: 2,
        ell: 1,
        alpha: vec![vec![int(-1), int(0)], vec![int(0), int(-1)]],
        z: vec![Cplx::default(), Cplx::default()],
        phi: vec![],
        psi: vec![],
    }
}

/// The family `(25,−15,λ.45,−λ.35,0,0)`.
pub fn skt_one_rotation_data(lambda: &Scalar) -> TypeIINormalForm {
    TypeIINormalForm {
        s: 2,
        ell: 1,
        alpha: vec![vec![int(-1), int(0)], vec![-lambda.clone(), int(0)]],
        z: vec![Cplx::default(), Cplx::default()],
        phi: vec![],
        psi: vec![],
    }
}

/// Parameters of the six-dimensional non-pure SKT bracket table on the
/// basis `Y, JY, X, JX, Z, JZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixDNonPureData {
    pub b: [Scalar; 4],
    pub delta: [bool; 3],
    pub z: [Cplx; 3],
    pub w: [Cplx; 6],
}

impl SixDNonPureData {
    /// `b = (b_0, 0, 0, 0)` with `z_0 = -b_0/2`, `δ_0 = 1`, everything else zero.
    pub fn simple(b0: Scalar) -> Self {
        Self {
            z: [Cplx::real(-&b0 * q(1, 2)), Cplx::default(), Cplx::default()],
            b: [b0, Scalar::zero(), Scalar::zero(), Scalar::zero()],
            delta: [true, false, false],
            w: Default::default(),
        }
    }

    pub fn check_constraints(&self) -> Result<()> {
        let b = &self.b;
        if b.iter().all(Zero::is_zero) {
            return Err(violated("b must not vanish"));
        }
        if !(&b[0] * &b[3] + &b[1] * &b[1] + &b[2] * &b[2]).is_zero() {
            return Err(violated("b_0 b_3 + b_1² + b_2² ≠ 0"));
        }
        for i in 0..3 {
            let expected = if self.delta[i] { -&b[i] * q(1, 2) } else { Scalar::zero() };
            if self.z[i].re != expected {
                return Err(violated(format!("Re z_{i} must equal -δ_{i} b_{i}/2")));
            }
        }
        if self.z[0].is_zero() && !(b[0].is_zero() && b[1].is_zero() && b[2].is_zero()) {
            return Err(violated("z_0 = 0 forces b_0 = b_1 = b_2 = 0"));
        }
        Ok(())
    }
}

/// Builds the algebra with the standard complex structure after checking
/// the parameter constraints, the Jacobi identity, integrability and the
/// dimensions `s = r = ℓ = 1`.
pub fn skt_6d_nonpure_normal_form(p: &SixDNonPureData) -> Result<(LieAlgebra, ComplexStructure)> {
    p.check_constraints()?;
    const Y: usize = 0;
    const JY: usize = 1;
    const X: usize = 2;
    const JX: usize = 3;
    const Z: usize = 4;
    const JZ: usize = 5;
    let mut t = Table::new(6);
    for (e, zc) in [JX, Z, JZ].into_iter().zip(&p.z) {
        t.add_complex(e, Y, Y, zc);
        // J(cY) = re JY - im Y
        t.add_complex(e, JY, Y, &Cplx::new(-zc.im.clone(), zc.re.clone()));
    }
    let with_x = |coef: Scalar, w: &Cplx| {
        let mut v = linalg::zero_vector(6);
        v[X] = coef;
        v[Y] = w.re.clone();
        v[JY] = w.im.clone();
        v
    };
    let [b0, b1, b2, b3] = p.b.clone();
    t.add(JX, X, &with_x(b0, &p.w[0]));
    t.add(Z, X, &with_x(b1.clone(), &p.w[1]));
    t.add(JZ, X, &with_x(b2.clone(), &p.w[2]));
    t.add(Z, JX, &with_x(-b2, &p.w[3]));
    t.add(JZ, JX, &with_x(b1, &p.w[4]));
    t.add(Z, JZ, &with_x(b3, &p.w[5]));
    let l = t.build();
    if !l.is_validated() {
        return Err(violated("the parameters violate the Jacobi identity"));
    }
    let j = ComplexStructure::standard(6);
    if !is_integrable(&l, &j) {
        return Err(violated("the complex structure is not integrable"));
    }
    let d = hermitian_decomposition(&l, &Metric::identity(6), &j)?;
    if (d.s, d.r, d.ell) != (1, 1, 1) {
        return Err(violated(format!("decomposition has (s, r, ℓ) = ({}, {}, {}), not (1, 1, 1)", d.s, d.r, d.ell)));
    }
    Ok((l, j))
}

/// What is known about an output of [`skt_6d_nonpure_normal_form`]
/// with respect to the standard metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NonPureReport {
    pub integrable: bool,
    pub skt_standard_metric: bool,
}

impl NonPureReport {
    pub fn compute(l: &LieAlgebra, j: &ComplexStructure) -> Result<Self> {
        let integrable = is_integrable(l, j);
        let skt_standard_metric = integrable && classify_metric(l, &Metric::identity(l.dim()), j)?.skt;
        Ok(Self { integrable, skt_standard_metric })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::PureType;

    fn constants_of(l: &LieAlgebra) -> Vec<(usize, usize, usize, i64)> {
        l.constants().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_integer().try_into().unwrap())).collect()
    }

    #[test]
    fn type_one_rank_one_is_aff_r() {
        let p = KahlerNormalForm {
            kind: KahlerKind::I,
            s: 0,
            r: 1,
            ell: 0,
            alpha: vec![],
            beta: vec![],
            lambda: vec![int(1)],
        };
        let (l, g, j) = kahler_normal_form(&p).unwrap();
        assert_eq!(constants_of(&l), vec![(1, 2, 1, -1)]);
        assert!(classify_metric(&l, &g, &j).unwrap().kahler);
    }

    #[test]
    fn type_two_kahler_with_two_abelian_planes() {
        let p = KahlerNormalForm {
            kind: KahlerKind::II,
            s: 1,
            r: 0,
            ell: 2,
            alpha: vec![vec![]],
            beta: vec![vec![int(1), int(0), int(0), int(0)]],
            lambda: vec![],
        };
        let (l, g, j) = kahler_normal_form(&p).unwrap();
        // [e3, e1] = e2, [e3, e2] = -e1
        assert_eq!(constants_of(&l), vec![(1, 3, 2, -1), (2, 3, 1, 1)]);
        assert!(classify_metric(&l, &g, &j).unwrap().kahler);
        assert_eq!(l.derived_algebra(), p.nominal_derived());
    }

    #[test]
    fn dropping_lambda_is_rejected() {
        let p = KahlerNormalForm {
            kind: KahlerKind::III,
            s: 1,
            r: 1,
            ell: 0,
            alpha: vec![vec![int(1)]],
            beta: vec![vec![]],
            lambda: vec![int(0)],
        };
        assert!(matches!(kahler_normal_form(&p), Err(Error::ParameterConstraintViolated(_))));
        let (l, _, _) = kahler_normal_form_unchecked(&p).unwrap();
        assert_ne!(l.derived_algebra().dim(), 3);
    }

    #[test]
    fn codimension_two_families() {
        let (l, g, j) = skt_type_ii_normal_form(&skt_two_rotation_data()).unwrap();
        assert_eq!(
            constants_of(&l),
            vec![(1, 5, 2, 1), (2, 5, 1, -1), (3, 6, 4, 1), (4, 6, 3, -1)]
        );
        assert!(classify_metric(&l, &g, &j).unwrap().skt);
        let (l2, g2, j2) = skt_type_ii_normal_form(&skt_one_rotation_data(&q(1, 2))).unwrap();
        assert!(classify_metric(&l2, &g2, &j2).unwrap().skt);
        assert_eq!(hermitian_decomposition(&l2, &g2, &j2).unwrap().pure_type, PureType::II);
    }

    #[test]
    fn isotropic_forms_give_skt() {
        // φ = e^{12} + i e^{34} on R^4, ψ = 0
        let phi = ComplexForm::new(KForm::monomial(4, &[1, 2], int(1)), KForm::monomial(4, &[3, 4], int(1)));
        assert!(phi.is_type_11());
        let p = TypeIINormalForm { s: 1, ell: 2, alpha: vec![], z: vec![], phi: vec![phi], psi: vec![ComplexForm::zero(4)] };
        let (l, g, j) = skt_type_ii_normal_form(&p).unwrap();
        assert!(classify_metric(&l, &g, &j).unwrap().skt);
        let mut bad = p.clone();
        bad.phi[0].im = KForm::monomial(4, &[1, 2], int(1));
        assert!(skt_type_ii_normal_form(&bad).is_err());
    }

    #[test]
    fn type_20_forms() {
        let re = KForm::monomial(4, &[1, 3], int(1)).sub(&KForm::monomial(4, &[2, 4], int(1)));
        let psi = ComplexForm::type_20_from_real(re);
        assert!(psi.is_type_20());
        assert!(!psi.is_type_11());
    }

    #[test]
    fn non_pure_six_dimensional() {
        let (l, j) = skt_6d_nonpure_normal_form(&SixDNonPureData::simple(int(1))).unwrap();
        let report = NonPureReport::compute(&l, &j).unwrap();
        assert!(report.integrable);
        let mut p = SixDNonPureData::simple(int(0));
        p.b = [int(0), int(0), int(0), int(1)];
        p.z = Default::default();
        assert!(matches!(skt_6d_nonpure_normal_form(&p), Err(Error::ParameterConstraintViolated(_))));
    }
}
