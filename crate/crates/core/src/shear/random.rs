//! Seeded generator of valid complex shear data.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::normal_forms::{
    kahler_normal_form, skt_6d_nonpure_normal_form, skt_type_ii_normal_form, ComplexForm, KahlerKind,
    KahlerNormalForm, SixDNonPureData, TypeIINormalForm,
};
use super::PreShearData;
use crate::algebra::{aff_sum, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::KForm;
use crate::hermitian::{
    hermitian_decomposition, random_complex_change_of_basis, random_compatible_metric, ComplexStructure, Metric,
    PureType,
};
use crate::linalg::{self, QMatrix, Vector};
use crate::scalar::{int, q, Cplx, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShearProfile {
    #[serde(rename = "nilpotent")]
    Nilpotent,
    #[serde(rename = "typeI")]
    TypeI,
    #[serde(rename = "typeII")]
    TypeII,
    #[serde(rename = "typeIII")]
    TypeIII,
    #[serde(rename = "mixed")]
    Mixed,
}

impl ShearProfile {
    pub const ALL: [ShearProfile; 5] =
        [ShearProfile::Nilpotent, ShearProfile::TypeI, ShearProfile::TypeII, ShearProfile::TypeIII, ShearProfile::Mixed];

    /// Smallest real dimension the profile can produce.
    pub fn min_dim(self) -> usize {
        match self {
            ShearProfile::Nilpotent | ShearProfile::TypeI => 2,
            ShearProfile::TypeII | ShearProfile::TypeIII => 4,
            ShearProfile::Mixed => 6,
        }
    }
}

impl fmt::Display for ShearProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShearProfile::Nilpotent => "nilpotent",
            ShearProfile::TypeI => "typeI",
            ShearProfile::TypeII => "typeII",
            ShearProfile::TypeIII => "typeIII",
            ShearProfile::Mixed => "mixed",
        })
    }
}

impl FromStr for ShearProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ShearProfile::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown profile '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearSample {
    pub data: PreShearData,
    pub g: Metric,
    pub j: ComplexStructure,
}

/// Deterministic in `(seed, profile, dim)`. The data come from a normal
/// form (or, for `nilpotent`, from the linear integrability equations with
/// `ω(a,·) = 0`), moved by a random complex change of basis; the metric is
/// either the transported one or a fresh random compatible one.
pub fn random_complex_shear(seed: u64, profile: ShearProfile, dim: usize) -> Result<ShearSample> {
    if dim % 2 != 0 || dim < profile.min_dim() {
        return Err(Error::InvalidInput(format!(
            "profile {profile} needs an even dimension ≥ {}, got {dim}",
            profile.min_dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, g, j) = match profile {
        ShearProfile::Nilpotent => {
            let (l, j) = random_nilpotent(dim, &mut rng);
            (l, Metric::identity(dim), j)
        }
        ShearProfile::TypeI => random_type_i(dim, &mut rng),
        ShearProfile::TypeII => random_type_ii(dim, &mut rng),
        ShearProfile::TypeIII => random_type_iii(dim, &mut rng),
        ShearProfile::Mixed => random_mixed(dim, &mut rng)?,
    };
    let m = random_complex_change_of_basis(&j, &mut rng);
    let l = l.change_basis(&m)?;
    let j = j.change_basis(&m)?;
    let g = if rng.gen_bool(0.5) { g.change_basis(&m)? } else { random_compatible_metric(&j, &mut rng) };
    Ok(ShearSample { data: PreShearData::from_algebra(&l), g, j })
}

fn small_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    [int(1), int(-1), int(2), int(-2), q(1, 2), q(-1, 2), int(3)].choose(rng).expect("non-empty").clone()
}

fn small<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    int(rng.gen_range(-2..=2))
}

fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector {
    (0..n).map(|_| small(rng)).collect()
}

fn random_nonzero_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector {
    let mut v = random_vector(n, rng);
    if linalg::is_zero(&v) {
        v[rng.gen_range(0..n)] = small_nonzero(rng);
    }
    v
}

/// Random `Kähler` normal-form parameters of the given kind and sizes.
pub fn random_kahler_params<R: Rng + ?Sized>(
    kind: KahlerKind,
    s: usize,
    r: usize,
    ell: usize,
    rng: &mut R,
) -> KahlerNormalForm {
    let alpha = (0..s)
        .map(|_| if r == 0 { vec![] } else { random_nonzero_vector(r, rng) })
        .collect();
    let beta = (0..s)
        .map(|_| {
            if ell == 0 {
                vec![]
            } else if kind == KahlerKind::II {
                random_nonzero_vector(2 * ell, rng)
            } else {
                random_vector(2 * ell, rng)
            }
        })
        .collect();
    let lambda = (0..r).map(|_| small_nonzero(rng)).collect();
    KahlerNormalForm { kind, s, r, ell, alpha, beta, lambda }
}

fn random_11_form<R: Rng + ?Sized>(v: usize, rng: &mut R) -> KForm {
    let b = random_two_form(v, rng);
    b.add(&ComplexStructure::standard(v).pullback(&b))
}

fn random_anti_form<R: Rng + ?Sized>(v: usize, rng: &mut R) -> KForm {
    let b = random_two_form(v, rng);
    b.sub(&ComplexStructure::standard(v).pullback(&b))
}

fn random_two_form<R: Rng + ?Sized>(v: usize, rng: &mut R) -> KForm {
    let mut out = KForm::zero(v, 2);
    for a in 0..v {
        for b in a + 1..v {
            out.add_term((1 << a) | (1 << b), small(rng));
        }
    }
    out
}

/// `u ∧ J^*u` for a random one-form `u`: a real `(1,1)`-form with square zero.
fn random_isotropic<R: Rng + ?Sized>(v: usize, rng: &mut R) -> KForm {
    let u = random_nonzero_vector(v, rng);
    let ju = ComplexStructure::standard(v).matrix().transpose().mul_vec(&u);
    KForm::one_form(&u).wedge(&KForm::one_form(&ju))
}

/// Valid parameters for the SKT normal form of pure type II. For `ℓ = 1`
/// all planes are rotated (`m = s`); for `ℓ = 2` the constraint is met by
/// moving an isotropic seed along a random line; for larger `ℓ` isotropic
/// seeds are used directly.
pub fn random_type_ii_params<R: Rng + ?Sized>(s: usize, ell: usize, rng: &mut R) -> TypeIINormalForm {
    let v = 2 * ell;
    loop {
        let max_forms = if ell == 1 { 0 } else { s.min(2) };
        let forms = rng.gen_range(0..=max_forms);
        let m = s - forms;
        let alpha: Vec<Vector> = (0..m).map(|_| random_nonzero_vector(v, rng)).collect();
        let z: Vec<Cplx> = (0..m)
            .map(|_| if rng.gen_bool(0.3) { Cplx::default() } else { Cplx::new(small(rng), small(rng)) })
            .collect();
        let seed: Vec<(ComplexForm, ComplexForm)> = (0..forms)
            .map(|_| (ComplexForm::new(random_isotropic(v, rng), random_isotropic(v, rng)), ComplexForm::zero(v)))
            .collect();
        let mut params = TypeIINormalForm {
            s,
            ell,
            alpha,
            z,
            phi: seed.iter().map(|p| p.0.clone()).collect(),
            psi: seed.iter().map(|p| p.1.clone()).collect(),
        };
        if ell == 2 && forms > 0 {
            let dir: Vec<(ComplexForm, ComplexForm)> = (0..forms)
                .map(|_| {
                    (
                        ComplexForm::new(random_11_form(v, rng), random_11_form(v, rng)),
                        ComplexForm::type_20_from_real(random_anti_form(v, rng)),
                    )
                })
                .collect();
            let with = |pairs: &[(ComplexForm, ComplexForm)]| TypeIINormalForm {
                phi: pairs.iter().map(|p| p.0.clone()).collect(),
                psi: pairs.iter().map(|p| p.1.clone()).collect(),
                ..params.clone()
            };
            let quad = |pairs: &[(ComplexForm, ComplexForm)]| with(pairs).constraint_form().coefficient(&[1, 2, 3, 4]);
            let sum: Vec<_> = seed.iter().zip(&dir).map(|(a, b)| (a.0.add(&b.0), a.1.add(&b.1))).collect();
            let qd = quad(&dir);
            if !qd.is_zero() {
                // Q(p + t d) = 2t B(p, d) + t² Q(d) with B(p, d) = (Q(p + d) - Q(d)) / 2
                let b = (quad(&sum) - &qd) * q(1, 2);
                let t = -(b * int(2)) / qd;
                let moved: Vec<_> =
                    seed.iter().zip(&dir).map(|(a, d)| (a.0.add(&d.0.scale(&t)), a.1.add(&d.1.scale(&t)))).collect();
                params = with(&moved);
            }
        }
        if params.validate().is_ok() {
            return params;
        }
    }
}

fn random_nilpotent<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (LieAlgebra, ComplexStructure) {
    let j = ComplexStructure::standard(dim);
    if dim < 4 {
        return (LieAlgebra::abelian(dim), j);
    }
    let k = rng.gen_range(1..=dim / 2);
    let free = dim - k;
    let pairs: Vec<(usize, usize)> = (0..free).flat_map(|p| (p + 1..free).map(move |q| (p, q))).collect();
    let unknowns = pairs.len() * k;
    let omega_of = |u: &[Scalar]| {
        let mut table = vec![linalg::zero_vector(dim); dim * dim];
        for (idx, &(p, q)) in pairs.iter().enumerate() {
            for t in 0..k {
                let c = &u[idx * k + t];
                table[p * dim + q][free + t] = c.clone();
                table[q * dim + p][free + t] = -c.clone();
            }
        }
        table
    };
    let eval = |table: &[Vector], x: &[Scalar], y: &[Scalar]| {
        let mut out = linalg::zero_vector(dim);
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                if !xa.is_zero() && !yb.is_zero() {
                    linalg::axpy(&mut out, &(xa * yb), &table[a * dim + b]);
                }
            }
        }
        out
    };
    // integrability residual as a linear map of the unknowns
    let columns: Vec<Vector> = (0..unknowns)
        .map(|c| {
            let table = omega_of(&linalg::unit(unknowns, c));
            let mut col = Vec::new();
            for a in 0..dim {
                for b in a + 1..dim {
                    let (ea, eb) = (linalg::unit(dim, a), linalg::unit(dim, b));
                    let (ja, jb) = (j.apply(&ea), j.apply(&eb));
                    let inner = linalg::add(&eval(&table, &ja, &eb), &eval(&table, &ea, &jb));
                    let res = linalg::sub(
                        &linalg::sub(&eval(&table, &ja, &jb), &table[a * dim + b]),
                        &j.apply(&inner),
                    );
                    col.extend(res);
                }
            }
            col
        })
        .collect();
    let null = QMatrix::from_columns(&columns).nullspace();
    let mut u = linalg::zero_vector(unknowns);
    for v in &null {
        linalg::axpy(&mut u, &small(rng), v);
    }
    let table = omega_of(&u);
    let l = LieAlgebra::from_fn(dim, |i, j| table[i * dim + j].iter().map(|x| -x).collect());
    (l, j)
}

fn kahler(p: &KahlerNormalForm) -> (LieAlgebra, Metric, ComplexStructure) {
    kahler_normal_form(p).expect("generated parameters are valid")
}

fn random_type_i<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (LieAlgebra, Metric, ComplexStructure) {
    let n = dim / 2;
    if rng.gen_bool(0.5) {
        // aff_R^k ⊕ (nilpotent), kept when g′ stays totally real
        let k = rng.gen_range(1..=n);
        let (nil, _) = random_nilpotent(dim - 2 * k, rng);
        let l = aff_sum(k, 0).direct_sum(&nil);
        let j = ComplexStructure::standard(dim);
        let g = Metric::identity(dim);
        if hermitian_decomposition(&l, &g, &j).map(|d| d.pure_type == PureType::I).unwrap_or(false) {
            return (l, g, j);
        }
    }
    let r = rng.gen_range(1..=n);
    kahler(&random_kahler_params(KahlerKind::I, 0, r, n - r, rng))
}

fn random_type_ii<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (LieAlgebra, Metric, ComplexStructure) {
    let n = dim / 2;
    if rng.gen_bool(0.3) {
        let s = rng.gen_range(1..n);
        return kahler(&random_kahler_params(KahlerKind::II, s, 0, n - s, rng));
    }
    let ell = if n >= 3 && rng.gen_bool(0.6) { 2 } else { 1 };
    let params = random_type_ii_params(n - ell, ell, rng);
    skt_type_ii_normal_form(&params).expect("generated parameters are valid")
}

fn random_type_iii<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (LieAlgebra, Metric, ComplexStructure) {
    let n = dim / 2;
    if dim == 6 && rng.gen_bool(0.3) {
        // SKT and balanced metrics exist here, a Kähler one does not
        let e = crate::catalog::type_iii_counterexample();
        let g = random_compatible_metric(&e.j, rng);
        return (e.algebra, g, e.j);
    }
    let s = rng.gen_range(1..n);
    kahler(&random_kahler_params(KahlerKind::III, s, n - s, 0, rng))
}

fn random_mixed<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<(LieAlgebra, Metric, ComplexStructure)> {
    let n = dim / 2;
    if dim == 6 && rng.gen_bool(0.4) {
        let mut p = SixDNonPureData::simple(small_nonzero(rng));
        p.z[1] = Cplx::imag(small(rng));
        p.z[2] = Cplx::imag(small(rng));
        p.z[0].im = small(rng);
        for w in p.w.iter_mut() {
            if rng.gen_bool(0.3) {
                *w = Cplx::new(small(rng), small(rng));
            }
        }
        if let Ok((l, j)) = skt_6d_nonpure_normal_form(&p) {
            return Ok((l, Metric::identity(6), j));
        }
    }
    let s = rng.gen_range(1..=n - 2);
    let r = rng.gen_range(1..=n - 1 - s);
    let mut params = random_kahler_params(KahlerKind::General, s, r, n - s - r, rng);
    // some planes reached only through V_J
    for (a, b) in params.alpha.iter_mut().zip(params.beta.iter_mut()) {
        if rng.gen_bool(0.25) {
            *a = linalg::zero_vector(r);
            *b = random_nonzero_vector(b.len(), rng);
        }
    }
    Ok(kahler(&params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shear::check_complex_shear;

    #[test]
    fn deterministic_and_valid() {
        for profile in ShearProfile::ALL {
            for dim in [4, 6] {
                if dim < profile.min_dim() {
                    assert!(random_complex_shear(0, profile, dim).is_err());
                    continue;
                }
                let a = random_complex_shear(7, profile, dim).unwrap();
                assert_eq!(a, random_complex_shear(7, profile, dim).unwrap());
                assert!(check_complex_shear(&a.data, &a.j).unwrap().is_complex_shear_data());
            }
        }
    }

    #[test]
    fn nilpotent_profile_is_nilpotent() {
        let s = random_complex_shear(0, ShearProfile::Nilpotent, 6).unwrap();
        let l = crate::shear::build_shear(&s.data).unwrap();
        assert!(l.is_nilpotent());
        assert!(l.is_two_step_solvable());
    }
}
