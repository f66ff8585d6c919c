//! Exact rational scalars and the small complex wrapper built on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number in reduced form.
pub type Scalar = BigRational;

/// `num / den` as a scalar. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse '{0}' as a rational number")]
pub struct ParseScalarError(pub String);

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.25"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let t = text.trim();
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseScalarError(text.to_string()));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseScalarError(text.to_string()));
        }
        let digits = format!("{whole_digits}{frac}");
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| ParseScalarError(text.to_string()))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    let value = BigRational::from_str(t).map_err(|_| ParseScalarError(text.to_string()))?;
    Ok(value)
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued-fraction convergents.
pub fn rationalize(x: f64, max_den: i64) -> Scalar {
    if !x.is_finite() {
        return zero();
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = rest.floor();
        if a > 1e15 {
            break;
        }
        let a_int = a as i128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a;
        if frac < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    if q1 == 0 {
        return zero();
    }
    let value = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -value
    } else {
        value
    }
}

/// A complex number with exact rational parts, read as `re + i·im`.
///
/// On a space with complex structure `J`, `c·Y` means `re·Y + im·JY`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cplx {
    pub re: Scalar,
    pub im: Scalar,
}

impl Cplx {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Self { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        Self { re, im: zero() }
    }

    pub fn imag(im: Scalar) -> Self {
        Self { re: zero(), im }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        Self::new(&self.re * t, &self.im * t)
    }
}

impl Add for &Cplx {
    type Output = Cplx;
    fn add(self, rhs: &Cplx) -> Cplx {
        Cplx::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Cplx {
    type Output = Cplx;
    fn sub(self, rhs: &Cplx) -> Cplx {
        Cplx::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Cplx {
    type Output = Cplx;
    fn mul(self, rhs: &Cplx) -> Cplx {
        Cplx::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", format_scalar(&self.re), format_scalar(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(parse_scalar("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_scalar("1.5").unwrap(), q(3, 2));
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert_eq!(format_scalar(&q(-2, 4)), "-1/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn continued_fraction_rounding() {
        assert_eq!(rationalize(0.333333333333, 1000), q(1, 3));
        assert_eq!(rationalize(-2.5, 1000), q(-5, 2));
        assert_eq!(rationalize(1.0 + 1e-13, 1000), int(1));
        assert_eq!(rationalize(0.0, 10), zero());
    }

    #[test]
    fn complex_multiplication() {
        let i = Cplx::imag(one());
        assert_eq!(&i * &i, Cplx::real(int(-1)));
        let z = Cplx::new(q(1, 2), int(3));
        assert_eq!(&z * &z.conj(), Cplx::real(q(1, 4) + int(9)));
    }
}
