//! Numeric scalars used throughout the crate.
//!
//! Every algorithm is generic over [`Scalar`], which is implemented for
//! exact rationals ([`Rational`]) and for `f64`. A single computation never
//! mixes the two: the mode is fixed by the type parameter.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{PqError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Arithmetic mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// The exact value, available only in exact mode.
    fn to_rational(&self) -> Option<Rational>;

    /// Integer power; negative exponents take the reciprocal first.
    ///
    /// Fails with [`PqError::DegenerateParameters`] for `0^e`, `e < 0`.
    fn powi(&self, exp: i64) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(PqError::DegenerateParameters(
                "zero raised to a negative power".into(),
            ));
        }
        let (mut base, mut e) = if exp < 0 {
            (Self::one() / self.clone(), exp.unsigned_abs())
        } else {
            (self.clone(), exp as u64)
        };
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }

    /// Nonnegative power, never fails.
    fn pown(&self, exp: u32) -> Self {
        self.powi(i64::from(exp)).expect("nonnegative exponent")
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(PqError::DegenerateParameters("division by zero".into()))
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn powi(&self, exp: i64) -> Result<Self> {
        if exp < 0 && *self == 0.0 {
            return Err(PqError::DegenerateParameters(
                "zero raised to a negative power".into(),
            ));
        }
        Ok(f64::powi(*self, exp as i32))
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }
}

/// A numeric literal as written by a user: `"3/8"`, `"-2"`, `"0.375"`.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    /// Integer or `num/den` rational.
    Rational(Rational),
    /// Anything with a decimal point or exponent.
    Decimal(f64),
}

impl Literal {
    pub fn is_exact(&self) -> bool {
        matches!(self, Literal::Rational(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Literal::Rational(r) => Scalar::to_f64(r),
            Literal::Decimal(v) => *v,
        }
    }

    /// Exact value, rejecting decimals to avoid false exactness.
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Literal::Rational(r) => Ok(r.clone()),
            Literal::Decimal(v) => Err(PqError::Parse(format!(
                "decimal {v} is not accepted in exact mode; write it as num/den"
            ))),
        }
    }

    pub fn to_scalar<S: FromLiteral>(&self) -> Result<S> {
        S::from_literal(self)
    }
}

impl FromStr for Literal {
    type Err = PqError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PqError::Parse("empty number".into()));
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| PqError::Parse(format!("bad numerator in {s:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| PqError::Parse(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(PqError::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Literal::Rational(BigRational::new(num, den)));
        }
        if let Ok(i) = s.parse::<BigInt>() {
            return Ok(Literal::Rational(BigRational::from_integer(i)));
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Literal::Decimal(v)),
            _ => Err(PqError::Parse(format!("not a number: {s:?}"))),
        }
    }
}

/// Conversion from a user literal into a scalar of the requested mode.
pub trait FromLiteral: Scalar {
    fn from_literal(lit: &Literal) -> Result<Self>;
}

impl FromLiteral for f64 {
    fn from_literal(lit: &Literal) -> Result<Self> {
        Ok(lit.to_f64())
    }
}

impl FromLiteral for Rational {
    fn from_literal(lit: &Literal) -> Result<Self> {
        lit.to_rational()
    }
}

/// Canonical text for an exact value: `"3/8"`, or `"-2"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a rational literal, decimal forms rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Literal>()?.to_rational()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rationals_are_reduced() {
        let r = q(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(q(2, 3).powi(-2).unwrap(), q(9, 4));
        assert_eq!(q(2, 3).powi(0).unwrap(), q(1, 1));
        assert!(Rational::zero().powi(-1).is_err());
        assert_eq!(Scalar::powi(&2.0f64, -3).unwrap(), 0.125);
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("3/8".parse::<Literal>().unwrap(), Literal::Rational(q(3, 8)));
        assert_eq!(" -4 ".parse::<Literal>().unwrap(), Literal::Rational(q(-4, 1)));
        assert_eq!("0.375".parse::<Literal>().unwrap(), Literal::Decimal(0.375));
        assert!("abc".parse::<Literal>().is_err());
        assert!("1/0".parse::<Literal>().is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&q(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(4, 2)), "2");
    }
}
