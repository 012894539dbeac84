//! Coefficient fields.
//!
//! Every algorithm in this crate is written once over the [`Coeff`] trait
//! and instantiated twice: with [`Rational`] (exact arbitrary-precision
//! path) and with `f64` (fast floating path). Exactness of a field is a
//! compile-time property exposed through [`Coeff::EXACT`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational number. Always reduced, denominator
/// always positive, canonical zero is 0/1.
pub type Rational = BigRational;

/// Scalar field the series and coefficient kernels are generic over.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Nearest floating value, used for pivot selection and diagnostics.
    fn to_f64(&self) -> f64;

    /// `Some(n)` when the value is exactly the integer `n`.
    fn as_integer(&self) -> Option<i64>;

    fn abs(&self) -> Self;

    /// `base^exp` within the field. Exact fields reject exponents that
    /// would leave the field (a fractional power of anything but 0 or 1);
    /// the floating field rejects fractional powers of negative bases.
    fn try_pow(base: &Self, exp: &Self) -> Result<Self, Error>;

    /// Integer power by repeated multiplication.
    fn powi(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Coeff for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_integer(&self) -> Option<i64> {
        if self.denom().is_one() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn try_pow(base: &Self, exp: &Self) -> Result<Self, Error> {
        if let Some(n) = exp.as_integer() {
            if n >= 0 {
                return Ok(Pow::pow(base.clone(), n as u32));
            }
            if base.is_zero() {
                return Err(Error::DegenerateGenerator);
            }
            return Ok(Pow::pow(base.clone(), n as i32));
        }
        // Fractional exponent: representable only for the fixed points of
        // exponentiation.
        if base.is_one() {
            Ok(Rational::one())
        } else if base.is_zero() && Signed::is_positive(exp) {
            Ok(Rational::zero())
        } else {
            Err(Error::IrrationalPower)
        }
    }
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_integer(&self) -> Option<i64> {
        if self.fract() == 0.0 && f64::abs(*self) <= 2f64.powi(53) {
            Some(*self as i64)
        } else {
            None
        }
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn try_pow(base: &Self, exp: &Self) -> Result<Self, Error> {
        if *base < 0.0 && exp.fract() != 0.0 {
            return Err(Error::NegativePower(*base));
        }
        Ok(base.powf(*exp))
    }
}

/// Parse an exact scalar from `"num/den"`, an integer, or a decimal
/// literal. Decimals expand literally (`"0.5"` becomes 1/2, `"2.5e-2"`
/// becomes 1/40); they are never round-tripped through floating point.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, Error> {
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in {s:?}")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("invalid scalar {s:?}")));
    }
    let mut numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .unwrap_or_else(|_| BigInt::from(0));
    numer *= sign;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        Ok(Rational::from_integer(
            numer * Pow::pow(ten, shift as u32),
        ))
    } else {
        Ok(Rational::new(numer, Pow::pow(ten, (-shift) as u32)))
    }
}

/// Canonical string form: `"num/den"`, or `"num"` when the value is an
/// integer.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Shorthand rational constructor used pervasively in tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("-59/36").unwrap(), rat(-59, 36));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("2.5e-2").unwrap(), rat(1, 40));
        assert_eq!(parse_rational("1e3").unwrap(), rat(1000, 1));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "a/b", "1/0", "1.2.3", "--4", "1e", "/3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(-59, 36)), "-59/36");
        assert_eq!(format_rational(&rat(14, 7)), "2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn exact_pow_cases() {
        assert_eq!(
            Rational::try_pow(&rat(2, 3), &rat(3, 1)).unwrap(),
            rat(8, 27)
        );
        assert_eq!(
            Rational::try_pow(&rat(2, 3), &rat(-2, 1)).unwrap(),
            rat(9, 4)
        );
        assert_eq!(Rational::try_pow(&rat(1, 1), &rat(1, 2)).unwrap(), rat(1, 1));
        assert!(matches!(
            Rational::try_pow(&rat(2, 1), &rat(1, 2)),
            Err(Error::IrrationalPower)
        ));
    }

    #[test]
    fn float_pow_rejects_negative_fractional() {
        assert!(matches!(
            f64::try_pow(&-0.5, &0.5),
            Err(Error::NegativePower(_))
        ));
        assert_eq!(f64::try_pow(&-0.5, &2.0).unwrap(), 0.25);
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
            let r = rat(num, den);
            let back = parse_rational(&format_rational(&r)).unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn addition_matches_common_denominator_form(
            a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500,
        ) {
            let lhs = rat(a, b) + rat(c, d);
            let rhs = rat(a * d + c * b, b * d);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
