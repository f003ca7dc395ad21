//! Arbitrary-precision signed rationals in canonical form.
//!
//! [`Rational`] wraps a big-integer ratio and guarantees, after every
//! operation: denominator > 0 and gcd(|numerator|, denominator) = 1.
//! Equality and ordering are therefore exact value comparisons.
//!
//! Parsing accepts `n`, `n/d`, decimal strings (`3.25` = 13/4, converted
//! exactly as m/10^k), and scientific notation (`1e-40` = 1/10^40).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from rational construction, parsing, and partial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("malformed rational literal: {0:?}")]
    Parse(String),
}

/// An exact rational number `num/den` with `den > 0` and `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `num/den` in canonical form. Errors when `den = 0`.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Exact ratio of two machine integers. Panics when `den = 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Sign as -1, 0, or +1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Checked division: `self / rhs`, erroring when `rhs = 0`.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power with negative exponents allowed for nonzero bases.
    pub fn pow_int(&self, exp: i64) -> Result<Self, RationalError> {
        if exp == 0 {
            return Ok(Rational::one());
        }
        if self.is_zero() {
            return if exp > 0 {
                Ok(Rational::zero())
            } else {
                Err(RationalError::ZeroToNegativePower)
            };
        }
        let mut base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Rational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Exact ceiling as a big integer.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Exact square root when the value is a perfect square of a rational.
    ///
    /// A canonical `n/d` is a rational square iff `n >= 0` and both `n` and
    /// `d` are integer squares.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let sn = exact_isqrt(self.numer())?;
        let sd = exact_isqrt(self.denom())?;
        Some(Rational(BigRational::new(sn, sd)))
    }

    /// Crude floor(log2(|self|)) estimate from numerator/denominator bit
    /// lengths; exact within +-1, which is all granule selection needs.
    pub fn log2_estimate(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.numer().bits() as i64 - self.denom().bits() as i64
    }

    /// Approximate f64 value (for human-facing output only; may over/underflow).
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub(crate) fn from_ratio(r: BigRational) -> Self {
        Rational(r)
    }
}

/// Floor integer square root that returns `None` unless `n` is a perfect square.
fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    use num_integer::Roots;
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] where the
    /// divisor is data-dependent.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, the wire format used in JSON reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s)
    }
}

/// Grammar: `[+-]digits` | `[+-]digits/digits` | `[+-]digits[.digits][e[+-]digits]`.
fn parse_rational(s: &str) -> Result<Rational, RationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RationalError::Parse(s.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| RationalError::Parse(s.to_string()))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| RationalError::Parse(s.to_string()))?;
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        return Rational::new(num, den);
    }
    // Decimal / scientific form: mantissa [.frac] [e exp], all converted exactly.
    let (mantissa, exp10) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| RationalError::Parse(s.to_string()))?;
            (m, exp)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, fr)) => (i, fr),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(RationalError::Parse(s.to_string()));
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(RationalError::Parse(s.to_string()));
    }
    let num: BigInt = digits
        .parse()
        .map_err(|_| RationalError::Parse(s.to_string()))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = Rational::from_int(10);
    let scale = ten
        .pow_int(shift)
        .map_err(|_| RationalError::Parse(s.to_string()))?;
    Ok(Rational::from_int(num) * scale)
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Fraction accumulator that defers gcd reduction.
///
/// Summing reciprocal-series terms whose denominators are distinct large
/// sequence values produces huge intermediate fractions; reducing after every
/// addition spends most of the time in gcd. This keeps a raw `num/den` pair
/// and canonicalizes once, at the end.
#[derive(Clone, Debug)]
pub struct FractionAcc {
    num: BigInt,
    den: BigInt,
}

impl FractionAcc {
    pub fn zero() -> Self {
        FractionAcc {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn add(&mut self, r: &Rational) {
        if self.den == *r.denom() {
            self.num += r.numer();
            return;
        }
        self.num = &self.num * r.denom() + r.numer() * &self.den;
        self.den *= r.denom();
    }

    pub fn sub(&mut self, r: &Rational) {
        if self.den == *r.denom() {
            self.num -= r.numer();
            return;
        }
        self.num = &self.num * r.denom() - r.numer() * &self.den;
        self.den *= r.denom();
    }

    pub fn is_zero_value(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact value equality via cross multiplication (no reduction).
    pub fn eq_value(&self, other: &FractionAcc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Canonicalize into a [`Rational`] (single gcd).
    pub fn into_rational(self) -> Rational {
        Rational(BigRational::new(self.num, self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_after_construction() {
        let x = Rational::new(BigInt::from(4), BigInt::from(-6)).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert!(Rational::new(BigInt::from(1), BigInt::zero()).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(r("5"), Rational::from_int(5));
        assert_eq!(r("-7/21"), Rational::ratio(-1, 3));
        assert_eq!(r("3.25"), Rational::ratio(13, 4));
        assert_eq!(r("-0.5"), Rational::ratio(-1, 2));
        assert_eq!(r("1e-3"), Rational::ratio(1, 1000));
        assert_eq!(r("2.5e2"), Rational::from_int(250));
        assert_eq!(r(".5"), Rational::ratio(1, 2));
        assert!("".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["5", "-7/3", "0", "1e-40"] {
            let x = r(s);
            assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
        assert_eq!(r("5").to_string(), "5/1");
        assert_eq!(r("-1/2").to_string(), "-1/2");
    }

    #[test]
    fn pow_int_cases() {
        assert_eq!(r("2/3").pow_int(3).unwrap(), r("8/27"));
        assert_eq!(r("2/3").pow_int(-2).unwrap(), r("9/4"));
        assert_eq!(r("7").pow_int(0).unwrap(), Rational::one());
        assert_eq!(r("0").pow_int(5).unwrap(), Rational::zero());
        assert!(r("0").pow_int(-1).is_err());
    }

    #[test]
    fn sqrt_exact_detects_squares() {
        assert_eq!(r("4/9").sqrt_exact().unwrap(), r("2/3"));
        assert_eq!(r("1").sqrt_exact().unwrap(), r("1"));
        assert_eq!(r("0").sqrt_exact().unwrap(), r("0"));
        assert!(r("5").sqrt_exact().is_none());
        assert!(r("4/5").sqrt_exact().is_none());
        assert!(r("-4").sqrt_exact().is_none());
    }

    #[test]
    fn fraction_acc_matches_reduced_arithmetic() {
        let terms = ["1/3", "-2/7", "5/6", "1/3", "-1/2"];
        let mut acc = FractionAcc::zero();
        let mut direct = Rational::zero();
        for t in terms {
            acc.add(&r(t));
            direct += &r(t);
        }
        assert_eq!(acc.clone().into_rational(), direct);
        let mut other = FractionAcc::zero();
        for t in terms.iter().rev() {
            other.add(&r(t));
        }
        assert!(acc.eq_value(&other));
    }

    #[test]
    fn serde_is_num_slash_den() {
        let x = r("-3/4");
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"-3/4\"");
        let y: Rational = serde_json::from_str("\"-3/4\"").unwrap();
        assert_eq!(x, y);
    }
}
