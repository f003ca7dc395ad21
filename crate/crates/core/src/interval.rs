//! Rigorous real enclosures: closed intervals with exact rational endpoints.
//!
//! Every operation returns an interval containing the exact image of its
//! operand intervals (outward containment). Endpoints are exact rationals,
//! so there is no rounding model: containment comes from endpoint
//! monotonicity alone. The explicit [`RationalInterval::round_out_to_bits`]
//! widens an interval outward onto a dyadic grid to keep endpoint sizes
//! bounded in long computations; it is never applied implicitly.
//!
//! The module also provides the two constant enclosures everything else
//! builds on: square roots (for sqrt(D)) and the base of the natural
//! logarithm `e` via Taylor partial sums with the factorial tail bound
//! `sum_{j>k} 1/j! < 2/(k+1)!`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval bounds out of order")]
    InvalidBounds,
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("zero interval cannot be raised to a negative power")]
    ZeroToNegativePower,
}

/// Closed interval `[lo, hi]` with `lo <= hi`, both exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::InvalidBounds);
        }
        Ok(RationalInterval { lo, hi })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn one() -> Self {
        Self::point(Rational::one())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::ratio(1, 2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Distance from a point to the interval (zero when contained).
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Rational::zero()
        }
    }

    pub fn add(&self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn abs_val(&self) -> RationalInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if self.lo.abs() > self.hi { self.lo.abs() } else { self.hi.clone() };
            RationalInterval {
                lo: Rational::zero(),
                hi,
            }
        }
    }

    pub fn mul(&self, rhs: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        RationalInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> RationalInterval {
        if c.is_negative() {
            RationalInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RationalInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn shift(&self, c: &Rational) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn recip(&self) -> Result<RationalInterval, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        Ok(RationalInterval {
            lo: self.hi.recip().expect("nonzero endpoint"),
            hi: self.lo.recip().expect("nonzero endpoint"),
        })
    }

    pub fn div(&self, rhs: &RationalInterval) -> Result<RationalInterval, IntervalError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Integer power; even powers of sign-spanning intervals clamp at zero.
    pub fn pow_int(&self, exp: i64) -> Result<RationalInterval, IntervalError> {
        if exp < 0 {
            if self.contains_zero() {
                return Err(IntervalError::ZeroToNegativePower);
            }
            return self.recip()?.pow_int(-exp);
        }
        if exp == 0 {
            return Ok(RationalInterval::one());
        }
        if exp % 2 == 1 {
            // Odd power: monotone.
            return Ok(RationalInterval {
                lo: self.lo.pow_int(exp).expect("positive exponent"),
                hi: self.hi.pow_int(exp).expect("positive exponent"),
            });
        }
        let alo = self.lo.pow_int(exp).expect("positive exponent");
        let ahi = self.hi.pow_int(exp).expect("positive exponent");
        if self.contains_zero() {
            Ok(RationalInterval {
                lo: Rational::zero(),
                hi: if alo > ahi { alo } else { ahi },
            })
        } else {
            let (lo, hi) = if alo <= ahi { (alo, ahi) } else { (ahi, alo) };
            Ok(RationalInterval { lo, hi })
        }
    }

    /// Outward rounding onto the dyadic grid `2^(E - bits)` where `E` is the
    /// magnitude exponent of the larger endpoint. Returns a superset with
    /// endpoint numerators of roughly `bits` bits, widening by at most two
    /// granules. Zero-width and zero intervals pass through unchanged.
    pub fn round_out_to_bits(&self, bits: u32) -> RationalInterval {
        let mag = {
            let la = self.lo.abs();
            let ha = self.hi.abs();
            if la > ha {
                la
            } else {
                ha
            }
        };
        if mag.is_zero() {
            return self.clone();
        }
        let shift = bits as i64 - mag.log2_estimate();
        let two = Rational::from_int(2);
        let scale = two.pow_int(shift).expect("nonzero base");
        let lo = Rational::from_int((&self.lo * &scale).floor_int());
        let hi = Rational::from_int((&self.hi * &scale).ceil_int());
        let inv = scale.recip().expect("power of two");
        RationalInterval {
            lo: lo * &inv,
            hi: hi * &inv,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Two-sided enclosure of sqrt(x) with `lo^2 <= x <= hi^2` and
/// `hi - lo <= width`. Perfect rational squares short-circuit to a point.
///
/// Bracketing starts from the integer square root of floor(x) and is
/// refined by Newton steps `y -> (y + x/y)/2` from above; `x/y` is then a
/// matching lower bound, so every iterate yields a certified bracket.
pub fn sqrt_enclosure(x: &Rational, width: &Rational) -> Result<RationalInterval, IntervalError> {
    if x.is_negative() {
        return Err(IntervalError::NegativeRadicand);
    }
    assert!(width.is_positive(), "width must be positive");
    if let Some(s) = x.sqrt_exact() {
        return Ok(RationalInterval::point(s));
    }
    // x > 0 and irrational square root from here on.
    let mut y = initial_upper_sqrt(x);
    loop {
        let lo = x.checked_div(&y).expect("upper bound is positive");
        let w = &y - &lo;
        debug_assert!(!w.is_negative());
        if &w <= width {
            return Ok(RationalInterval { lo, hi: y });
        }
        // Newton step keeps y an upper bound: y' >= sqrt(x) by AM-GM.
        y = (&y + &lo) * Rational::ratio(1, 2);
        // Endpoint growth control: the iterate's exact numerator doubles in
        // size each step; round it up coarsely while staying an upper bound.
        y = round_up_rational(&y, 128 + width_bits(width));
    }
}

fn width_bits(width: &Rational) -> u32 {
    let est = -width.log2_estimate();
    if est <= 0 {
        8
    } else {
        est as u32 + 8
    }
}

/// Smallest convenient rational upper bound for sqrt(x): isqrt(floor(x)) + 1
/// for x >= 1, else 1 (sqrt of x in (0,1) is < 1).
fn initial_upper_sqrt(x: &Rational) -> Rational {
    if x >= &Rational::one() {
        use num_integer::Roots;
        let fl = x.floor_int();
        Rational::from_int(fl.sqrt() + BigInt::one())
    } else {
        Rational::one()
    }
}

/// Round a positive rational up onto a dyadic grid with ~`bits` fractional bits.
fn round_up_rational(x: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_int(2).pow_int(bits as i64).expect("pow");
    let n = (x * &scale).ceil_int();
    Rational::from_int(n) * scale.recip().expect("power of two")
}

/// Enclosure of `e` of width at most `width`, from exp(1) Taylor partial sums.
///
/// With `S_k = sum_{j=0..k} 1/j!`, the tail satisfies `e - S_k < 2/(k+1)!`,
/// so `[S_k, S_k + 2/(k+1)!]` encloses `e`; `k` is the smallest order whose
/// tail bound fits the width budget. Extending `k` refines the enclosure
/// monotonically (nesting).
pub fn e_enclosure(width: &Rational) -> RationalInterval {
    assert!(width.is_positive(), "width must be positive");
    let mut factorial = BigInt::one(); // k!
    let mut partial = Rational::one(); // S_0
    let mut k: u64 = 0;
    loop {
        let next_fact = &factorial * BigInt::from(k + 1);
        let tail = Rational::new(BigInt::from(2), next_fact.clone()).expect("factorial > 0");
        if k >= 1 && &tail <= width {
            return RationalInterval {
                hi: &partial + &tail,
                lo: partial,
            };
        }
        factorial = next_fact;
        k += 1;
        partial += &Rational::new(BigInt::one(), factorial.clone()).expect("factorial > 0");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn iv(lo: &str, hi: &str) -> RationalInterval {
        RationalInterval::new(r(lo), r(hi)).unwrap()
    }

    #[test]
    fn endpoint_arithmetic() {
        assert_eq!(iv("1", "2").add(&iv("3", "4")), iv("4", "6"));
        assert_eq!(iv("-1", "2").mul(&iv("3", "4")), iv("-4", "8"));
        assert_eq!(iv("1", "2").sub(&iv("3", "4")), iv("-3", "-1"));
        assert_eq!(iv("-2", "1").pow_int(2).unwrap(), iv("0", "4"));
        assert_eq!(iv("-2", "-1").pow_int(2).unwrap(), iv("1", "4"));
        assert_eq!(iv("-2", "-1").pow_int(3).unwrap(), iv("-8", "-1"));
        assert_eq!(iv("1", "2").pow_int(-1).unwrap(), iv("1/2", "1"));
        assert_eq!(iv("-1", "2").abs_val(), iv("0", "2"));
        assert_eq!(iv("-3", "-2").abs_val(), iv("2", "3"));
    }

    #[test]
    fn division_rejects_zero_spanning_divisor() {
        assert_eq!(
            iv("1", "2").div(&iv("-1", "1")),
            Err(IntervalError::DivisionByZeroInterval)
        );
        assert_eq!(iv("1", "2").div(&iv("2", "4")).unwrap(), iv("1/4", "1"));
    }

    #[test]
    fn sqrt_perfect_square_short_circuits() {
        let i = sqrt_enclosure(&r("4"), &r("1/1000")).unwrap();
        assert_eq!(i, RationalInterval::point(r("2")));
        let z = sqrt_enclosure(&r("0"), &r("1")).unwrap();
        assert_eq!(z, RationalInterval::point(r("0")));
        let q = sqrt_enclosure(&r("9/16"), &r("1")).unwrap();
        assert_eq!(q, RationalInterval::point(r("3/4")));
    }

    #[test]
    fn sqrt_five_bracket() {
        let i = sqrt_enclosure(&r("5"), &r("1e-6")).unwrap();
        assert!(i.width() <= r("1e-6"));
        assert!(i.lo().pow_int(2).unwrap() <= r("5"));
        assert!(i.hi().pow_int(2).unwrap() >= r("5"));
        assert!(i.is_subset_of(&iv("2.236067", "2.236068")));
    }

    /// Bisection on y^2 - x as an independent oracle for the Newton bracket.
    fn sqrt_bisect(x: &Rational, steps: u32) -> RationalInterval {
        let mut lo = Rational::zero();
        let mut hi = if x >= &Rational::one() {
            x.clone()
        } else {
            Rational::one()
        };
        for _ in 0..steps {
            let mid = (&lo + &hi) * Rational::ratio(1, 2);
            if mid.pow_int(2).unwrap() <= *x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RationalInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn sqrt_matches_bisection_oracle() {
        for xs in ["2", "5", "7/3", "123/7"] {
            let x = r(xs);
            let oracle = sqrt_bisect(&x, 60);
            let got = sqrt_enclosure(&x, &r("1e-15")).unwrap();
            assert!(got.intersects(&oracle), "sqrt({xs}): {got} vs {oracle}");
        }
    }

    #[test]
    fn sqrt_squared_contains_radicand() {
        for xs in ["2", "3", "5", "10", "1/2", "17/5"] {
            let x = r(xs);
            let i = sqrt_enclosure(&x, &r("1e-9")).unwrap();
            let sq = i.pow_int(2).unwrap();
            assert!(sq.contains(&x), "sqrt({xs})^2 = {sq} misses {xs}");
        }
    }

    #[test]
    fn sqrt_negative_radicand_errors() {
        assert_eq!(
            sqrt_enclosure(&r("-1"), &r("1")),
            Err(IntervalError::NegativeRadicand)
        );
    }

    #[test]
    fn e_enclosure_basics() {
        let a = e_enclosure(&r("1"));
        assert!(a.width() <= r("1"));
        assert!(iv("2.718281", "2.718282").is_subset_of(&a));
        let b = e_enclosure(&r("1e-30"));
        assert!(b.width() <= r("1e-30"));
        let reference = r("2.718281828459045235360287471353");
        assert!(b.distance_to(&reference) <= r("1e-30"));
    }

    #[test]
    fn e_enclosure_nests_under_refinement() {
        let mut outer = e_enclosure(&r("1"));
        for w in ["1/10", "1/1000", "1e-9", "1e-20", "1e-45"] {
            let inner = e_enclosure(&r(w));
            assert!(inner.is_subset_of(&outer), "width {w} broke nesting");
            outer = inner;
        }
    }

    #[test]
    fn round_out_is_outward_and_bounded() {
        let i = iv("355/113", "3552/1130");
        let c = i.round_out_to_bits(24);
        assert!(i.is_subset_of(&c));
        assert!(c.width() <= i.width() + r("1/1000"));
        // Huge magnitudes stay representable with small numerators.
        let big = iv("1e50", "1.0000000001e50");
        let cb = big.round_out_to_bits(64);
        assert!(big.is_subset_of(&cb));
        assert!(cb.lo().numer().bits() <= 80);
    }
}
