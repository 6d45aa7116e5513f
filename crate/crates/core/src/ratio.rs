use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::num::ratio_to_f64;

/// Reduced arbitrary-precision rational with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        let den = denominator.into();
        assert!(!den.is_zero(), "zero denominator");
        Self(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn from_biguints(num: BigUint, den: BigUint) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    /// Natural logarithm of a positive ratio, accurate for values whose
    /// numerator and denominator overflow `f64`.
    pub fn ln(&self) -> f64 {
        assert!(self.0.is_positive(), "logarithm of a non-positive ratio");
        let (num, den) = (self.numer(), self.denom());
        if num < &(den << 1) && den < &(num << 1) {
            // near 1: avoid cancellation between the two logarithms
            return ratio_to_f64(&BigRational::new(num - den, den.clone())).ln_1p();
        }
        big_ln(num) - big_ln(den)
    }

    /// Sign of `self − other`.
    pub fn cmp_to(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// `gcd(numerator, denominator)`; always 1 for a constructed value.
    pub fn gcd_parts(&self) -> BigInt {
        self.numer().gcd(self.denom())
    }
}

fn big_ln(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return ratio_to_f64(&BigRational::from_integer(n.clone())).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    ratio_to_f64(&BigRational::from_integer(top)).ln() + shift as f64 * std::f64::consts::LN_2
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<u64> for ExactRatio {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl Mul for ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &rhs.0)
    }
}

impl Div for ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 / &rhs.0)
    }
}

impl Add for ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 + &rhs.0)
    }
}

impl Sub for ExactRatio {
    type Output = ExactRatio;
    fn sub(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn sub(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 - &rhs.0)
    }
}

impl std::iter::Sum for ExactRatio {
    fn sum<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for ExactRatio {
    fn product<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::one(), |a, b| a * b)
    }
}

impl fmt::Display for ExactRatio {
    /// `num/den`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}
