//! Floating-point helpers: compensated summation, ulp-padded brackets and
//! the fixed 15-significant-digit rendering used by every report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

/// Neumaier (improved Kahan–Babuška) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
    terms: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
        self.terms += 1;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Number of terms accumulated so far.
    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Σ|xᵢ| over the accumulated terms.
    pub fn abs_total(&self) -> f64 {
        self.abs
    }

    /// Upper bound on |computed − exact| assuming each term carries at most
    /// `term_ulps` ulps of its own error.
    pub fn error_bound(&self, term_ulps: f64) -> f64 {
        let eps = f64::EPSILON;
        (2.0 * eps * self.value().abs()) + (term_ulps * eps + 4.0 * (self.terms as f64) * eps * eps) * self.abs
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `log log x`, NaN when `x ≤ 1`.
#[inline]
pub fn log_log(x: f64) -> f64 {
    x.ln().ln()
}

/// Interval `[lo, hi]` around `v` widened by `ulps` units of relative error.
pub fn pad(v: f64, ulps: f64) -> (f64, f64) {
    let d = v.abs() * ulps * f64::EPSILON + f64::MIN_POSITIVE;
    (v - d, v + d)
}

/// Exact rational value of a finite double.
pub fn f64_to_ratio(v: f64) -> BigRational {
    BigRational::from_f64(v).unwrap_or_else(BigRational::zero)
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Renders `v` with 15 significant digits (round-half-even on the exact
/// binary value), `%g` style: plain notation for decimal exponents in
/// `[-5, 15)`, scientific otherwise, trailing zeros removed.
pub fn fmt15(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.14e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if (-5..15).contains(&exp) {
        let body = if exp >= 0 {
            let split = (exp + 1) as usize;
            let (int, frac) = digits.split_at(split);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("0.{zeros}{}", digits.trim_end_matches('0'))
        };
        format!("{sign}{body}")
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt15_shapes() {
        assert_eq!(fmt15(0.0), "0");
        assert_eq!(fmt15(1.0), "1");
        assert_eq!(fmt15(-2.5), "-2.5");
        assert_eq!(fmt15(19344.0 / 5040.0), "3.83809523809524");
        assert_eq!(fmt15(1e20), "1e20");
        assert_eq!(fmt15(1.5e-7), "1.5e-7");
        assert_eq!(fmt15(0.000123), "0.000123");
        assert_eq!(fmt15(123456789012345.0), "123456789012345");
        assert_eq!(fmt15(1234567890123456.0), "1.23456789012346e15");
        assert_eq!(fmt15(9.999999999999999), "10");
    }

    #[test]
    fn compensated_beats_naive() {
        let mut c = CompensatedSum::new();
        let mut naive = 0.0f64;
        for _ in 0..10_000_000 {
            c.add(0.1);
            naive += 0.1;
        }
        assert!((c.value() - 1_000_000.0).abs() < 1e-9);
        assert!((naive - 1_000_000.0).abs() > 1e-6);
    }

    #[test]
    fn ratio_roundtrip() {
        let r = f64_to_ratio(0.375);
        assert_eq!(ratio_to_f64(&r), 0.375);
    }
}
