//! Integers held as their prime factorization.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::num::CompensatedSum;
use crate::primes::PrimeTable;

/// `N = ∏ pᵢ^αᵢ` with primes strictly increasing and every `αᵢ ≥ 1`.
/// The empty factorization is `N = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactoredInteger {
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Validates ordering, exponents and primality of every base.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Precondition(format!(
                    "primes must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(p, e) in &factors {
            if e == 0 {
                return Err(Error::Precondition(format!("zero exponent on {p}")));
            }
            if !is_prime_u64(p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
        }
        Ok(Self { factors })
    }

    /// Skips validation; callers guarantee sorted certified primes.
    pub(crate) fn from_factors_unchecked(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    /// Factorization of a machine integer by trial division.
    pub fn of_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        let mut factors = Vec::new();
        let mut rem = n;
        let mut push = |p: u64, rem: &mut u64| {
            let mut e = 0;
            while *rem % p == 0 {
                *rem /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(2, &mut rem);
        push(3, &mut rem);
        let mut d = 5u64;
        while d.saturating_mul(d) <= rem {
            push(d, &mut rem);
            push(d + 2, &mut rem);
            d += 6;
        }
        if rem > 1 {
            factors.push((rem, 1));
        }
        Ok(Self { factors })
    }

    /// `k`-th primorial `2·3·…·p_k`.
    pub fn primorial(table: &PrimeTable, k: usize) -> Result<Self> {
        if k > table.len() {
            return Err(Error::Range(format!("primorial index {k} exceeds table size {}", table.len())));
        }
        Ok(Self { factors: table.primes()[..k].iter().map(|&p| (p, 1)).collect() })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    /// `Some(N)` when `N` fits in a `u64`.
    pub fn value_u64(&self) -> Option<u64> {
        let mut acc = 1u64;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    /// `log N = Σ α log p`, compensated.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| e as f64 * (p as f64).ln())
            .collect::<CompensatedSum>()
            .value()
    }

    /// `ω(N)`.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// `P(N)`, the largest prime factor; `None` for `N = 1`.
    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// `v_p(N)`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.max_exponent() <= 1
    }

    /// No exponent reaches `s`.
    pub fn is_s_free(&self, s: u32) -> bool {
        self.max_exponent() < s
    }

    /// Divisible by the fifth power of some prime.
    pub fn has_fifth_power(&self) -> bool {
        self.max_exponent() >= 5
    }

    /// Splits `N = 2^ν · M` with `M` odd.
    pub fn split_two(&self) -> (u32, FactoredInteger) {
        match self.factors.first() {
            Some(&(2, e)) => (e, Self { factors: self.factors[1..].to_vec() }),
            _ => (0, self.clone()),
        }
    }

    /// Radical `∏ p`.
    pub fn radical(&self) -> FactoredInteger {
        Self { factors: self.factors.iter().map(|&(p, _)| (p, 1)).collect() }
    }

    /// `self · other`.
    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Self { factors: out }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &FactoredInteger) -> Option<FactoredInteger> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(p, e) in &self.factors {
            let mut e = e;
            if j < other.factors.len() && other.factors[j].0 == p {
                e = e.checked_sub(other.factors[j].1)?;
                j += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        (j == other.factors.len()).then_some(Self { factors: out })
    }

    /// `gcd(self, other)`.
    pub fn gcd(&self, other: &FactoredInteger) -> FactoredInteger {
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let f = other.valuation(p);
                (f > 0).then_some((p, e.min(f)))
            })
            .collect();
        Self { factors }
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> FactoredInteger {
        if k == 0 {
            return Self::one();
        }
        Self { factors: self.factors.iter().map(|&(p, e)| (p, e * k)).collect() }
    }

    /// All divisors as factorizations, in no particular order.
    pub fn divisors(&self) -> Vec<FactoredInteger> {
        let mut out = vec![Vec::new()];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                for k in 0..=e {
                    let mut v: Vec<(u64, u32)> = d.clone();
                    if k > 0 {
                        v.push((p, k));
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(|factors| Self { factors }).collect()
    }

    /// Möbius function.
    pub fn mobius(&self) -> i32 {
        if self.is_squarefree() {
            if self.omega() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }
}

/// Factors `n` by trial division over the table's primes.
///
/// The cofactor left after dividing out every prime `p ≤ √n` from the table
/// is accepted when it is provably prime: either `table.limit² ≥ cofactor`
/// or it passes deterministic Miller–Rabin.
pub fn factorize(n: u64, table: &PrimeTable) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut rem = n;
    let mut factors = Vec::new();
    for &p in table.primes() {
        if p.saturating_mul(p) > rem {
            break;
        }
        if rem % p == 0 {
            let mut e = 0;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rem > 1 {
        let covered = (table.limit() as u128) * (table.limit() as u128) >= rem as u128;
        if !covered && !is_prime_u64(rem) {
            return Err(Error::IncompleteFactorization(rem.to_string()));
        }
        factors.push((rem, 1));
    }
    Ok(FactoredInteger { factors })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for the whole 64-bit range.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl fmt::Display for FactoredInteger {
    /// `2^4 * 3^2 * 5 * 7`; `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInteger {
    type Err = Error;

    /// Accepts the display form. Repeated or unordered primes are merged;
    /// `1` and a plain integer are accepted too (the latter is factored).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty factorization".into()));
        }
        if !s.contains(['*', '^']) {
            let n: u64 = s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?;
            return Self::of_u64(n);
        }
        let mut acc = FactoredInteger::one();
        for term in s.split('*') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (term, "1"),
            };
            let p: u64 = base.parse().map_err(|_| Error::Parse(format!("bad prime {base:?}")))?;
            let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
            if p == 1 && e >= 1 {
                continue;
            }
            if e == 0 {
                return Err(Error::Parse(format!("zero exponent in {term:?}")));
            }
            if !is_prime_u64(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            acc = acc.mul(&FactoredInteger { factors: vec![(p, e)] });
        }
        Ok(acc)
    }
}

impl TryFrom<&FactoredInteger> for u64 {
    type Error = Error;
    fn try_from(f: &FactoredInteger) -> Result<u64> {
        f.value_u64()
            .or_else(|| f.value().to_u64())
            .ok_or_else(|| Error::Range(format!("{f} exceeds 64 bits")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        let t = PrimeTable::build(100).unwrap();
        assert!(factorize(1, &t).unwrap().is_one());
        assert_eq!(factorize(12, &t).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(9973, &t).unwrap().factors(), &[(9973, 1)]);
        assert!(matches!(factorize(0, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_beyond_table_square() {
        let t = PrimeTable::build(10).unwrap();
        // 101 * 103 has no factor ≤ 10 and is composite
        assert!(matches!(factorize(101 * 103, &t), Err(Error::IncompleteFactorization(_))));
        // a prime cofactor beyond limit² is certified by Miller–Rabin
        assert_eq!(factorize(2 * 1_000_003, &t).unwrap().factors(), &[(2, 1), (1_000_003, 1)]);
    }

    #[test]
    fn text_form() {
        let f: FactoredInteger = "2^4 * 3^2 * 5 * 7".parse().unwrap();
        assert_eq!(f.to_string(), "2^4 * 3^2 * 5 * 7");
        assert_eq!(f.value_u64(), Some(5040));
        assert_eq!("1".parse::<FactoredInteger>().unwrap(), FactoredInteger::one());
        assert_eq!(FactoredInteger::one().to_string(), "1");
        assert_eq!("5040".parse::<FactoredInteger>().unwrap(), f);
        assert_eq!("3 * 2^2 * 2".parse::<FactoredInteger>().unwrap().to_string(), "2^3 * 3");
        assert!("4^2".parse::<FactoredInteger>().is_err());
        assert!("2^0".parse::<FactoredInteger>().is_err());
        assert!("".parse::<FactoredInteger>().is_err());
        assert!("2^x".parse::<FactoredInteger>().is_err());
    }

    #[test]
    fn from_factors_validation() {
        assert!(FactoredInteger::from_factors(vec![(3, 1), (2, 1)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(2, 0)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(9, 1)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(2, 3), (18_446_744_073_709_551_557, 1)]).is_ok());
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "n = {n}");
        }
        // strong pseudoprime to bases 2..=37 products
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn divisor_lattice() {
        let f = FactoredInteger::of_u64(360).unwrap();
        let mut ds: Vec<u64> = f.divisors().iter().map(|d| d.value_u64().unwrap()).collect();
        ds.sort_unstable();
        let brute: Vec<u64> = (1..=360).filter(|d| 360 % d == 0).collect();
        assert_eq!(ds, brute);
        assert_eq!(FactoredInteger::of_u64(30).unwrap().mobius(), -1);
        assert_eq!(FactoredInteger::of_u64(12).unwrap().mobius(), 0);
        assert_eq!(FactoredInteger::one().mobius(), 1);
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..5_000_000) {
            let f = FactoredInteger::of_u64(n).unwrap();
            prop_assert_eq!(f.value_u64(), Some(n));
            let reparsed: FactoredInteger = f.to_string().parse().unwrap();
            prop_assert_eq!(&reparsed, &f);
        }

        #[test]
        fn mul_div_gcd_consistent(a in 1u64..100_000, b in 1u64..100_000) {
            let (fa, fb) = (FactoredInteger::of_u64(a).unwrap(), FactoredInteger::of_u64(b).unwrap());
            let prod = fa.mul(&fb);
            prop_assert_eq!(prod.value_u64(), Some(a * b));
            prop_assert_eq!(prod.div(&fb), Some(fa.clone()));
            prop_assert_eq!(fa.gcd(&fb).value_u64(), Some(num_integer::gcd(a, b)));
        }
    }
}
