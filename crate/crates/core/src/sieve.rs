//! Segmented multiplicative sieve.
//!
//! Every integer in a range is factored by striking out multiples of the
//! primes up to `√hi`; whatever cofactor survives is a single large prime.
//! Blocks are independent, so they are processed on the rayon pool and the
//! per-block results come back in block order regardless of scheduling.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::sieve;

/// Default block length (integers per segment).
pub const BLOCK_LEN: u64 = 1 << 16;

/// Largest upper bound accepted for range scans.
pub const SCAN_BUDGET: u64 = 1_000_000_000;

/// Multiplicative data of a single integer `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArithRecord {
    pub n: u64,
    /// σ(n)
    pub sigma: u64,
    /// φ(n)
    pub phi: u64,
    /// σ₀(n)
    pub sigma0: u32,
    /// ω(n)
    pub omega: u8,
    /// `v₂(n)`
    pub nu2: u8,
    pub max_exp: u8,
    /// P(n); 1 for n = 1
    pub largest_prime: u64,
}

impl ArithRecord {
    /// Odd part `n / 2^ν`.
    pub fn odd_part(&self) -> u64 {
        self.n >> self.nu2
    }

    pub fn is_squarefree(&self) -> bool {
        self.max_exp <= 1
    }
}

/// Sieve over `lo..=hi` in blocks of [`BLOCK_LEN`].
#[derive(Debug, Clone)]
pub struct ArithSieve {
    lo: u64,
    hi: u64,
    base: Vec<u64>,
    block_len: u64,
}

impl ArithSieve {
    pub fn new(range: RangeInclusive<u64>) -> Result<Self> {
        let (lo, hi) = range.into_inner();
        if lo == 0 {
            return Err(Error::Domain("sieve range must start at 1 or above".into()));
        }
        if hi > SCAN_BUDGET {
            return Err(Error::Resource(format!("scan bound {hi} exceeds budget {SCAN_BUDGET}")));
        }
        let root = (hi as f64).sqrt() as u64 + 1;
        Ok(Self { lo, hi, base: sieve(root.max(2)), block_len: BLOCK_LEN })
    }

    pub fn with_block_len(mut self, len: u64) -> Self {
        self.block_len = len.max(1);
        self
    }

    fn blocks(&self) -> Vec<(u64, u64)> {
        if self.lo > self.hi {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut start = self.lo;
        loop {
            let end = start.saturating_add(self.block_len - 1).min(self.hi);
            out.push((start, end));
            if end == self.hi {
                break;
            }
            start = end + 1;
        }
        out
    }

    /// Fills the records of `start..=end`.
    pub fn block(&self, start: u64, end: u64) -> Vec<ArithRecord> {
        let len = (end - start + 1) as usize;
        let mut rem: Vec<u64> = (start..=end).collect();
        let mut recs: Vec<ArithRecord> = (start..=end)
            .map(|n| ArithRecord { n, sigma: 1, phi: 1, sigma0: 1, largest_prime: 1, ..Default::default() })
            .collect();
        for &p in &self.base {
            if p * p > end {
                break;
            }
            let first = start.div_ceil(p) * p;
            let mut m = first;
            while m <= end {
                let i = (m - start) as usize;
                let r = &mut rem[i];
                let mut e = 0u32;
                let mut pe = 1u64;
                while *r % p == 0 {
                    *r /= p;
                    pe *= p;
                    e += 1;
                }
                let rec = &mut recs[i];
                rec.sigma *= (pe * p - 1) / (p - 1);
                rec.phi *= pe / p * (p - 1);
                rec.sigma0 *= e + 1;
                rec.omega += 1;
                rec.max_exp = rec.max_exp.max(e as u8);
                rec.largest_prime = p;
                if p == 2 {
                    rec.nu2 = e as u8;
                }
                m += p;
            }
        }
        for i in 0..len {
            let r = rem[i];
            if r > 1 {
                let rec = &mut recs[i];
                rec.sigma *= r + 1;
                rec.phi *= r - 1;
                rec.sigma0 *= 2;
                rec.omega += 1;
                rec.max_exp = rec.max_exp.max(1);
                rec.largest_prime = r;
            }
        }
        recs
    }

    /// Applies `f` to every block in parallel; results are in block order.
    pub fn map_blocks<R, F>(&self, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(&[ArithRecord]) -> R + Sync,
    {
        self.blocks()
            .into_par_iter()
            .map(|(s, e)| f(&self.block(s, e)))
            .collect()
    }

    /// All records of the range, in order. Intended for modest ranges.
    pub fn records(&self) -> Vec<ArithRecord> {
        self.map_blocks(|b| b.to_vec()).into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::gcd;

    fn brute(n: u64) -> ArithRecord {
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let primes: Vec<u64> = divisors
            .iter()
            .copied()
            .filter(|&d| d > 1 && (2..d).all(|k| d % k != 0))
            .collect();
        let max_exp = primes
            .iter()
            .map(|&p| {
                let (mut m, mut e) = (n, 0u8);
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                e
            })
            .max()
            .unwrap_or(0);
        ArithRecord {
            n,
            sigma: divisors.iter().sum(),
            phi: (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64,
            sigma0: divisors.len() as u32,
            omega: primes.len() as u8,
            nu2: n.trailing_zeros() as u8,
            max_exp,
            largest_prime: primes.last().copied().unwrap_or(1),
        }
    }

    #[test]
    fn matches_brute_force() {
        let recs = ArithSieve::new(1..=3000).unwrap().with_block_len(97).records();
        assert_eq!(recs.len(), 3000);
        for r in recs {
            assert_eq!(r, brute(r.n));
        }
    }

    #[test]
    fn offset_ranges_agree() {
        let whole = ArithSieve::new(1..=200_000).unwrap().records();
        let part = ArithSieve::new(150_001..=200_000).unwrap().with_block_len(1000).records();
        assert_eq!(&whole[150_000..], part.as_slice());
    }

    #[test]
    fn rejects_zero_and_budget() {
        assert!(ArithSieve::new(0..=10).is_err());
        assert!(matches!(ArithSieve::new(1..=SCAN_BUDGET + 1), Err(Error::Resource(_))));
    }
}
