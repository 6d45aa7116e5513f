//! Prime tables, Chebyshev functions and primorial sizes.
//!
//! A [`PrimeTable`] is built once per run and shared read-only by every scan.
//! It carries the running sums `ϑ(p_k) = Σ_{i≤k} log p_i` so that primorials
//! far beyond machine range are handled through their logarithms.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::num::CompensatedSum;

/// Largest sieve bound accepted by [`PrimeTable::build`].
pub const DEFAULT_LIMIT_BUDGET: u64 = 400_000_000;

/// Environment variable naming the on-disk sieve cache directory.
pub const CACHE_ENV: &str = "ABUNDANCY_CACHE_DIR";

const CACHE_MAGIC: &[u8; 4] = b"ABL1";

/// Sorted primes up to a bound together with their cumulative log-sums.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    cum_log: Vec<f64>,
}

/// Which Chebyshev function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    Theta,
    Psi,
}

/// The `n`-th prime with the Cipolla-type bracket diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NthPrime {
    pub n: u64,
    pub value: u64,
    /// `None` for `n = 1`, where `log log n` is undefined.
    pub bounds: Option<CipollaBounds>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CipollaBounds {
    /// `n log n ≤ p_n`
    pub lower_holds: bool,
    /// `p_n ≤ n (log n + log log n)`
    pub upper_holds: bool,
    /// `p_n ≤ n (log n + log log n − 1)`; reported only, this form is
    /// a lower bound in the literature rather than an upper one.
    pub upper_minus_one_holds: bool,
    pub lower: f64,
    pub upper: f64,
    pub upper_minus_one: f64,
}

impl CipollaBounds {
    /// Both sides of `n log n ≤ p_n ≤ n(log n + log log n)`.
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Odd-only sieve of Eratosthenes.
pub(crate) fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // bit i stands for 2i + 1
    let half = (limit / 2 + 1) as usize;
    let mut composite = vec![0u64; half / 64 + 1];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if composite[i >> 6] & (1 << (i & 63)) == 0 {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j >> 6] |= 1 << (j & 63);
                j += p;
            }
        }
        i += 1;
    }
    let estimate = if limit < 100 {
        32
    } else {
        let x = limit as f64;
        (1.26 * x / x.ln()) as usize
    };
    let mut primes = Vec::with_capacity(estimate);
    primes.push(2);
    for i in 1..half {
        let v = 2 * i as u64 + 1;
        if v > limit {
            break;
        }
        if composite[i >> 6] & (1 << (i & 63)) == 0 {
            primes.push(v);
        }
    }
    primes
}

impl PrimeTable {
    /// Builds the table of all primes `≤ limit`.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_LIMIT_BUDGET)
    }

    pub fn build_with_budget(limit: u64, budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!("prime table limit must be ≥ 2, got {limit}")));
        }
        if limit > budget {
            return Err(Error::Resource(format!(
                "prime table limit {limit} exceeds the memory budget {budget}"
            )));
        }
        Ok(Self::from_primes(limit, sieve(limit)))
    }

    fn from_primes(limit: u64, primes: Vec<u64>) -> Self {
        let mut acc = CompensatedSum::new();
        let cum_log = primes
            .iter()
            .map(|&p| {
                acc.add((p as f64).ln());
                acc.value()
            })
            .collect();
        Self { limit, primes, cum_log }
    }

    /// Builds the table, reading and writing the binary cache in `cache_dir`
    /// when one is given.
    pub fn build_cached(limit: u64, cache_dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = cache_dir else {
            return Self::build(limit);
        };
        let path = cache_path(dir, limit);
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(table) = Self::decode(&bytes) {
                if table.limit == limit {
                    return Ok(table);
                }
            }
        }
        let table = Self::build(limit)?;
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&table.encode())?;
        fs::rename(&tmp, &path)?;
        Ok(table)
    }

    /// Like [`build_cached`](Self::build_cached) with the directory taken from
    /// `ABUNDANCY_CACHE_DIR`.
    pub fn build_from_env(limit: u64) -> Result<Self> {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        Self::build_cached(limit, dir.as_deref())
    }

    /// Serializes into the `ABL1` cache format: magic, limit (u64 LE),
    /// count (u64 LE), then LEB128 varint gaps between consecutive primes
    /// (the first gap is measured from zero).
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(20 + self.primes.len());
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&self.limit.to_le_bytes());
        out.extend_from_slice(&(self.primes.len() as u64).to_le_bytes());
        let mut prev = 0u64;
        for &p in &self.primes {
            write_varint(&mut out, p - prev);
            prev = p;
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("prime cache: {msg}"));
        if bytes.len() < 20 || &bytes[..4] != CACHE_MAGIC {
            return Err(bad("missing ABL1 header"));
        }
        let limit = u64::from_le_bytes(bytes[4..12].try_into().unwrap());
        let count = u64::from_le_bytes(bytes[12..20].try_into().unwrap()) as usize;
        let mut reader = &bytes[20..];
        let mut primes = Vec::with_capacity(count);
        let mut prev = 0u64;
        for _ in 0..count {
            let gap = read_varint(&mut reader).map_err(|_| bad("truncated gap stream"))?;
            if gap == 0 && prev != 0 {
                return Err(bad("non-increasing prime sequence"));
            }
            prev += gap;
            primes.push(prev);
        }
        if !reader.is_empty() {
            return Err(bad("trailing bytes"));
        }
        if primes.last().is_some_and(|&p| p > limit) {
            return Err(bad("prime exceeds recorded limit"));
        }
        Ok(Self::from_primes(limit, primes))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `cum_log[k] = Σ_{i≤k} log primes[i]`.
    pub fn cum_log(&self) -> &[f64] {
        &self.cum_log
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `π(x)` for `x ≤ limit`.
    pub fn count_le(&self, x: f64) -> usize {
        if x < 2.0 {
            return 0;
        }
        let bound = x.floor() as u64;
        self.primes.partition_point(|&p| p <= bound)
    }

    /// Primes `≤ x`.
    pub fn primes_le(&self, x: f64) -> &[u64] {
        &self.primes[..self.count_le(x)]
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("x must be non-negative, got {x}")));
        }
        if x > self.limit as f64 {
            return Err(Error::Range(format!("x = {x} exceeds table limit {}", self.limit)));
        }
        Ok(())
    }

    /// `p_n` (1-based) together with the Cipolla bracket flags.
    pub fn nth_prime(&self, n: u64) -> Result<NthPrime> {
        if n == 0 || n as usize > self.primes.len() {
            return Err(Error::Range(format!(
                "n = {n} outside 1..={} for table limit {}",
                self.primes.len(),
                self.limit
            )));
        }
        let value = self.primes[n as usize - 1];
        let bounds = (n >= 2).then(|| {
            let nf = n as f64;
            let (l, ll) = (nf.ln(), nf.ln().ln());
            let lower = nf * l;
            let upper = nf * (l + ll);
            let upper_minus_one = nf * (l + ll - 1.0);
            let v = value as f64;
            CipollaBounds {
                lower_holds: lower <= v,
                upper_holds: v <= upper,
                upper_minus_one_holds: v <= upper_minus_one,
                lower,
                upper,
                upper_minus_one,
            }
        });
        Ok(NthPrime { n, value, bounds })
    }

    /// `ϑ(x) = Σ_{p≤x} log p` or `ψ(x) = Σ_{p^α≤x} log p`.
    pub fn chebyshev(&self, x: f64, kind: ChebyshevKind) -> Result<f64> {
        self.check_x(x)?;
        let count = self.count_le(x);
        let theta = if count == 0 { 0.0 } else { self.cum_log[count - 1] };
        match kind {
            ChebyshevKind::Theta => Ok(theta),
            ChebyshevKind::Psi => {
                let bound = x.floor() as u64;
                let mut acc = CompensatedSum::new();
                acc.add(theta);
                for &p in &self.primes[..count] {
                    let Some(mut pk) = p.checked_mul(p) else { break };
                    if pk > bound {
                        break;
                    }
                    let lp = (p as f64).ln();
                    while pk <= bound {
                        acc.add(lp);
                        match pk.checked_mul(p) {
                            Some(next) => pk = next,
                            None => break,
                        }
                    }
                }
                Ok(acc.value())
            }
        }
    }

    pub fn theta(&self, x: f64) -> Result<f64> {
        self.chebyshev(x, ChebyshevKind::Theta)
    }

    pub fn psi(&self, x: f64) -> Result<f64> {
        self.chebyshev(x, ChebyshevKind::Psi)
    }

    /// `log N_k = ϑ(p_k)` for the `k`-th primorial `N_k = 2·3·…·p_k`.
    pub fn log_primorial(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.primes.len() {
            return Err(Error::Range(format!("primorial index {k} outside 1..={}", self.primes.len())));
        }
        Ok(self.cum_log[k - 1])
    }
}

fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes-{limit}.abl1"))
}

fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn read_varint(reader: &mut &[u8]) -> io::Result<u64> {
    let mut v = 0u64;
    let mut shift = 0;
    loop {
        let mut b = [0u8];
        reader.read_exact(&mut b)?;
        if shift >= 64 {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "varint overflow"));
        }
        v |= u64::from(b[0] & 0x7f) << shift;
        if b[0] & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
    }

    #[test]
    fn small_tables_match_trial_division() {
        assert_eq!(PrimeTable::build(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(PrimeTable::build(2).unwrap().primes(), &[2]);
        let t = PrimeTable::build(100).unwrap();
        assert_eq!(t.len(), 25);
        assert_eq!(*t.primes().last().unwrap(), 97);
        for limit in [3, 4, 5, 49, 50, 121, 1000, 4099] {
            assert_eq!(PrimeTable::build(limit).unwrap().primes(), trial_division_primes(limit).as_slice());
        }
    }

    #[test]
    fn build_errors() {
        assert!(matches!(PrimeTable::build(1), Err(Error::Domain(_))));
        assert!(matches!(PrimeTable::build(0), Err(Error::Domain(_))));
        assert!(matches!(PrimeTable::build_with_budget(1000, 999), Err(Error::Resource(_))));
    }

    #[test]
    fn nth_prime_values_and_bounds() {
        let t = PrimeTable::build(100).unwrap();
        let first = t.nth_prime(1).unwrap();
        assert_eq!(first.value, 2);
        assert!(first.bounds.is_none());
        let fifth = t.nth_prime(5).unwrap();
        assert_eq!(fifth.value, 11);
        let b = fifth.bounds.unwrap();
        assert!(b.lower_holds);
        assert!((b.lower - 8.047_189_562_170_502).abs() < 1e-12);
        assert_eq!(t.nth_prime(25).unwrap().value, 97);
        assert!(matches!(t.nth_prime(26), Err(Error::Range(_))));
        assert!(matches!(t.nth_prime(0), Err(Error::Range(_))));
    }

    #[test]
    fn upper_bound_holds_from_six_on() {
        let t = PrimeTable::build(200_000).unwrap();
        for n in 6..=t.len() as u64 {
            assert!(t.nth_prime(n).unwrap().bounds.unwrap().holds(), "n = {n}");
        }
    }

    #[test]
    fn chebyshev_small_values() {
        let t = PrimeTable::build(100).unwrap();
        assert_eq!(t.theta(1.0).unwrap(), 0.0);
        assert_eq!(t.theta(0.0).unwrap(), 0.0);
        let th = 2f64.ln() + 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((t.theta(10.0).unwrap() - th).abs() < 1e-14);
        assert!((t.theta(10.0).unwrap() - 5.347_107_530_717_468).abs() < 1e-12);
        let ps = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((t.psi(10.0).unwrap() - ps).abs() < 1e-14);
        assert!((t.psi(10.0).unwrap() - 7.832_014_180_505_469).abs() < 1e-12);
        // exact prime powers are counted at the boundary
        assert!((t.psi(8.0).unwrap() - t.psi(7.999).unwrap() - 2f64.ln()).abs() < 1e-14);
        assert!(matches!(t.theta(101.0), Err(Error::Range(_))));
    }

    #[test]
    fn log_primorials() {
        let t = PrimeTable::build(100).unwrap();
        assert!((t.log_primorial(1).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((t.log_primorial(3).unwrap() - 30f64.ln()).abs() < 1e-14);
        assert!((t.log_primorial(9).unwrap() - 223_092_870f64.ln()).abs() < 1e-12);
        assert!(matches!(t.log_primorial(0), Err(Error::Range(_))));
        assert!(matches!(t.log_primorial(26), Err(Error::Range(_))));
    }

    #[test]
    fn cache_roundtrip_and_rejects_garbage() {
        let t = PrimeTable::build(5000).unwrap();
        let bytes = t.encode();
        assert_eq!(&bytes[..4], b"ABL1");
        assert_eq!(u64::from_le_bytes(bytes[4..12].try_into().unwrap()), 5000);
        assert_eq!(u64::from_le_bytes(bytes[12..20].try_into().unwrap()), t.len() as u64);
        assert_eq!(PrimeTable::decode(&bytes).unwrap(), t);
        assert!(PrimeTable::decode(b"ABL0xxxxxxxxxxxxxxxxxxxx").is_err());
        assert!(PrimeTable::decode(&bytes[..bytes.len() - 1]).is_err());
    }

    #[test]
    fn cache_directory_is_used() {
        let dir = tempfile::tempdir().unwrap();
        let a = PrimeTable::build_cached(3000, Some(dir.path())).unwrap();
        let file = dir.path().join("primes-3000.abl1");
        assert!(file.exists());
        let b = PrimeTable::build_cached(3000, Some(dir.path())).unwrap();
        assert_eq!(a, b);
    }
}
