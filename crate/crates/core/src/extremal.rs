//! Record-setting integers: abundancy classes, highly composite and
//! superabundant records, and colossally abundant numbers.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::arith::sigma;
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::primes::PrimeTable;
use crate::ratio::ExactRatio;
use crate::sieve::{ArithRecord, ArithSieve};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbundancyClass {
    Deficient,
    Perfect,
    Abundant,
}

impl AbundancyClass {
    pub fn name(self) -> &'static str {
        match self {
            AbundancyClass::Deficient => "deficient",
            AbundancyClass::Perfect => "perfect",
            AbundancyClass::Abundant => "abundant",
        }
    }
}

/// Compares `σ(N)` with `2N`.
pub fn abundancy_class(f: &FactoredInteger) -> AbundancyClass {
    match sigma(f).cmp(&(f.value() * 2u32)) {
        Ordering::Less => AbundancyClass::Deficient,
        Ordering::Equal => AbundancyClass::Perfect,
        Ordering::Greater => AbundancyClass::Abundant,
    }
}

/// `σ(N) = mN`.
pub fn multiperfect_eq(f: &FactoredInteger, m: u64) -> bool {
    sigma(f) == f.value() * m
}

/// `σ(N) ≥ mN`.
pub fn m_abundant_ge(f: &FactoredInteger, m: u64) -> bool {
    sigma(f) >= f.value() * m
}

/// Outcome of testing `σ(mN) > (m + 1)N` over abundant `N`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultipleAbundancyReport {
    pub pairs_tested: u64,
    /// `(m, N)` where the inequality fails.
    pub counterexamples: Vec<(u64, u64)>,
}

/// Tests `σ(mN) > (m + 1)N` for every abundant `N ≤ n_max` and `1 ≤ m ≤ m_max`.
pub fn multiple_abundancy_check(n_max: u64, m_max: u64) -> Result<MultipleAbundancyReport> {
    let mut report = MultipleAbundancyReport::default();
    if n_max < 1 {
        return Ok(report);
    }
    for rec in ArithSieve::new(1..=n_max)?.records() {
        if rec.sigma <= 2 * rec.n {
            continue;
        }
        let f = FactoredInteger::of_u64(rec.n)?;
        for m in 1..=m_max {
            let mn = f.mul(&FactoredInteger::of_u64(m)?);
            report.pairs_tested += 1;
            if sigma(&mn) <= BigUint::from(m + 1) * rec.n {
                report.counterexamples.push((m, rec.n));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecordKind {
    /// records of `σ₀(n)`
    HighlyComposite,
    /// records of `σ(n)/n`
    Superabundant,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::HighlyComposite => "highly_composite",
            RecordKind::Superabundant => "superabundant",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "highly_composite" => Some(RecordKind::HighlyComposite),
            "superabundant" => Some(RecordKind::Superabundant),
            _ => None,
        }
    }

    /// Key as a fraction `(num, den)`.
    fn key(self, r: &ArithRecord) -> (u64, u64) {
        match self {
            RecordKind::HighlyComposite => (r.sigma0 as u64, 1),
            RecordKind::Superabundant => (r.sigma, r.n),
        }
    }
}

fn key_cmp(a: (u64, u64), b: (u64, u64)) -> Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecordEntry {
    pub n: u64,
    pub key: ExactRatio,
    /// Key of the previous record; `None` for `n = 1`.
    pub predecessor_key: Option<ExactRatio>,
}

/// Every `n ≤ limit` whose key strictly exceeds the keys of all smaller `n`.
///
/// Keys are compared exactly by cross-multiplication in `u128`.
pub fn record_scan(limit: u64, kind: RecordKind) -> Result<Vec<RecordEntry>> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let sieve = ArithSieve::new(1..=limit)?;
    // a global record is also a record within its own block
    let local = sieve.map_blocks(|block| {
        let mut best: Option<(u64, u64)> = None;
        let mut out = Vec::new();
        for r in block {
            let k = kind.key(r);
            if best.map_or(true, |b| key_cmp(k, b) == Ordering::Greater) {
                best = Some(k);
                out.push((r.n, k));
            }
        }
        out
    });
    let mut entries = Vec::new();
    let mut best: Option<(u64, u64)> = None;
    for (n, k) in local.into_iter().flatten() {
        if best.map_or(true, |b| key_cmp(k, b) == Ordering::Greater) {
            entries.push(RecordEntry {
                n,
                key: ExactRatio::new(k.0, k.1),
                predecessor_key: best.map(|b| ExactRatio::new(b.0, b.1)),
            });
            best = Some(k);
        }
    }
    if kind == RecordKind::HighlyComposite {
        for e in &entries {
            let f = FactoredInteger::of_u64(e.n)?;
            if !has_primorial_shape(&f) {
                return Err(Error::Precondition(format!("highly composite {} lacks the primorial exponent shape", e.n)));
            }
        }
    }
    Ok(entries)
}

/// Exponents are non-increasing and the support is `{2, 3, …, p_k}`.
pub fn has_primorial_shape(f: &FactoredInteger) -> bool {
    let mut expected = crate::primes::sieve(f.largest_prime().unwrap_or(1)).into_iter();
    let mut last = u32::MAX;
    for &(p, e) in f.factors() {
        if expected.next() != Some(p) || e > last {
            return false;
        }
        last = e;
    }
    true
}

/// `log(σ(p^{v+1})/σ(p^v)) − (1 + ε) log p`, the log gain of raising the
/// exponent of `p` from `v` to `v + 1` in `σ(N)/N^{1+ε}`.
fn exponent_gain(p: u64, v: u32, eps: f64) -> f64 {
    // σ(p^{v+1})/σ(p^v) = p·(1 + (p − 1)/(p(p^{v+1} − 1)))
    let pf = p as f64;
    let t = (pf - 1.0) / (pf * (pf.powi(v as i32 + 1) - 1.0));
    t.ln_1p() - eps * pf.ln()
}

/// Slack under which a gain counts as a tie.
const TIE_TOL: f64 = 1e-13;

/// Exponent of `p` in the colossally abundant number for `ε`. On an exact
/// tie the larger exponent is taken, so the larger of two tied integers wins.
pub fn ca_exponent(p: u64, eps: f64) -> u32 {
    let mut v = 0;
    while exponent_gain(p, v, eps) >= -TIE_TOL {
        v += 1;
    }
    v
}

/// The closed form `⌊log((p^{1+ε} − 1)/(p^ε − 1))/log p⌋ − 1`, clamped at 0.
pub fn ca_exponent_closed_form(p: u64, eps: f64) -> u32 {
    let pf = p as f64;
    let pe = pf.powf(eps);
    let v = (((pf * pe - 1.0) / (pe - 1.0)).ln() / pf.ln()).floor() - 1.0;
    v.max(0.0) as u32
}

/// The colossally abundant number for `ε > 0`, built prime by prime until
/// the first zero exponent.
pub fn colossally_abundant(eps: f64, table: &PrimeTable) -> Result<FactoredInteger> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    let mut factors = Vec::new();
    for &p in table.primes() {
        let v = ca_exponent(p, eps);
        if v == 0 {
            return Ok(FactoredInteger::from_factors_unchecked(factors));
        }
        factors.push((p, v));
    }
    Err(Error::Range(format!("the prime table up to {} is too short for epsilon = {eps}", table.limit())))
}

/// `log σ(N) − (1 + ε) log N`.
pub fn ca_key(f: &FactoredInteger, eps: f64) -> f64 {
    f.factors()
        .iter()
        .map(|&(p, a)| {
            let pf = p as f64;
            // σ(p^a) = p^a (1 − p^{−(a+1)})/(1 − 1/p)
            (-pf.powi(-(a as i32 + 1))).ln_1p() - (-1.0 / pf).ln_1p() - eps * a as f64 * pf.ln()
        })
        .sum()
}

/// Largest `M ≤ m_max` maximizing `σ(M)/M^{1+ε}`, by exhaustive search.
pub fn ca_oracle(eps: f64, m_max: u64) -> Result<u64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    if m_max == 0 {
        return Err(Error::Domain("m_max must be positive".into()));
    }
    let key = |r: &ArithRecord| (r.sigma as f64).ln() - (1.0 + eps) * (r.n as f64).ln();
    let better = |k: f64, best: f64| k >= best - TIE_TOL * best.abs().max(1.0);
    let parts = ArithSieve::new(1..=m_max)?.map_blocks(|block| {
        let mut best = (f64::NEG_INFINITY, 0);
        for r in block {
            let k = key(r);
            if better(k, best.0) {
                best = (k.max(best.0), r.n);
            }
        }
        best
    });
    let mut best = (f64::NEG_INFINITY, 0);
    for (k, n) in parts {
        if better(k, best.0) {
            best = (k.max(best.0), n);
        }
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: u64) -> FactoredInteger {
        FactoredInteger::of_u64(n).unwrap()
    }

    fn eps_grid() -> Vec<f64> {
        (0..20).map(|i| 2.0 - i as f64 * (1.9 / 20.0)).collect()
    }

    #[test]
    fn classes() {
        assert_eq!(abundancy_class(&fi(6)), AbundancyClass::Perfect);
        assert_eq!(abundancy_class(&fi(7)), AbundancyClass::Deficient);
        assert_eq!(abundancy_class(&fi(12)), AbundancyClass::Abundant);
        assert_eq!(abundancy_class(&FactoredInteger::one()), AbundancyClass::Deficient);
        assert!(multiperfect_eq(&fi(120), 3));
        assert!(!multiperfect_eq(&fi(12), 2));
        assert!(m_abundant_ge(&fi(12), 2));
        assert!(m_abundant_ge(&fi(120), 3));
        assert!(!m_abundant_ge(&fi(120), 4));
    }

    #[test]
    fn record_examples() {
        let n = |v: Vec<RecordEntry>| v.into_iter().map(|e| e.n).collect::<Vec<_>>();
        assert_eq!(n(record_scan(50, RecordKind::HighlyComposite).unwrap()), [1, 2, 4, 6, 12, 24, 36, 48]);
        assert_eq!(n(record_scan(100, RecordKind::Superabundant).unwrap()), [1, 2, 4, 6, 12, 24, 36, 48, 60]);
        assert_eq!(n(record_scan(1, RecordKind::Superabundant).unwrap()), [1]);
        let sa = record_scan(10, RecordKind::Superabundant).unwrap();
        assert_eq!(sa[1].key, ExactRatio::new(3, 2));
        assert_eq!(sa[1].predecessor_key, Some(ExactRatio::one()));
    }

    #[test]
    fn records_are_independent_of_blocking() {
        let hc = record_scan(300_000, RecordKind::HighlyComposite).unwrap();
        let mut best = 0;
        let expected: Vec<u64> = (1..=300_000u64)
            .filter(|&n| {
                let d = crate::arith::sigma_s(&fi(n), 0);
                let d = u64::try_from(d).unwrap();
                (d > best).then(|| best = d).is_some()
            })
            .collect();
        assert_eq!(hc.iter().map(|e| e.n).collect::<Vec<_>>(), expected);
        for w in hc.windows(2) {
            assert!(w[1].key > w[0].key);
        }
    }

    #[test]
    fn shape_check() {
        assert!(has_primorial_shape(&fi(720)));
        assert!(!has_primorial_shape(&fi(10)));
        assert!(!has_primorial_shape(&fi(18)));
        assert!(has_primorial_shape(&FactoredInteger::one()));
    }

    #[test]
    fn ca_examples() {
        let t = PrimeTable::build(1000).unwrap();
        assert!(colossally_abundant(1.0, &t).unwrap().is_one());
        assert_eq!(colossally_abundant(0.5, &t).unwrap().value_u64(), Some(2));
        assert!(colossally_abundant(0.0, &t).is_err());
        assert!(colossally_abundant(-1.0, &t).is_err());
        assert_eq!(ca_oracle(10.0, 1000).unwrap(), 1);
        assert_eq!(ca_oracle(0.5, 100).unwrap(), 2);
        assert_eq!(ca_oracle(0.5, 10_000).unwrap(), 2);
        let ca = colossally_abundant(0.1, &t).unwrap().value_u64().unwrap();
        assert_eq!(ca, ca_oracle(0.1, 100_000).unwrap());
    }

    #[test]
    fn ca_matches_oracle_and_divides() {
        let t = PrimeTable::build(1000).unwrap();
        let grid = eps_grid();
        let cas: Vec<FactoredInteger> = grid.iter().map(|&e| colossally_abundant(e, &t).unwrap()).collect();
        for (e, ca) in grid.iter().zip(&cas) {
            if let Some(n) = ca.value_u64().filter(|&n| n <= 100_000) {
                assert_eq!(n, ca_oracle(*e, 100_000).unwrap(), "eps = {e}");
            }
            let exps: Vec<u32> = ca.factors().iter().map(|f| f.1).collect();
            assert!(exps.windows(2).all(|w| w[0] >= w[1]));
        }
        for w in cas.windows(2) {
            assert!(w[1].div(&w[0]).is_some());
        }
    }

    #[test]
    fn closed_form_agrees_off_critical_points() {
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for i in 1..400 {
                let eps = i as f64 / 200.0;
                assert_eq!(ca_exponent(p, eps), ca_exponent_closed_form(p, eps), "p = {p}, eps = {eps}");
            }
        }
    }

    #[test]
    fn colossal_values_are_superabundant() {
        let t = PrimeTable::build(1000).unwrap();
        let sa: Vec<u64> = record_scan(1_000_000, RecordKind::Superabundant).unwrap().iter().map(|e| e.n).collect();
        for e in (1..200).map(|i| i as f64 / 100.0) {
            if let Some(n) = colossally_abundant(e, &t).unwrap().value_u64().filter(|&n| n <= 1_000_000) {
                assert!(sa.contains(&n), "{n}");
            }
        }
    }

    #[test]
    fn multiples_of_abundant_numbers() {
        let r = multiple_abundancy_check(2000, 10).unwrap();
        assert!(r.pairs_tested > 0);
        assert!(r.counterexamples.is_empty());
    }
}
