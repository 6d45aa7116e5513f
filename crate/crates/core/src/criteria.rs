//! Inequality criteria on `σ(N)/N` and `N/φ(N)`, range scans over the block
//! sieve, and the primorial probe.
//!
//! Machine-size integers are decided exactly: the left side is an exact
//! rational and the right side a rational interval built from the `e^γ`
//! bracket and an ulp-padded `log log N`. Larger inputs go through log space
//! with an explicit error bound, and margins inside the bound come back as
//! [`Verdict::Indeterminate`](crate::report::Verdict) unless an exact
//! re-evaluation settles them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{log_n_over_phi, log_sigma_over_n, phi, sigma};
use crate::consts::{exp_gamma_bracket, zeta, Bracket, EXP_GAMMA};
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::mertens::{Envelope, TailSums};
use crate::num::{f64_to_ratio, pad, CompensatedSum};
use crate::primes::PrimeTable;
use crate::ratio::ExactRatio;
use crate::report::{Criterion, CriterionReport, Mode, Subject, Verdict};
use crate::sieve::{ArithRecord, ArithSieve};

const EPS: f64 = f64::EPSILON;

/// Constant of the unconditional Robin bound.
pub const ROBIN_UNCONDITIONAL_C: f64 = 0.6482;
/// Constant of the totient bound.
pub const RS_TOTIENT_C: f64 = 2.5;
/// Inputs up to this many bits are decided exactly first.
pub const EXACT_BITS: u64 = 128;
/// Indeterminate log-space verdicts are re-evaluated exactly up to this size.
pub const ESCALATE_BITS: u64 = 1 << 16;
/// Largest `n` for which `H_n` is formed as an exact rational.
pub const EXACT_HARMONIC_LIMIT: u64 = 10_000;
/// Below this size s-free margins are reported but not asserted.
pub const SFREE_ASSERT_FROM: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RobinVariant {
    /// `σ(N) < e^γ N log log N`
    Strict,
    /// `σ(N) < e^γ N log log N + 0.6482 N/log log N`
    Unconditional,
}

impl RobinVariant {
    fn criterion(self) -> Criterion {
        match self {
            RobinVariant::Strict => Criterion::RobinStrict,
            RobinVariant::Unconditional => Criterion::RobinUnconditional,
        }
    }

    fn constant(self) -> f64 {
        match self {
            RobinVariant::Strict => 0.0,
            RobinVariant::Unconditional => ROBIN_UNCONDITIONAL_C,
        }
    }

    fn constant_ratio(self) -> BigRational {
        match self {
            RobinVariant::Strict => BigRational::zero(),
            RobinVariant::Unconditional => BigRational::new(BigInt::from(6482), BigInt::from(10_000)),
        }
    }
}

// ---------------------------------------------------------------------------
// Shared evaluation helpers

/// `log N` and a bound on its absolute error.
fn log_n_bounded(f: &FactoredInteger) -> (f64, f64) {
    let s: CompensatedSum = f.factors().iter().map(|&(p, e)| e as f64 * (p as f64).ln()).collect();
    (s.value(), s.error_bound(3.0))
}

/// `log log N` with an enclosing interval.
fn log_log_interval(f: &FactoredInteger) -> (f64, f64, f64) {
    let (l, e) = log_n_bounded(f);
    (l.ln(), pad((l - e).ln(), 4.0).0, pad((l + e).ln(), 4.0).1)
}

fn bits(f: &FactoredInteger) -> u64 {
    (f.ln() / std::f64::consts::LN_2) as u64 + 1
}

fn require_at_least_3(f: &FactoredInteger) -> Result<()> {
    match f.value_u64() {
        Some(n) if n < 3 => Err(Error::Domain(format!("N = {n} is below 3"))),
        _ => Ok(()),
    }
}

/// Rational interval for `a·ℓ + c/ℓ` with `a` in `bracket`, `ℓ ∈ [lo, hi]`,
/// `0 < lo` and `c ≥ 0`.
fn rhs_interval(bracket: &Bracket, c: &BigRational, lo: f64, hi: f64) -> (BigRational, BigRational) {
    debug_assert!(lo > 0.0);
    let (lo, hi) = (f64_to_ratio(lo), f64_to_ratio(hi));
    (&bracket.lo * &lo + c / &hi, &bracket.hi * &hi + c / &lo)
}

/// Settles `lhs < rhs` exactly, or returns `None` when `lhs` falls inside
/// the right-hand interval.
fn decide_below(
    subject: Subject,
    criterion: Criterion,
    lhs: &ExactRatio,
    rhs: &(BigRational, BigRational),
    margin: f64,
) -> Option<CriterionReport> {
    let l = lhs.as_big_rational();
    if l < &rhs.0 {
        Some(CriterionReport::exact(subject, criterion, true, margin))
    } else if l > &rhs.1 {
        Some(CriterionReport::exact(subject, criterion, false, margin))
    } else {
        None
    }
}

/// Margin and error of `a·ℓ + c/ℓ − lhs` for machine-size `n`, where `lhs`
/// carries at most one rounding.
fn float_upper_margin(n: u64, lhs: f64, c: f64) -> (f64, f64) {
    let ll = (n as f64).ln().ln();
    let rhs = EXP_GAMMA * ll + c / ll;
    let err = 16.0 * EPS * (lhs + rhs.abs()) * (1.0 + 1.0 / ll.abs());
    (rhs - lhs, err)
}

/// Margin and error of `e^γ ℓ + c/ℓ − exp(log_lhs)` in log space.
fn log_space_upper_margin(f: &FactoredInteger, log_lhs: &CompensatedSum, c: f64) -> (f64, f64) {
    let lhs = log_lhs.value().exp();
    let err_lhs = lhs * (log_lhs.error_bound(2.0) + 2.0 * EPS);
    let (l, el) = log_n_bounded(f);
    let ll = l.ln();
    let err_ll = el / l + 2.0 * EPS * ll.abs();
    let rhs = EXP_GAMMA * ll + c / ll;
    let err_rhs = EXP_GAMMA * err_ll + c * err_ll / (ll * ll) + 4.0 * EPS * rhs.abs();
    let margin = rhs - lhs;
    (margin, 2.0 * (err_lhs + err_rhs) + 2.0 * EPS * margin.abs())
}

// ---------------------------------------------------------------------------
// Robin

fn robin_exact(f: &FactoredInteger, variant: RobinVariant) -> Option<CriterionReport> {
    let lhs = ExactRatio::from_biguints(sigma(f), f.value());
    let (ll, lo, hi) = log_log_interval(f);
    let rhs = rhs_interval(&exp_gamma_bracket(), &variant.constant_ratio(), lo, hi);
    let margin = EXP_GAMMA * ll + variant.constant() / ll - lhs.to_f64();
    decide_below(f.into(), variant.criterion(), &lhs, &rhs, margin)
}

fn robin_log_space(f: &FactoredInteger, variant: RobinVariant) -> CriterionReport {
    let (margin, err) = log_space_upper_margin(f, &log_sigma_over_n(f), variant.constant());
    CriterionReport::from_margin(f.into(), variant.criterion(), margin, err)
}

/// Robin's inequality in `σ(N)/N` units; margin is `rhs − σ(N)/N`.
pub fn robin_check(f: &FactoredInteger, variant: RobinVariant) -> Result<CriterionReport> {
    require_at_least_3(f)?;
    let size = bits(f);
    if size <= EXACT_BITS {
        if let Some(r) = robin_exact(f, variant) {
            return Ok(r);
        }
    }
    let r = robin_log_space(f, variant);
    if r.is_indeterminate() && size <= ESCALATE_BITS {
        if let Some(exact) = robin_exact(f, variant) {
            return Ok(exact);
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Totient bounds

fn rs_exact(f: &FactoredInteger) -> Option<CriterionReport> {
    let lhs = ExactRatio::from_biguints(f.value(), phi(f));
    let (ll, lo, hi) = log_log_interval(f);
    let c = BigRational::new(BigInt::from(5), BigInt::from(2));
    let rhs = rhs_interval(&exp_gamma_bracket(), &c, lo, hi);
    let margin = EXP_GAMMA * ll + RS_TOTIENT_C / ll - lhs.to_f64();
    decide_below(f.into(), Criterion::RsTotient, &lhs, &rhs, margin)
}

/// `N/φ(N) < e^γ log log N + 2.5/log log N`; margin is `rhs − N/φ(N)`.
pub fn rs_totient_check(f: &FactoredInteger) -> Result<CriterionReport> {
    require_at_least_3(f)?;
    let size = bits(f);
    if size <= EXACT_BITS {
        if let Some(r) = rs_exact(f) {
            return Ok(r);
        }
    }
    let (margin, err) = log_space_upper_margin(f, &log_n_over_phi(f), RS_TOTIENT_C);
    let r = CriterionReport::from_margin(f.into(), Criterion::RsTotient, margin, err);
    if r.is_indeterminate() && size <= ESCALATE_BITS {
        if let Some(exact) = rs_exact(f) {
            return Ok(exact);
        }
    }
    Ok(r)
}

/// One primorial of the Nicolas scan.
#[derive(Debug, Clone, PartialEq)]
pub struct NicolasRow {
    pub k: usize,
    pub p_k: u64,
    /// `log N_k = ϑ(p_k)`
    pub log_n: f64,
    /// `log(N_k/φ(N_k))`
    pub log_n_over_phi: f64,
    pub report: CriterionReport,
}

/// `N_k/φ(N_k) > e^γ log log N_k` for `k = 1..=k_max`, in log space.
/// The margin is `N_k/φ(N_k) − e^γ log log N_k`.
pub fn nicolas_scan_detail(table: &PrimeTable, k_max: usize) -> Result<Vec<NicolasRow>> {
    if k_max > table.len() {
        return Err(Error::Range(format!("k = {k_max} exceeds the {} primes in the table", table.len())));
    }
    let primes = table.primes();
    let cum = table.cum_log();
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let p = primes[k - 1];
        acc.add(-(-1.0 / p as f64).ln_1p());
        let theta = cum[k - 1];
        let ll = theta.ln();
        let lhs = acc.value().exp();
        let err_lhs = lhs * (acc.error_bound(2.0) + 2.0 * EPS);
        let err_rhs = EXP_GAMMA * (4.0 * EPS + 2.0 * EPS * ll.abs()) * (1.0 + ll.abs());
        let margin = lhs - EXP_GAMMA * ll;
        let report = CriterionReport::from_margin(Subject::Primorial(k), Criterion::Nicolas, margin, 2.0 * (err_lhs + err_rhs));
        out.push(NicolasRow { k, p_k: p, log_n: theta, log_n_over_phi: acc.value(), report });
    }
    Ok(out)
}

pub fn nicolas_scan(table: &PrimeTable, k_max: usize) -> Result<Vec<CriterionReport>> {
    Ok(nicolas_scan_detail(table, k_max)?.into_iter().map(|r| r.report).collect())
}

/// The totient bound on every primorial `N_k`, `2 ≤ k ≤ k_max`, sharing the
/// left side with the Nicolas scan.
pub fn rs_totient_primorials(table: &PrimeTable, k_max: usize) -> Result<Vec<CriterionReport>> {
    let rows = nicolas_scan_detail(table, k_max)?;
    Ok(rows
        .iter()
        .skip(1)
        .map(|row| {
            if bits_from_log(row.log_n) <= EXACT_BITS {
                let f = FactoredInteger::primorial(table, row.k).expect("k in range");
                let mut r = rs_totient_check(&f).expect("N ≥ 6");
                r.subject = Subject::Primorial(row.k);
                return r;
            }
            let lhs = row.log_n_over_phi.exp();
            let ll = row.log_n.ln();
            let rhs = EXP_GAMMA * ll + RS_TOTIENT_C / ll;
            let err = 2.0 * row.report.error_bound + 8.0 * EPS * rhs;
            CriterionReport::from_margin(Subject::Primorial(row.k), Criterion::RsTotient, rhs - lhs, err)
        })
        .collect())
}

fn bits_from_log(log_n: f64) -> u64 {
    (log_n / std::f64::consts::LN_2) as u64 + 1
}

// ---------------------------------------------------------------------------
// Lagarias

/// `H_n` as an exact rational, via `lcm(1..n)`.
pub fn harmonic_exact(n: u64) -> ExactRatio {
    if n == 0 {
        return ExactRatio::zero();
    }
    let mut l = BigUint::one();
    for p in crate::primes::sieve(n) {
        let mut q = p;
        while q <= n / p {
            q *= p;
        }
        l *= q;
    }
    let num: BigUint = (1..=n).map(|k| &l / k).sum();
    ExactRatio::from_biguints(num, l)
}

/// `H_n` in floating point with an absolute error bound.
pub fn harmonic_float(n: u64) -> (f64, f64) {
    if n < 1000 {
        let s: CompensatedSum = (1..=n).rev().map(|k| 1.0 / k as f64).collect();
        return (s.value(), s.error_bound(1.0));
    }
    let x = n as f64;
    let x2 = x * x;
    let h = x.ln() + crate::consts::EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2);
    (h, 1.0 / (252.0 * x2 * x2 * x2) + 4.0 * EPS * h)
}

fn lagarias_report(n: u64, sigma_n: f64, h: f64, h_err: f64) -> CriterionReport {
    let e = h.exp();
    let rhs = h + e * h.ln();
    let err = h_err * (1.0 + e * (h.ln() + 1.0 / h)) + 8.0 * EPS * (rhs + sigma_n);
    CriterionReport::from_margin(n.into(), Criterion::Lagarias, rhs - sigma_n, err)
}

fn lagarias_equality() -> CriterionReport {
    CriterionReport {
        subject: 1.into(),
        criterion: Criterion::Lagarias,
        holds: true,
        verdict: Verdict::Equality,
        margin: 0.0,
        mode: Mode::ExactRational,
        error_bound: 0.0,
    }
}

/// `σ(n) < H_n + exp(H_n) log H_n` for `n ≥ 2`; `n = 1` is the equality case.
pub fn lagarias_check(n: u64) -> Result<CriterionReport> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if n == 1 {
        return Ok(lagarias_equality());
    }
    let s = crate::num::ratio_to_f64(&BigRational::from_integer(BigInt::from(sigma(&FactoredInteger::of_u64(n)?))));
    let (h, err) = if n <= EXACT_HARMONIC_LIMIT {
        let h = harmonic_exact(n).to_f64();
        (h, 2.0 * EPS * h)
    } else {
        harmonic_float(n)
    };
    Ok(lagarias_report(n, s, h, err))
}

// ---------------------------------------------------------------------------
// Condition filters and s-free bound

fn log_log_at_least_16(f: &FactoredInteger) -> Result<(f64, f64)> {
    if f.value_u64().is_some_and(|n| n < 16) {
        return Err(Error::Domain("the filter needs N ≥ 16".into()));
    }
    let l = f.ln();
    Ok((l, l.ln()))
}

/// `P(N) < (1 − 1/(9 log log N)) log N`.
pub fn smooth_filter(f: &FactoredInteger) -> Result<bool> {
    let (l, ll) = log_log_at_least_16(f)?;
    Ok((f.largest_prime().unwrap_or(1) as f64) < (1.0 - 1.0 / (9.0 * ll)) * l)
}

/// `2^ν ≤ (log log N)²` where `2^ν ‖ N`.
pub fn dyadic_filter(f: &FactoredInteger) -> Result<bool> {
    let (_, ll) = log_log_at_least_16(f)?;
    Ok(2f64.powi(f.valuation(2) as i32) <= ll * ll)
}

/// Some `p⁵` divides `N`.
pub fn fifth_power_filter(f: &FactoredInteger) -> bool {
    f.has_fifth_power()
}

/// Every exponent is below `s`.
pub fn s_free_filter(f: &FactoredInteger, s: u32) -> bool {
    f.is_s_free(s)
}

/// All filters keyed `smooth`, `dyadic`, `fifth_power` and `s_free_{s}`.
pub fn condition_filters(f: &FactoredInteger, s_values: &[u32]) -> Result<BTreeMap<String, bool>> {
    let mut out = BTreeMap::new();
    out.insert("smooth".to_string(), smooth_filter(f)?);
    out.insert("dyadic".to_string(), dyadic_filter(f)?);
    out.insert("fifth_power".to_string(), fifth_power_filter(f));
    for &s in s_values {
        out.insert(format!("s_free_{s}"), s_free_filter(f, s));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SFreeMargin {
    pub report: CriterionReport,
    /// Below [`SFREE_ASSERT_FROM`]; the lower-order slack dominates there.
    pub report_only: bool,
}

/// `σ(N)/N < (e^γ/ζ(s)) log log N` for `s`-free `N`; margin is `rhs − σ(N)/N`.
pub fn sfree_margin(f: &FactoredInteger, s: u32) -> Result<SFreeMargin> {
    if s < 2 {
        return Err(Error::Domain("s must be at least 2".into()));
    }
    if !f.is_s_free(s) {
        return Err(Error::Precondition(format!("{f} is not {s}-free")));
    }
    require_at_least_3(f)?;
    let z = zeta(s);
    // ζ(5) and ζ(7) are only known here to ten decimals
    let z_err = if matches!(s, 5 | 7) { 2e-10 } else { 4.0 * EPS * z };
    let ls = log_sigma_over_n(f);
    let lhs = ls.value().exp();
    let err_lhs = lhs * (ls.error_bound(2.0) + 2.0 * EPS);
    let (l, el) = log_n_bounded(f);
    let ll = l.ln();
    let rhs = EXP_GAMMA / z * ll;
    let err_rhs = rhs.abs() * (z_err / z + 4.0 * EPS) + EXP_GAMMA / z * (el / l + 2.0 * EPS * ll.abs());
    let margin = rhs - lhs;
    let report = CriterionReport::from_margin(f.into(), Criterion::SFree(s), margin, 2.0 * (err_lhs + err_rhs));
    Ok(SFreeMargin { report, report_only: f.value_u64().is_some_and(|n| n < SFREE_ASSERT_FROM) })
}

// ---------------------------------------------------------------------------
// Primorial probe

/// Growth function `f` in the log-difference envelope `1/(f(log N) log log N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FChoice {
    /// `f(x) = c log^A x`
    LogPower { a: f64, c: f64 },
    /// `f(x) = c x^{1/2}`
    Sqrt { c: f64 },
}

impl FChoice {
    fn envelope(self, log_n: f64) -> f64 {
        let ll = log_n.ln();
        match self {
            FChoice::LogPower { a, c } => 1.0 / (c * ll.powf(a) * ll),
            FChoice::Sqrt { c } => 1.0 / (c * log_n.sqrt() * ll),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimorialProbe {
    pub k: usize,
    pub p_k: u64,
    /// `ϑ(p_k) = log N_k`
    pub log_n: f64,
    /// `log log p_k − log log log N_k`
    pub delta: f64,
    /// `Σ_{p≤p_k} 1/p − log log p_k − B`
    pub remainder: f64,
    pub r_envelope: f64,
    pub f_envelope: f64,
    /// `Σ_{p>p_k} Σ_{n≥2} 1/(n p^n)`, truncated at the table limit.
    pub tail: f64,
    /// `δ + R(p_k)`
    pub lhs_12: f64,
    /// the tail
    pub rhs_12: f64,
}

impl PrimorialProbe {
    /// `lhs_12 > rhs_12`, equivalent to the Nicolas inequality at `N_k`.
    pub fn contradiction_side_holds(&self) -> bool {
        self.lhs_12 > self.rhs_12
    }
}

/// `δ = log log p − log log ϑ`, written to avoid cancellation.
fn log_log_gap(p: f64, theta: f64) -> f64 {
    (((p - theta) / theta).ln_1p() / theta.ln()).ln_1p()
}

pub fn primorial_probe_scan(table: &PrimeTable, k_max: usize, f: FChoice) -> Result<Vec<PrimorialProbe>> {
    if k_max > table.len() {
        return Err(Error::Range(format!("k = {k_max} exceeds the {} primes in the table", table.len())));
    }
    let tails = TailSums::new(table);
    let primes = table.primes();
    let cum = table.cum_log();
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(k_max.saturating_sub(1));
    for k in 1..=k_max {
        let p = primes[k - 1];
        acc.add(1.0 / p as f64);
        if k < 2 {
            continue;
        }
        let pf = p as f64;
        let theta = cum[k - 1];
        let delta = log_log_gap(pf, theta);
        let remainder = acc.value() - pf.ln().ln() - crate::consts::MERTENS_B;
        let tail = tails.from_index(k);
        out.push(PrimorialProbe {
            k,
            p_k: p,
            log_n: theta,
            delta,
            remainder,
            r_envelope: Envelope::Corrected.eval(pf),
            f_envelope: f.envelope(theta),
            tail,
            lhs_12: delta + remainder,
            rhs_12: tail,
        });
    }
    Ok(out)
}

pub fn primorial_probe(table: &PrimeTable, k: usize, f: FChoice) -> Result<PrimorialProbe> {
    if k < 2 {
        return Err(Error::Range("the probe needs k ≥ 2".into()));
    }
    Ok(*primorial_probe_scan(table, k, f)?.last().expect("k ≥ 2"))
}

// ---------------------------------------------------------------------------
// Residue-class extremes

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApExtremes {
    pub a: u64,
    pub q: u64,
    pub x: u64,
    /// `sup σ(N)/(N e^γ log log N)`
    pub sup_sigma_ratio: f64,
    pub argmax_sigma: u64,
    /// `sup N/(φ(N) e^γ log log N)`
    pub sup_phi_ratio: f64,
    pub argmax_phi: u64,
}

/// Suprema over `16 ≤ N ≤ x`, `N ≡ a (mod q)`.
pub fn ap_extremes(a: u64, q: u64, x: u64) -> Result<ApExtremes> {
    if q == 0 || a >= q {
        return Err(Error::Domain(format!("need 0 ≤ a < q, got a = {a}, q = {q}")));
    }
    if x < 16 {
        return Err(Error::Domain("x must be at least 16".into()));
    }
    let sieve = ArithSieve::new(16..=x)?;
    let parts = sieve.map_blocks(|block| {
        let mut best = (f64::NEG_INFINITY, 0u64, f64::NEG_INFINITY, 0u64);
        for r in block.iter().filter(|r| r.n % q == a) {
            let base = EXP_GAMMA * (r.n as f64).ln().ln();
            let s = r.sigma as f64 / r.n as f64 / base;
            let t = r.n as f64 / r.phi as f64 / base;
            if s > best.0 {
                best.0 = s;
                best.1 = r.n;
            }
            if t > best.2 {
                best.2 = t;
                best.3 = r.n;
            }
        }
        best
    });
    let mut best = (f64::NEG_INFINITY, 0u64, f64::NEG_INFINITY, 0u64);
    for b in parts {
        if b.0 > best.0 {
            best.0 = b.0;
            best.1 = b.1;
        }
        if b.2 > best.2 {
            best.2 = b.2;
            best.3 = b.3;
        }
    }
    if best.1 == 0 {
        return Err(Error::Domain(format!("no N in [16, {x}] with N ≡ {a} (mod {q})")));
    }
    Ok(ApExtremes { a, q, x, sup_sigma_ratio: best.0, argmax_sigma: best.1, sup_phi_ratio: best.2, argmax_phi: best.3 })
}

// ---------------------------------------------------------------------------
// Range scans

/// A check run by [`scan_range`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScanCheck {
    RobinStrict,
    RobinUnconditional,
    RsTotient,
    /// strict Robin on `n` passing the smooth filter
    RobinSmooth,
    /// strict Robin on `n` passing the dyadic filter
    RobinDyadic,
    Lagarias,
}

impl ScanCheck {
    pub fn name(self) -> &'static str {
        match self {
            ScanCheck::RobinStrict => "robin_strict",
            ScanCheck::RobinUnconditional => "robin_unconditional",
            ScanCheck::RsTotient => "rs_totient",
            ScanCheck::RobinSmooth => "robin_smooth",
            ScanCheck::RobinDyadic => "robin_dyadic",
            ScanCheck::Lagarias => "lagarias",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub const ALL: [ScanCheck; 6] = [
        ScanCheck::RobinStrict,
        ScanCheck::RobinUnconditional,
        ScanCheck::RsTotient,
        ScanCheck::RobinSmooth,
        ScanCheck::RobinDyadic,
        ScanCheck::Lagarias,
    ];

    fn min_n(self) -> u64 {
        match self {
            ScanCheck::Lagarias => 1,
            ScanCheck::RobinSmooth | ScanCheck::RobinDyadic => 16,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub check: ScanCheck,
    pub report: CriterionReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CheckSummary {
    pub checked: u64,
    pub violations: u64,
    /// Indeterminate float verdicts re-evaluated exactly.
    pub escalated: u64,
    /// `(n, margin)` with the smallest margin, first occurrence.
    pub min_margin: Option<(u64, f64)>,
}

impl CheckSummary {
    fn merge(&mut self, other: &CheckSummary) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.escalated += other.escalated;
        if let Some((n, m)) = other.min_margin {
            if self.min_margin.map_or(true, |(_, cur)| m < cur) {
                self.min_margin = Some((n, m));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeScan {
    pub lo: u64,
    pub hi: u64,
    pub summaries: BTreeMap<ScanCheck, CheckSummary>,
    /// Violations only, or every evaluated report when requested; ordered by
    /// `n`, then by check.
    pub rows: Vec<ScanRow>,
}

impl RangeScan {
    /// `n` of every failing or indeterminate report for `check`.
    pub fn violators(&self, check: ScanCheck) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.check == check && r.report.is_violation())
            .map(|r| match r.report.subject {
                Subject::Natural(n) => n,
                _ => unreachable!("scans report naturals"),
            })
            .collect()
    }
}

fn natural_subject(mut r: CriterionReport, n: u64) -> CriterionReport {
    r.subject = Subject::Natural(n);
    r
}

fn evaluate(check: ScanCheck, rec: &ArithRecord, escalated: &mut u64) -> Option<CriterionReport> {
    let n = rec.n;
    if n < check.min_n() {
        return None;
    }
    let ll = || (n as f64).ln().ln();
    let robin = |variant: RobinVariant, escalated: &mut u64| {
        let lhs = rec.sigma as f64 / n as f64;
        let (margin, err) = float_upper_margin(n, lhs, variant.constant());
        let r = CriterionReport::from_margin(n.into(), variant.criterion(), margin, err);
        if r.is_indeterminate() {
            *escalated += 1;
            let f = FactoredInteger::of_u64(n).expect("n ≥ 1");
            return natural_subject(robin_check(&f, variant).expect("n ≥ 3"), n);
        }
        r
    };
    match check {
        ScanCheck::RobinStrict => Some(robin(RobinVariant::Strict, escalated)),
        ScanCheck::RobinUnconditional => Some(robin(RobinVariant::Unconditional, escalated)),
        ScanCheck::RobinSmooth => {
            let smooth = (rec.largest_prime as f64) < (1.0 - 1.0 / (9.0 * ll())) * (n as f64).ln();
            smooth.then(|| robin(RobinVariant::Strict, escalated))
        }
        ScanCheck::RobinDyadic => {
            let dyadic = 2f64.powi(rec.nu2 as i32) <= ll() * ll();
            dyadic.then(|| robin(RobinVariant::Strict, escalated))
        }
        ScanCheck::RsTotient => {
            let lhs = n as f64 / rec.phi as f64;
            let (margin, err) = float_upper_margin(n, lhs, RS_TOTIENT_C);
            let r = CriterionReport::from_margin(n.into(), Criterion::RsTotient, margin, err);
            if r.is_indeterminate() {
                *escalated += 1;
                let f = FactoredInteger::of_u64(n).expect("n ≥ 1");
                return Some(natural_subject(rs_totient_check(&f).expect("n ≥ 3"), n));
            }
            Some(r)
        }
        ScanCheck::Lagarias => {
            if n == 1 {
                return Some(lagarias_equality());
            }
            let (h, err) = harmonic_float(n);
            let r = lagarias_report(n, rec.sigma as f64, h, err);
            if r.is_indeterminate() && n <= EXACT_HARMONIC_LIMIT {
                *escalated += 1;
                return Some(lagarias_check(n).expect("n ≥ 1"));
            }
            Some(r)
        }
    }
}

/// Runs `checks` on every `n` in `lo..=hi` in one pass of the block sieve.
/// With `keep_all` every report is kept, otherwise only violations.
pub fn scan_range(lo: u64, hi: u64, checks: &[ScanCheck], keep_all: bool) -> Result<RangeScan> {
    let sieve = ArithSieve::new(lo..=hi)?;
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let parts = sieve.map_blocks(|block| {
        let mut summaries: BTreeMap<ScanCheck, CheckSummary> = checks.iter().map(|&c| (c, CheckSummary::default())).collect();
        let mut rows = Vec::new();
        for rec in block {
            for &check in &checks {
                let summary = summaries.get_mut(&check).expect("present");
                let Some(report) = evaluate(check, rec, &mut summary.escalated) else { continue };
                summary.checked += 1;
                if summary.min_margin.map_or(true, |(_, m)| report.margin < m) && report.verdict != Verdict::Equality {
                    summary.min_margin = Some((rec.n, report.margin));
                }
                let violation = report.is_violation();
                if violation {
                    summary.violations += 1;
                }
                if keep_all || violation {
                    rows.push(ScanRow { check, report });
                }
            }
        }
        (summaries, rows)
    });
    let mut summaries: BTreeMap<ScanCheck, CheckSummary> = checks.iter().map(|&c| (c, CheckSummary::default())).collect();
    let mut rows = Vec::new();
    for (s, r) in parts {
        for (c, part) in &s {
            summaries.get_mut(c).expect("present").merge(part);
        }
        rows.extend(r);
    }
    Ok(RangeScan { lo, hi, summaries, rows })
}
