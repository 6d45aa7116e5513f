//! Harmonic sums, prime-reciprocal sums and Euler products measured against
//! their main terms and remainder envelopes.

use num_integer::Integer;

use crate::arith::phi;
use crate::consts::{zeta, EULER_GAMMA, EXP_GAMMA, MERTENS_B, SIX_OVER_PI_SQ};
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::num::CompensatedSum;
use crate::primes::PrimeTable;
use crate::report::{Criterion, CriterionReport};

/// One comparison of an empirical sum or product with its predicted value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderSample {
    pub x: f64,
    pub empirical: f64,
    pub main_term: f64,
    /// `empirical − main_term`
    pub residual: f64,
    pub envelope: f64,
    pub within: bool,
}

impl RemainderSample {
    pub fn new(x: f64, empirical: f64, main_term: f64, envelope: f64) -> Self {
        let residual = empirical - main_term;
        Self { x, empirical, main_term, residual, envelope, within: residual.abs() <= envelope }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantEstimate {
    /// One of `gamma`, `B`, `B_aq`, `gamma_aq`, `A_plus`, `A_minus`.
    pub name: &'static str,
    pub method: &'static str,
    pub value: f64,
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
}

impl ConstantEstimate {
    fn new(name: &'static str, method: &'static str, value: f64, reference: Option<f64>) -> Self {
        Self { name, method, value, reference, abs_error: reference.map(|r| (value - r).abs()) }
    }
}

/// Additive constant and envelope constant fitted over a log-spaced grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantFit {
    pub constant: f64,
    pub envelope_constant: f64,
    /// Root-mean-square of the fit residuals.
    pub rms: f64,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub points: usize,
}

const FIT_POINTS: usize = 48;

/// `n` points from `lo` to `hi`, evenly spaced in `log x`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 1);
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Fits `constant` in `values[i] ≈ shape(x_i) + constant` by least squares and
/// sets the envelope constant to twice the largest `|residual|/g(x_i)`.
fn fit_constant(xs: &[f64], values: &[f64], shape: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> ConstantFit {
    let diffs: Vec<f64> = xs.iter().zip(values).map(|(&x, &v)| v - shape(x)).collect();
    let constant = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let rms = (diffs.iter().map(|d| (d - constant).powi(2)).sum::<f64>() / diffs.len() as f64).sqrt();
    let ratio = xs.iter().zip(&diffs).map(|(&x, d)| (d - constant).abs() / g(x)).fold(0.0, f64::max);
    ConstantFit {
        constant,
        envelope_constant: 2.0 * ratio,
        rms,
        grid_lo: xs[0],
        grid_hi: xs[xs.len() - 1],
        points: xs.len(),
    }
}

fn sort_order(xs: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    order
}

// ---------------------------------------------------------------------------
// Harmonic sums

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HarmonicVariant {
    /// `Σ_{n≤x} 1/n`
    Plain,
    /// `Σ_{n≤x, n≡a (mod q)} 1/n`
    Ap { a: u64, q: u64 },
    /// `Σ_{n≤x, gcd(n,N)=1} 1/n`
    Coprime(u64),
    /// `Σ_{n≤x squarefree} 1/n`
    Squarefree,
    /// `Σ_{n≤x} log^k n / n`
    LogPower(u32),
    /// `Σ_{2≤n≤x} 1/(n log n)`
    InverseLog,
}

impl HarmonicVariant {
    fn min_x(&self) -> f64 {
        match self {
            HarmonicVariant::InverseLog => 2.0,
            _ => 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            HarmonicVariant::Ap { q: 0, .. } => Err(Error::Domain("modulus must be positive".into())),
            HarmonicVariant::Coprime(0) => Err(Error::Domain("N must be positive".into())),
            _ => Ok(()),
        }
    }

    /// Main term without its additive constant.
    fn shape(&self, x: f64) -> f64 {
        let l = x.ln();
        match self {
            HarmonicVariant::Plain => l,
            HarmonicVariant::Ap { q, .. } => l / *q as f64,
            HarmonicVariant::Coprime(n) => {
                let f = FactoredInteger::of_u64(*n).expect("positive");
                let p: f64 = f.factors().iter().map(|&(p, _)| 1.0 - 1.0 / p as f64).product();
                p * l
            }
            HarmonicVariant::Squarefree => SIX_OVER_PI_SQ * l,
            HarmonicVariant::LogPower(k) => l.powi(*k as i32 + 1) / (*k + 1) as f64,
            HarmonicVariant::InverseLog => l.ln(),
        }
    }

    /// Order of the error term.
    fn error_shape(&self, x: f64) -> f64 {
        match self {
            HarmonicVariant::Squarefree => x.powf(-0.5),
            HarmonicVariant::LogPower(k) => x.ln().powi(*k as i32).max(1.0) / x,
            HarmonicVariant::InverseLog => 1.0 / (x * x.ln()),
            _ => 1.0 / x,
        }
    }
}

fn squarefree_flags(max: u64) -> Vec<bool> {
    let mut flags = vec![true; max as usize + 1];
    let mut d = 2u64;
    while d * d <= max {
        let sq = d * d;
        for m in (sq..=max).step_by(sq as usize) {
            flags[m as usize] = false;
        }
        d += 1;
    }
    flags
}

/// Empirical sums at each `x` in a single pass.
fn harmonic_prefix(variant: &HarmonicVariant, xs: &[f64]) -> Vec<f64> {
    let max = xs.iter().fold(0.0f64, |m, &x| m.max(x)).floor() as u64;
    let squarefree = matches!(variant, HarmonicVariant::Squarefree).then(|| squarefree_flags(max));
    let mut out = vec![0.0; xs.len()];
    let mut acc = CompensatedSum::new();
    let mut n = 0u64;
    for i in sort_order(xs) {
        let target = xs[i].floor() as u64;
        while n < target {
            n += 1;
            let nf = n as f64;
            let term = match variant {
                HarmonicVariant::Plain => Some(1.0 / nf),
                HarmonicVariant::Ap { a, q } => (n % q == a % q).then(|| 1.0 / nf),
                HarmonicVariant::Coprime(m) => (n.gcd(m) == 1).then(|| 1.0 / nf),
                HarmonicVariant::Squarefree => squarefree.as_ref().expect("flags")[n as usize].then(|| 1.0 / nf),
                HarmonicVariant::LogPower(k) => Some(nf.ln().powi(*k as i32) / nf),
                HarmonicVariant::InverseLog => (n >= 2).then(|| 1.0 / (nf * nf.ln())),
            };
            if let Some(t) = term {
                acc.add(t);
            }
        }
        out[i] = acc.value();
    }
    out
}

/// Fitted constant and envelope for a harmonic variant. The plain sum uses
/// `γ` and the exact envelope `1/⌊x⌋` instead of fitted values.
pub fn harmonic_fit(variant: &HarmonicVariant) -> Result<ConstantFit> {
    variant.validate()?;
    let xs = log_grid(1e3, 1e5, FIT_POINTS);
    let values = harmonic_prefix(variant, &xs);
    let mut fit = fit_constant(&xs, &values, |x| variant.shape(x), |x| variant.error_shape(x));
    if *variant == HarmonicVariant::Plain {
        fit.constant = EULER_GAMMA;
        fit.envelope_constant = 1.0;
    }
    Ok(fit)
}

pub fn harmonic_sum(x: f64, variant: &HarmonicVariant) -> Result<RemainderSample> {
    Ok(harmonic_grid(&[x], variant)?.remove(0))
}

pub fn harmonic_grid(xs: &[f64], variant: &HarmonicVariant) -> Result<Vec<RemainderSample>> {
    variant.validate()?;
    if let Some(&x) = xs.iter().find(|&&x| !(x >= variant.min_x())) {
        return Err(Error::Domain(format!("x = {x} is below {}", variant.min_x())));
    }
    let fit = harmonic_fit(variant)?;
    let values = harmonic_prefix(variant, xs);
    Ok(xs
        .iter()
        .zip(values)
        .map(|(&x, v)| {
            let envelope = match variant {
                HarmonicVariant::Plain => 1.0 / x.floor(),
                _ => fit.envelope_constant * variant.error_shape(x),
            };
            RemainderSample::new(x, v, variant.shape(x) + fit.constant, envelope)
        })
        .collect())
}

/// Least-squares slope of `Σ_{n≡a (q)} 1/n` against `log x`, next to the two
/// candidate slopes `1/φ(q)` and `1/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub fitted: f64,
    pub intercept: f64,
    pub over_phi_q: f64,
    pub over_q: f64,
}

impl SlopeFit {
    /// Whether the data sits closer to `1/q` than to `1/φ(q)`.
    pub fn prefers_over_q(&self) -> bool {
        (self.fitted - self.over_q).abs() <= (self.fitted - self.over_phi_q).abs()
    }
}

pub fn ap_harmonic_slope(a: u64, q: u64, x_max: f64) -> Result<SlopeFit> {
    let variant = HarmonicVariant::Ap { a, q };
    variant.validate()?;
    let xs = log_grid(x_max.min(1e3), x_max, FIT_POINTS);
    let ys = harmonic_prefix(&variant, &xs);
    let ls: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let n = xs.len() as f64;
    let (ml, my) = (ls.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = ls.iter().zip(&ys).map(|(l, y)| (l - ml) * (y - my)).sum();
    let sxx: f64 = ls.iter().map(|l| (l - ml).powi(2)).sum();
    let fitted = sxy / sxx;
    Ok(SlopeFit { fitted, intercept: my - fitted * ml, over_phi_q: 1.0 / phi_u64(q) as f64, over_q: 1.0 / q as f64 })
}

fn phi_u64(q: u64) -> u64 {
    let f = FactoredInteger::of_u64(q).expect("positive");
    u64::try_from(phi(&f)).expect("φ(q) ≤ q")
}

// ---------------------------------------------------------------------------
// Prime sums

/// Unconditional remainder envelope for `Σ 1/p − log log x − B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Envelope {
    /// `1/(10 log² x) + 4/(15 log² x)`
    Printed,
    /// `1/(10 log² x) + 4/(15 log³ x)`
    #[default]
    Corrected,
}

impl Envelope {
    pub fn eval(self, x: f64) -> f64 {
        let l = x.ln();
        match self {
            Envelope::Printed => 1.0 / (10.0 * l * l) + 4.0 / (15.0 * l * l),
            Envelope::Corrected => 1.0 / (10.0 * l * l) + 4.0 / (15.0 * l * l * l),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Envelope::Printed => "printed",
            Envelope::Corrected => "corrected",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "printed" => Some(Envelope::Printed),
            "corrected" => Some(Envelope::Corrected),
            _ => None,
        }
    }
}

/// Remainder bound conditional on the Riemann hypothesis: `(3 log x + 4)/(8π√x)`.
pub fn rh_envelope(x: f64) -> f64 {
    (3.0 * x.ln() + 4.0) / (8.0 * std::f64::consts::PI * x.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeSumVariant {
    /// `Σ 1/p`
    InvP,
    /// `Σ 1/(p − 1)`
    InvPMinus1,
    /// `Σ 1/(p + 1)`
    InvPPlus1,
    /// `Σ_{p≡a (q)} 1/p`
    Ap { a: u64, q: u64 },
}

impl PrimeSumVariant {
    fn term(self, p: u64) -> Option<f64> {
        let pf = p as f64;
        match self {
            PrimeSumVariant::InvP => Some(1.0 / pf),
            PrimeSumVariant::InvPMinus1 => Some(1.0 / (pf - 1.0)),
            PrimeSumVariant::InvPPlus1 => Some(1.0 / (pf + 1.0)),
            PrimeSumVariant::Ap { a, q } => (p % q == a % q).then(|| 1.0 / pf),
        }
    }
}

fn check_range(table: &PrimeTable, x: f64) -> Result<()> {
    if !(x >= 2.0) || x > table.limit() as f64 {
        return Err(Error::Range(format!("x = {x} outside [2, {}]", table.limit())));
    }
    Ok(())
}

/// Sums of `f(p)` over `p ≤ x` for every `x`, in a single pass over the table.
fn prime_prefix(table: &PrimeTable, xs: &[f64], f: impl Fn(u64) -> Option<f64>) -> Vec<f64> {
    let primes = table.primes();
    let mut out = vec![0.0; xs.len()];
    let mut acc = CompensatedSum::new();
    let mut k = 0usize;
    for i in sort_order(xs) {
        while k < primes.len() && primes[k] as f64 <= xs[i] {
            if let Some(t) = f(primes[k]) {
                acc.add(t);
            }
            k += 1;
        }
        out[i] = acc.value();
    }
    out
}

/// `A₋ = B + Σ_{p ≤ limit} 1/(p(p − 1))`
pub fn a_minus(table: &PrimeTable) -> f64 {
    let s: CompensatedSum = table.primes().iter().map(|&p| 1.0 / (p as f64 * (p as f64 - 1.0))).collect();
    MERTENS_B + s.value()
}

/// `A₊ = B − Σ_{p ≤ limit} 1/(p(p + 1))`
pub fn a_plus(table: &PrimeTable) -> f64 {
    let s: CompensatedSum = table.primes().iter().map(|&p| 1.0 / (p as f64 * (p as f64 + 1.0))).collect();
    MERTENS_B - s.value()
}

/// Fitted `B_{a,q}` with main term `(1/φ(q)) log log x + B_{a,q}` and
/// envelope `K/log x`.
pub fn prime_ap_fit(table: &PrimeTable, a: u64, q: u64) -> Result<ConstantFit> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let hi = table.limit() as f64;
    let lo = (hi / 100.0).clamp(2.0, 1e3);
    let xs = log_grid(lo, hi, FIT_POINTS);
    let variant = PrimeSumVariant::Ap { a, q };
    let values = prime_prefix(table, &xs, |p| variant.term(p));
    let slope = 1.0 / phi_u64(q) as f64;
    Ok(fit_constant(&xs, &values, |x| slope * x.ln().ln(), |x| 1.0 / x.ln()))
}

pub fn prime_sum(table: &PrimeTable, x: f64, variant: PrimeSumVariant) -> Result<RemainderSample> {
    prime_sum_with(table, x, variant, Envelope::Corrected)
}

pub fn prime_sum_with(table: &PrimeTable, x: f64, variant: PrimeSumVariant, envelope: Envelope) -> Result<RemainderSample> {
    Ok(prime_sum_grid(table, &[x], variant, envelope)?.remove(0))
}

/// Prime sums at many `x`. For `1/(p ∓ 1)` the envelope adds `1/⌊x⌋`, which
/// bounds the omitted `Σ_{p > x} 1/(p(p ∓ 1))`.
pub fn prime_sum_grid(
    table: &PrimeTable,
    xs: &[f64],
    variant: PrimeSumVariant,
    envelope: Envelope,
) -> Result<Vec<RemainderSample>> {
    for &x in xs {
        check_range(table, x)?;
    }
    let (slope, constant, ap_envelope) = match variant {
        PrimeSumVariant::InvP => (1.0, MERTENS_B, None),
        PrimeSumVariant::InvPMinus1 => (1.0, a_minus(table), None),
        PrimeSumVariant::InvPPlus1 => (1.0, a_plus(table), None),
        PrimeSumVariant::Ap { a, q } => {
            let fit = prime_ap_fit(table, a, q)?;
            (1.0 / phi_u64(q) as f64, fit.constant, Some(fit.envelope_constant))
        }
    };
    let values = prime_prefix(table, xs, |p| variant.term(p));
    Ok(xs
        .iter()
        .zip(values)
        .map(|(&x, v)| {
            let env = match (variant, ap_envelope) {
                (_, Some(k)) => k / x.ln(),
                (PrimeSumVariant::InvP, _) => envelope.eval(x),
                _ => envelope.eval(x) + 1.0 / x.floor(),
            };
            RemainderSample::new(x, v, slope * x.ln().ln() + constant, env)
        })
        .collect())
}

/// Residual of `Σ 1/(p + 1)` under both sign pairings of the `A₊` constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingEvidence {
    pub x: f64,
    /// Using `A₊ = B − Σ 1/(p(p + 1))`.
    pub residual_minus: f64,
    /// Using `B + Σ 1/(p(p + 1))`.
    pub residual_plus: f64,
}

pub fn pairing_evidence(table: &PrimeTable, xs: &[f64]) -> Result<Vec<PairingEvidence>> {
    let s = MERTENS_B - a_plus(table);
    let samples = prime_sum_grid(table, xs, PrimeSumVariant::InvPPlus1, Envelope::Corrected)?;
    Ok(samples
        .iter()
        .map(|r| PairingEvidence { x: r.x, residual_minus: r.residual, residual_plus: r.residual - 2.0 * s })
        .collect())
}

// ---------------------------------------------------------------------------
// Euler products

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductVariant {
    /// `∏ (1 − 1/p)`
    OneMinus,
    /// `∏ p/(p − 1)`
    POverPm1,
    /// `∏ (1 + 1/p)`
    OnePlus,
}

impl ProductVariant {
    fn log_factor(self, p: u64) -> f64 {
        let inv = 1.0 / p as f64;
        match self {
            ProductVariant::OneMinus => (-inv).ln_1p(),
            ProductVariant::POverPm1 => -(-inv).ln_1p(),
            ProductVariant::OnePlus => inv.ln_1p(),
        }
    }

    fn main_term(self, x: f64) -> f64 {
        let l = x.ln();
        match self {
            ProductVariant::OneMinus => 1.0 / (EXP_GAMMA * l),
            ProductVariant::POverPm1 => EXP_GAMMA * l,
            ProductVariant::OnePlus => SIX_OVER_PI_SQ * EXP_GAMMA * l,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductVariant::OneMinus => "one_minus",
            ProductVariant::POverPm1 => "p_over_pm1",
            ProductVariant::OnePlus => "one_plus",
        }
    }
}

/// Envelope constant `K` in `|residual| ≤ K/(x log x)` for `∏(1 + 1/p)`,
/// fitted on `[286, min(limit, 10^6)]`.
pub fn one_plus_fit(table: &PrimeTable) -> Result<ConstantFit> {
    let hi = (table.limit() as f64).min(1e6);
    if hi < 286.0 {
        return Err(Error::Precondition("table limit below 286".into()));
    }
    let xs = log_grid(286.0, hi, FIT_POINTS);
    let logs = prime_prefix(table, &xs, |p| Some(ProductVariant::OnePlus.log_factor(p)));
    let values: Vec<f64> = logs.iter().map(|l| l.exp()).collect();
    let g = |x: f64| 1.0 / (x * x.ln());
    let mut fit = fit_constant(&xs, &values, |x| ProductVariant::OnePlus.main_term(x), g);
    // the main term carries no free constant; refit the envelope around zero
    fit.constant = 0.0;
    let ratio = xs
        .iter()
        .zip(&values)
        .map(|(&x, v)| (v - ProductVariant::OnePlus.main_term(x)).abs() / g(x))
        .fold(0.0, f64::max);
    fit.envelope_constant = 2.0 * ratio;
    Ok(fit)
}

pub fn euler_product(table: &PrimeTable, x: f64, variant: ProductVariant) -> Result<RemainderSample> {
    Ok(euler_product_grid(table, &[x], variant)?.remove(0))
}

/// Products at many `x`, each formed as the exponential of a compensated
/// log-sum. For `x < 2` the product is empty and compared against 1.
pub fn euler_product_grid(table: &PrimeTable, xs: &[f64], variant: ProductVariant) -> Result<Vec<RemainderSample>> {
    for &x in xs {
        if !(x > 0.0) || x > table.limit() as f64 {
            return Err(Error::Range(format!("x = {x} outside (0, {}]", table.limit())));
        }
    }
    let k = match variant {
        ProductVariant::OnePlus => Some(one_plus_fit(table)?.envelope_constant),
        _ => None,
    };
    let logs = prime_prefix(table, xs, |p| Some(variant.log_factor(p)));
    Ok(xs
        .iter()
        .zip(logs)
        .map(|(&x, l)| {
            if x < 2.0 {
                return RemainderSample::new(x, 1.0, 1.0, 0.0);
            }
            let main = variant.main_term(x);
            let env = match k {
                Some(k) => k / (x * x.ln()),
                None => main / (2.0 * x.ln().powi(2)),
            };
            RemainderSample::new(x, l.exp(), main, env)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Tails and constants

/// `Σ_{x < p ≤ limit} Σ_{n≥2} 1/(n p^n)`, truncated at the table limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSum {
    pub value: f64,
    pub from: f64,
    pub truncated_at: u64,
}

/// `Σ_{n≥2} 1/(n p^n) = −log(1 − 1/p) − 1/p`
pub fn prime_power_tail(p: u64) -> f64 {
    let inv = 1.0 / p as f64;
    -(-inv).ln_1p() - inv
}

pub fn tail_sum(table: &PrimeTable, x: f64) -> Result<TailSum> {
    if !(x >= 2.0) || x >= table.limit() as f64 {
        return Err(Error::Range(format!("x = {x} outside [2, {})", table.limit())));
    }
    let start = table.count_le(x);
    let mut acc = CompensatedSum::new();
    // smallest terms first
    for &p in table.primes()[start..].iter().rev() {
        acc.add(prime_power_tail(p));
    }
    Ok(TailSum { value: acc.value(), from: x, truncated_at: table.limit() })
}

/// Suffix sums of the prime-power tail, for repeated queries along a table.
#[derive(Debug, Clone)]
pub struct TailSums {
    suffix: Vec<f64>,
}

impl TailSums {
    pub fn new(table: &PrimeTable) -> Self {
        let primes = table.primes();
        let mut suffix = vec![0.0; primes.len() + 1];
        let mut acc = CompensatedSum::new();
        for i in (0..primes.len()).rev() {
            acc.add(prime_power_tail(primes[i]));
            suffix[i] = acc.value();
        }
        Self { suffix }
    }

    /// Tail over primes with index `≥ k` (zero-based).
    pub fn from_index(&self, k: usize) -> f64 {
        self.suffix[k.min(self.suffix.len() - 1)]
    }
}

fn mobius_u64(n: u64) -> i32 {
    FactoredInteger::of_u64(n).expect("positive").mobius()
}

/// `γ + Σ_{2≤n≤n_max} μ(n) log ζ(n)/n`, the convergent series for `B`.
pub fn b_mobius_series(n_max: u32) -> f64 {
    let s: CompensatedSum = (2..=n_max).map(|n| mobius_u64(n as u64) as f64 * zeta(n).ln() / n as f64).collect();
    EULER_GAMMA + s.value()
}

/// `γ + Σ_{2≤n≤n_max} μ(n) ζ(n)/n`, the series as printed.
pub fn b_printed_series(n_max: u32) -> f64 {
    let s: CompensatedSum = (2..=n_max).map(|n| mobius_u64(n as u64) as f64 * zeta(n) / n as f64).collect();
    EULER_GAMMA + s.value()
}

/// Residue class used for the progression constants.
pub const AP_CLASS: (u64, u64) = (1, 4);

pub fn estimate_constants(table: &PrimeTable) -> Result<Vec<ConstantEstimate>> {
    if table.limit() < 100_000 {
        return Err(Error::Precondition("constant estimates need a table limit of at least 10^5".into()));
    }
    let limit = table.limit() as f64;
    let mut out = Vec::new();

    // Euler–Maclaurin corrected harmonic number at n = 10^6
    let n = 1_000_000u64;
    let h: CompensatedSum = (1..=n).rev().map(|k| 1.0 / k as f64).collect();
    let nf = n as f64;
    let gamma = h.value() - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf);
    out.push(ConstantEstimate::new("gamma", "harmonic", gamma, Some(EULER_GAMMA)));

    // B = γ + Σ (log(1 − 1/p) + 1/p); the omitted tail is about −1/(2 x log x)
    let s: CompensatedSum = table.primes().iter().rev().map(|&p| -prime_power_tail(p)).collect();
    let tail = -1.0 / (2.0 * limit * limit.ln());
    out.push(ConstantEstimate::new("B", "prime_sum", EULER_GAMMA + s.value() + tail, Some(MERTENS_B)));
    out.push(ConstantEstimate::new("B", "mobius_log_zeta", b_mobius_series(60), Some(MERTENS_B)));

    let (a, q) = AP_CLASS;
    out.push(ConstantEstimate::new("B_aq", "fit", prime_ap_fit(table, a, q)?.constant, None));
    out.push(ConstantEstimate::new("gamma_aq", "fit", harmonic_fit(&HarmonicVariant::Ap { a, q })?.constant, None));
    out.push(ConstantEstimate::new("A_plus", "prime_sum", a_plus(table), None));
    out.push(ConstantEstimate::new("A_minus", "prime_sum", a_minus(table), None));
    Ok(out)
}

/// `Σ_{p≤x} 1/p ≤ log log x − log log 2 + 1/(2 log 2)`.
pub fn elementary_bound_check(table: &PrimeTable, x: f64) -> Result<CriterionReport> {
    if !(x >= 3.0) {
        return Err(Error::Domain(format!("x = {x} is below 3")));
    }
    check_range(table, x)?;
    let sum: CompensatedSum = table.primes_le(x).iter().map(|&p| 1.0 / p as f64).collect();
    Ok(elementary_report(x, &sum))
}

fn elementary_rhs(x: f64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    x.ln().ln() - ln2.ln() + 1.0 / (2.0 * ln2)
}

fn elementary_report(x: f64, sum: &CompensatedSum) -> CriterionReport {
    let rhs = elementary_rhs(x);
    let err = sum.error_bound(1.0) + 8.0 * f64::EPSILON * rhs.abs().max(1.0);
    CriterionReport::from_margin((x as u64).into(), Criterion::ElementaryMertens, rhs - sum.value(), err)
}

/// Checks the elementary bound on `[3, x_max]`. The sum is constant between
/// primes while the bound grows, so the worst points are `x = 3` and each
/// prime. Returns the report with the smallest margin and all failures.
pub fn elementary_bound_scan(table: &PrimeTable, x_max: f64) -> Result<(CriterionReport, Vec<CriterionReport>)> {
    check_range(table, x_max)?;
    if x_max < 3.0 {
        return Err(Error::Domain("x_max is below 3".into()));
    }
    let mut acc = CompensatedSum::new();
    let mut worst: Option<CriterionReport> = None;
    let mut failures = Vec::new();
    for &p in table.primes_le(x_max) {
        acc.add(1.0 / p as f64);
        if p < 3 {
            continue;
        }
        let r = elementary_report(p as f64, &acc);
        if !r.holds {
            failures.push(r.clone());
        }
        if worst.as_ref().map_or(true, |w| r.margin < w.margin) {
            worst = Some(r);
        }
    }
    Ok((worst.expect("3 ≤ x_max"), failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::build(1_000_000).unwrap()
    }

    #[test]
    fn harmonic_examples() {
        let r = harmonic_sum(1.0, &HarmonicVariant::Plain).unwrap();
        assert_eq!(r.empirical, 1.0);
        let r = harmonic_sum(10.0, &HarmonicVariant::Plain).unwrap();
        assert!((r.empirical - 2.928968253968254).abs() < 1e-12);
        assert!(r.within);
        let r = harmonic_sum(10.0, &HarmonicVariant::Squarefree).unwrap();
        let expected = 1.0 + 0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 6.0 + 1.0 / 7.0 + 0.1;
        assert!((r.empirical - expected).abs() < 1e-12);
        assert!(harmonic_sum(1.5, &HarmonicVariant::InverseLog).is_err());
        assert!(harmonic_sum(0.5, &HarmonicVariant::Plain).is_err());
    }

    #[test]
    fn harmonic_variants_fit_their_main_terms() {
        for v in [
            HarmonicVariant::Squarefree,
            HarmonicVariant::LogPower(1),
            HarmonicVariant::InverseLog,
            HarmonicVariant::Coprime(30),
            HarmonicVariant::Ap { a: 1, q: 4 },
        ] {
            let fit = harmonic_fit(&v).unwrap();
            assert!(fit.rms < 1e-2, "{v:?}: {fit:?}");
        }
        // Σ log n / n = log² x / 2 + c with c the first Stieltjes constant
        let fit = harmonic_fit(&HarmonicVariant::LogPower(1)).unwrap();
        assert!((fit.constant + 0.0728158454836767).abs() < 1e-3);
    }

    #[test]
    fn ap_slope_is_one_over_q() {
        let s = ap_harmonic_slope(1, 4, 1e6).unwrap();
        assert!((s.fitted - 0.25).abs() < 1e-3, "{s:?}");
        assert!(s.prefers_over_q());
        assert_eq!(s.over_phi_q, 0.5);
    }

    #[test]
    fn prime_sum_examples() {
        let t = PrimeTable::build(1000).unwrap();
        assert_eq!(prime_sum(&t, 2.0, PrimeSumVariant::InvP).unwrap().empirical, 0.5);
        let r = prime_sum(&t, 10.0, PrimeSumVariant::InvP).unwrap();
        assert!((r.empirical - (0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0)).abs() < 1e-15);
        let r = prime_sum(&t, 10.0, PrimeSumVariant::InvPPlus1).unwrap();
        assert!((r.empirical - 0.875).abs() < 1e-15);
        assert!(prime_sum(&t, 1.0, PrimeSumVariant::InvP).is_err());
        assert!(prime_sum(&t, 1001.0, PrimeSumVariant::InvP).is_err());
    }

    #[test]
    fn shifted_prime_sums_differ_by_the_correction() {
        let t = table();
        for x in [10.0, 1000.0, 123456.0] {
            let a = prime_sum(&t, x, PrimeSumVariant::InvP).unwrap().empirical;
            let b = prime_sum(&t, x, PrimeSumVariant::InvPMinus1).unwrap().empirical;
            let corr: f64 = t.primes_le(x).iter().map(|&p| 1.0 / (p as f64 * (p as f64 - 1.0))).sum();
            assert!((a - b + corr).abs() < 1e-12);
        }
    }

    #[test]
    fn minus_pairing_makes_the_residual_vanish() {
        let t = table();
        for e in pairing_evidence(&t, &log_grid(1e3, 1e6, 10)).unwrap() {
            assert!(e.residual_minus.abs() < 1e-2, "{e:?}");
            assert!(e.residual_plus.abs() > 0.5, "{e:?}");
        }
    }

    #[test]
    fn mertens_envelope_on_a_grid() {
        let t = table();
        let xs = log_grid(10_372.0, 1e6, 60);
        for v in [PrimeSumVariant::InvP, PrimeSumVariant::InvPMinus1, PrimeSumVariant::InvPPlus1] {
            for r in prime_sum_grid(&t, &xs, v, Envelope::Corrected).unwrap() {
                assert!(r.within, "{v:?} {r:?}");
            }
        }
    }

    #[test]
    fn corrected_envelope_is_too_tight_below_10372() {
        let t = table();
        let r = prime_sum(&t, 286.0, PrimeSumVariant::InvP).unwrap();
        assert!(!r.within && r.residual > 0.0);
        assert!(r.residual < 1.0 / (2.0 * 286f64.ln().powi(2)));
        let r = prime_sum(&t, 10_369.0, PrimeSumVariant::InvP).unwrap();
        assert!(!r.within);
    }

    #[test]
    fn product_examples() {
        let t = PrimeTable::build(1000).unwrap();
        let r = euler_product(&t, 1.5, ProductVariant::OneMinus).unwrap();
        assert_eq!(r.empirical, 1.0);
        let r = euler_product(&t, 10.0, ProductVariant::OneMinus).unwrap();
        assert!((r.empirical - 8.0 / 35.0).abs() < 1e-14);
        let r = euler_product(&t, 10.0, ProductVariant::OnePlus).unwrap();
        assert!((r.empirical - 96.0 / 35.0).abs() < 1e-13);
    }

    #[test]
    fn product_pair_is_decreasing_and_below_one() {
        let t = PrimeTable::build(100_000).unwrap();
        let xs = log_grid(2.0, 1e5, 40);
        let minus = euler_product_grid(&t, &xs, ProductVariant::OneMinus).unwrap();
        let plus = euler_product_grid(&t, &xs, ProductVariant::OnePlus).unwrap();
        let mut prev = 1.0;
        for (m, p) in minus.iter().zip(&plus) {
            let v = m.empirical * p.empirical;
            assert!(v <= 1.0 && v <= prev + 1e-15);
            prev = v;
        }
        assert!((prev - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-5);
    }

    #[test]
    fn product_envelopes_hold_past_286() {
        let t = table();
        let xs = log_grid(286.0, 1e6, 50);
        for v in [ProductVariant::OneMinus, ProductVariant::POverPm1] {
            for r in euler_product_grid(&t, &xs, v).unwrap() {
                assert!(r.within, "{v:?} {r:?}");
            }
        }
    }

    #[test]
    fn inner_tail_closed_form() {
        for p in [2u64, 3, 5, 101] {
            let pf = p as f64;
            let series: f64 = (2..200).map(|n| 1.0 / (n as f64 * pf.powi(n))).sum();
            assert!((series - prime_power_tail(p)).abs() < 1e-14, "p = {p}");
        }
    }

    #[test]
    fn tail_sum_examples() {
        let t = table();
        let v = tail_sum(&t, 10.0).unwrap().value;
        let crude: f64 = t.primes().iter().filter(|&&p| p > 10).map(|&p| 1.0 / (p as f64 * (p as f64 - 1.0))).sum();
        assert!(v > 0.0 && v < 0.02 && v < crude);
        assert!(tail_sum(&t, 100.0).unwrap().value < v);
        let near = tail_sum(&t, t.limit() as f64 - 0.5).unwrap().value;
        assert!(near >= 0.0 && near < 1e-12);
        let sums = TailSums::new(&t);
        assert!((sums.from_index(t.count_le(10.0)) - v).abs() < 1e-15);
    }

    #[test]
    fn constants() {
        let t = table();
        let est = estimate_constants(&t).unwrap();
        let get = |name: &str, method: &str| est.iter().find(|e| e.name == name && e.method == method).unwrap().clone();
        assert!(get("gamma", "harmonic").abs_error.unwrap() < 1e-12);
        assert!(get("B", "prime_sum").abs_error.unwrap() < 1e-6);
        assert!(get("B", "mobius_log_zeta").abs_error.unwrap() < 1e-9);
        assert!(get("A_minus", "prime_sum").value > get("A_plus", "prime_sum").value);
        assert!((b_printed_series(60) - MERTENS_B).abs() > 0.5);
        assert!(estimate_constants(&PrimeTable::build(1000).unwrap()).is_err());
    }

    #[test]
    fn elementary_bound() {
        let t = PrimeTable::build(1000).unwrap();
        let r = elementary_bound_check(&t, 3.0).unwrap();
        assert!(r.holds);
        assert!((1.0 / 2.0 + 1.0 / 3.0 + r.margin - 1.1818).abs() < 1e-3);
        let r = elementary_bound_check(&t, 10.0).unwrap();
        assert!((r.margin - (1.9219 - 1.1762)).abs() < 1e-3);
        assert!(elementary_bound_check(&t, 2.5).is_err());
        let (worst, fails) = elementary_bound_scan(&t, 1000.0).unwrap();
        assert!(fails.is_empty() && worst.holds);
    }

    #[test]
    fn truncated_log_series_brackets() {
        for i in 1..=50 {
            let t = 0.5 * i as f64 / 50.0;
            let partial = |k: u32| -> f64 { (1..=k).map(|n| (-1f64).powi(n as i32 + 1) * t.powi(n as i32) / n as f64).sum() };
            for m in 1..=3u32 {
                assert!(partial(2 * m) < t.ln_1p(), "t = {t}, m = {m}");
                assert!(partial(2 * m + 1) > t.ln_1p(), "t = {t}, m = {m}");
            }
        }
    }
}
