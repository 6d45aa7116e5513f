//! Distributional and average-order experiments over `n ≤ x`.

use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;

use crate::arith::{phi, sigma};
use crate::consts::{zeta, EULER_GAMMA, EXP_GAMMA, MERTENS_B, PI};
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::ratio::ExactRatio;
use crate::sieve::{ArithRecord, ArithSieve, BLOCK_LEN};

/// Largest `x` accepted by the per-integer statistics.
pub const STATS_BUDGET: u64 = 100_000_000;

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub sample_count: u64,
}

impl Histogram {
    /// `bins` equal bins on `[lo, hi]`; samples outside land in the end bins.
    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        let width = (hi - lo) / bins as f64;
        let bin_edges: Vec<f64> = (0..=bins).map(|i| if i == bins { hi } else { lo + i as f64 * width }).collect();
        let mut counts = vec![0u64; bins];
        for &z in samples {
            let i = ((z - lo) / width).floor();
            counts[(i.max(0.0) as usize).min(bins - 1)] += 1;
        }
        let total = samples.len() as f64;
        let masses = counts.iter().map(|&c| if total > 0.0 { c as f64 / total } else { 0.0 }).collect();
        Self { bin_edges, masses, sample_count: samples.len() as u64 }
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErdosKac {
    pub x: u64,
    pub histogram: Histogram,
    /// Kolmogorov–Smirnov distance to the standard normal.
    pub ks_distance: f64,
}

/// Kolmogorov–Smirnov distance between sorted samples and `cdf`.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        // treat a run of equal values as one jump of the empirical CDF
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let f = cdf(sorted[i]);
        d = d.max((f - i as f64 / n).abs()).max(((j + 1) as f64 / n - f).abs());
        i = j + 1;
    }
    d
}

fn check_budget(x: u64) -> Result<()> {
    if x > STATS_BUDGET {
        return Err(Error::Resource(format!("x = {x} exceeds the budget {STATS_BUDGET}")));
    }
    Ok(())
}

/// `(ω(n) − log log n)/√(log log n)` for `3 ≤ n ≤ x`, binned on `[−4, 4]`.
pub fn erdos_kac(x: u64, bins: usize) -> Result<ErdosKac> {
    if x < 100 {
        return Err(Error::Domain("x must be at least 100".into()));
    }
    if bins < 5 {
        return Err(Error::Domain("at least 5 bins are needed".into()));
    }
    check_budget(x)?;
    let mut z: Vec<f64> = ArithSieve::new(3..=x)?
        .map_blocks(|block| {
            block
                .iter()
                .map(|r| {
                    let ll = (r.n as f64).ln().ln();
                    (r.omega as f64 - ll) / ll.sqrt()
                })
                .collect::<Vec<_>>()
        })
        .concat();
    z.par_sort_unstable_by(f64::total_cmp);
    Ok(ErdosKac { x, histogram: Histogram::from_samples(&z, -4.0, 4.0, bins), ks_distance: ks_distance(&z, normal_cdf) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageFn {
    Sigma0,
    /// `σ_s` for `s ∈ {1, 2, 3}`
    SigmaS(u32),
    Phi,
    Omega,
}

impl AverageFn {
    pub fn name(self) -> String {
        match self {
            AverageFn::Sigma0 => "sigma0".into(),
            AverageFn::SigmaS(s) => format!("sigma_{s}"),
            AverageFn::Phi => "phi".into(),
            AverageFn::Omega => "omega".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "sigma0" => Some(AverageFn::Sigma0),
            "phi" => Some(AverageFn::Phi),
            "omega" => Some(AverageFn::Omega),
            _ => s.strip_prefix("sigma_").and_then(|t| t.parse().ok()).filter(|s| (1..=3).contains(s)).map(AverageFn::SigmaS),
        }
    }
}

/// A second candidate main term, evaluated on the same sum.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeFit {
    pub label: &'static str,
    pub main_term: f64,
    pub residual: f64,
    /// `|residual|` is smaller than under the primary main term.
    pub fits_better: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageOrderRow {
    pub x: u64,
    pub function: AverageFn,
    pub empirical_sum: BigUint,
    pub main_term: f64,
    /// Constant of the leading shape refitted from the data: `(S − x log x)/x`
    /// for σ₀, `S/x^{s+1}` for σ_s, `S/x²` for φ, `(S − x log x)/x` for ω.
    pub fitted_constant: f64,
    pub residual: f64,
    pub alternative: Option<AlternativeFit>,
}

/// `Σ_{n≤x} σ_s(n) = Σ_{d≤x} d^s ⌊x/d⌋`.
pub fn sigma_s_sum(x: u64, s: u32) -> BigUint {
    let total: u128 = (1..=x).into_par_iter().map(|d| (d as u128).pow(s) * (x / d) as u128).sum();
    BigUint::from(total)
}

/// `Σ_{n≤x} σ₀(n)` by the hyperbola method.
pub fn divisor_count_sum_hyperbola(x: u64) -> u64 {
    let r = x.sqrt();
    2 * (1..=r).map(|d| x / d).sum::<u64>() - r * r
}

fn sieve_sum(x: u64, f: impl Fn(&ArithRecord) -> u64 + Sync) -> Result<BigUint> {
    let parts = ArithSieve::new(1..=x)?.map_blocks(|b| b.iter().map(|r| f(r) as u128).sum::<u128>());
    Ok(BigUint::from(parts.into_iter().sum::<u128>()))
}

fn to_f64(b: &BigUint) -> f64 {
    ExactRatio::from_biguints(b.clone(), BigUint::from(1u32)).to_f64()
}

pub fn average_order(x: u64, function: AverageFn) -> Result<AverageOrderRow> {
    if x == 0 {
        return Err(Error::Domain("x must be positive".into()));
    }
    check_budget(x)?;
    let xf = x as f64;
    let lx = xf.ln();
    let (empirical_sum, shape, constant_scale) = match function {
        AverageFn::Sigma0 => (sieve_sum(x, |r| r.sigma0 as u64)?, xf * lx, xf),
        AverageFn::SigmaS(s) if (1..=3).contains(&s) => (sigma_s_sum(x, s), 0.0, xf.powi(s as i32 + 1)),
        AverageFn::SigmaS(s) => return Err(Error::Domain(format!("s = {s} is outside 1..=3"))),
        AverageFn::Phi => (sieve_sum(x, |r| r.phi)?, 0.0, xf * xf),
        AverageFn::Omega => (sieve_sum(x, |r| r.omega as u64)?, xf * lx, xf),
    };
    let s = to_f64(&empirical_sum);
    let main_term = match function {
        AverageFn::Sigma0 => xf * lx + (2.0 * EULER_GAMMA - 1.0) * xf,
        AverageFn::SigmaS(k) => zeta(k + 1) / (k + 1) as f64 * xf.powi(k as i32 + 1),
        AverageFn::Phi => 6.0 / (PI * PI) * xf * xf,
        AverageFn::Omega => xf * lx,
    };
    let residual = s - main_term;
    let alt = |label, m: f64| {
        let r = s - m;
        AlternativeFit { label, main_term: m, residual: r, fits_better: r.abs() < residual.abs() }
    };
    let alternative = match function {
        AverageFn::Phi => Some(alt("3/pi^2 x^2", 3.0 / (PI * PI) * xf * xf)),
        AverageFn::Omega => Some(alt("x loglog x + B x", xf * lx.ln() + MERTENS_B * xf)),
        _ => None,
    };
    Ok(AverageOrderRow {
        x,
        function,
        empirical_sum,
        main_term,
        fitted_constant: (s - shape) / constant_scale,
        residual,
        alternative,
    })
}

/// Least-squares slope of `log |residual|` against `log x`.
pub fn error_exponent(rows: &[AverageOrderRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.residual != 0.0).map(|r| ((r.x as f64).ln(), r.residual.abs().ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `v_p(n!)` by Legendre's formula.
fn factorial_valuation(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        v += q as u32;
    }
    v
}

/// `C(n, k)` factored through factorial valuations.
pub fn binomial_factored(n: u64, k: u64) -> FactoredInteger {
    let factors = crate::primes::sieve(n)
        .into_iter()
        .map(|p| (p, factorial_valuation(n, p) - factorial_valuation(k, p) - factorial_valuation(n - k, p)))
        .filter(|&(_, e)| e > 0)
        .collect();
    FactoredInteger::from_factors_unchecked(factors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinomialRowAverage {
    pub n: u64,
    pub sigma_avg_exact: ExactRatio,
    pub phi_avg_exact: ExactRatio,
    pub sigma_avg: f64,
    pub phi_avg: f64,
    /// `log log log N`, NaN while undefined
    pub log_log_log_n: f64,
}

pub const BINOMIAL_ROW_LIMIT: u64 = 2000;

fn binomial_terms(n: u64, ks: impl Iterator<Item = u64>) -> (ExactRatio, ExactRatio) {
    let terms: Vec<(ExactRatio, ExactRatio)> = ks
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let f = binomial_factored(n, k);
            let v = f.value();
            (ExactRatio::from_biguints(sigma(&f), v.clone()), ExactRatio::from_biguints(phi(&f), v))
        })
        .collect();
    terms.into_iter().fold((ExactRatio::zero(), ExactRatio::zero()), |(s, p), (a, b)| (s + a, p + b))
}

/// Row averages of `σ(C(N,k))/C(N,k)` and `φ(C(N,k))/C(N,k)` over `0 ≤ k ≤ N`.
pub fn binomial_row_average(n: u64) -> Result<BinomialRowAverage> {
    if n == 0 {
        return Err(Error::Domain("N must be positive".into()));
    }
    if n > BINOMIAL_ROW_LIMIT {
        return Err(Error::Resource(format!("N = {n} exceeds {BINOMIAL_ROW_LIMIT}")));
    }
    let (s, p) = binomial_terms(n, 0..=n);
    let count = ExactRatio::from(n + 1);
    let sigma_avg_exact = &s / &count;
    let phi_avg_exact = &p / &count;
    Ok(BinomialRowAverage {
        n,
        sigma_avg: sigma_avg_exact.to_f64(),
        phi_avg: phi_avg_exact.to_f64(),
        sigma_avg_exact,
        phi_avg_exact,
        log_log_log_n: (n as f64).ln().ln().ln(),
    })
}

/// The σ row sum rebuilt from the half row `k ≤ N/2`.
pub fn binomial_half_row_sigma_sum(n: u64) -> ExactRatio {
    let (half, _) = binomial_terms(n, 0..=n / 2);
    if n % 2 == 0 {
        let (mid, _) = binomial_terms(n, n / 2..=n / 2);
        &(&half + &half) - &mid
    } else {
        &half + &half
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimsupClass {
    All,
    Odd,
    Squarefree,
}

impl LimsupClass {
    pub fn name(self) -> &'static str {
        match self {
            LimsupClass::All => "all",
            LimsupClass::Odd => "odd",
            LimsupClass::Squarefree => "squarefree",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [LimsupClass::All, LimsupClass::Odd, LimsupClass::Squarefree].into_iter().find(|c| c.name() == s)
    }

    fn contains(self, r: &ArithRecord) -> bool {
        match self {
            LimsupClass::All => true,
            LimsupClass::Odd => r.n % 2 == 1,
            LimsupClass::Squarefree => r.is_squarefree(),
        }
    }

    /// Limsup of `σ(n)/(n log log n)` over the class.
    pub fn sigma_constant(self) -> f64 {
        match self {
            LimsupClass::All => EXP_GAMMA,
            LimsupClass::Odd => EXP_GAMMA / 2.0,
            LimsupClass::Squarefree => 6.0 * EXP_GAMMA / (PI * PI),
        }
    }

    /// Limsup of `n/(φ(n) log log n)`; primorials are squarefree, so that
    /// class keeps the full `e^γ`.
    pub fn phi_constant(self) -> f64 {
        match self {
            LimsupClass::All | LimsupClass::Squarefree => EXP_GAMMA,
            LimsupClass::Odd => EXP_GAMMA / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimsupReport {
    pub x: u64,
    pub class: LimsupClass,
    pub sup_sigma: f64,
    pub argmax_sigma: u64,
    pub sup_phi: f64,
    pub argmax_phi: u64,
    pub sigma_constant: f64,
    pub phi_constant: f64,
}

/// Maxima of `σ(n)/(n log log n)` and `n/(φ(n) log log n)` over
/// `16 ≤ n ≤ x` in `class`; ties keep the smaller `n`.
pub fn limsup_tracker(x: u64, class: LimsupClass) -> Result<LimsupReport> {
    if x < 100 {
        return Err(Error::Domain("x must be at least 100".into()));
    }
    check_budget(x)?;
    type Best = ((f64, u64), (f64, u64));
    let fold = |mut acc: Best, other: Best| {
        if other.0 .0 > acc.0 .0 {
            acc.0 = other.0;
        }
        if other.1 .0 > acc.1 .0 {
            acc.1 = other.1;
        }
        acc
    };
    let init: Best = ((f64::NEG_INFINITY, 0), (f64::NEG_INFINITY, 0));
    let best = ArithSieve::new(16..=x)?
        .map_blocks(|block| {
            block.iter().filter(|r| class.contains(r)).fold(init, |acc, r| {
                let ll = (r.n as f64).ln().ln();
                let s = r.sigma as f64 / (r.n as f64 * ll);
                let p = r.n as f64 / (r.phi as f64 * ll);
                fold(acc, ((s, r.n), (p, r.n)))
            })
        })
        .into_iter()
        .fold(init, fold);
    Ok(LimsupReport {
        x,
        class,
        sup_sigma: best.0 .0,
        argmax_sigma: best.0 .1,
        sup_phi: best.1 .0,
        argmax_phi: best.1 .1,
        sigma_constant: class.sigma_constant(),
        phi_constant: class.phi_constant(),
    })
}

/// `σ(n)/(e^γ n log log n)`.
pub fn normalized_abundancy(n: u64, sigma_n: u64) -> f64 {
    sigma_n as f64 / (EXP_GAMMA * n as f64 * (n as f64).ln().ln())
}

/// Smallest `16 ≤ n ≤ budget` whose normalized abundancy is within `tol` of
/// `target`.
pub fn density_search(target: f64, tol: f64, budget: u64) -> Result<Option<u64>> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain(format!("target {target} is outside (0, 1)")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tol must be positive".into()));
    }
    if budget < 16 {
        return Ok(None);
    }
    let sieve = ArithSieve::new(16..=budget)?;
    let mut start = 16;
    while start <= budget {
        let end = start.saturating_add(BLOCK_LEN - 1).min(budget);
        let hit = sieve.block(start, end).iter().find(|r| (normalized_abundancy(r.n, r.sigma) - target).abs() < tol).map(|r| r.n);
        if hit.is_some() {
            return Ok(hit);
        }
        start = end + 1;
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalOrderFraction {
    pub x: u64,
    pub band: f64,
    /// share of `16 ≤ n ≤ x` with `σ(n)/n` within the band around `e^γ log log log n`
    pub sigma_fraction: f64,
    /// the same for `n/φ(n)`
    pub phi_fraction: f64,
}

pub fn normal_order_fraction(x: u64, band: f64) -> Result<NormalOrderFraction> {
    if x < 10_000 {
        return Err(Error::Domain("x must be at least 10^4".into()));
    }
    if !(band > 1.0) {
        return Err(Error::Domain("band must exceed 1".into()));
    }
    check_budget(x)?;
    let within = |v: f64, c: f64| v >= c / band && v <= c * band;
    let (s, p) = ArithSieve::new(16..=x)?
        .map_blocks(|block| {
            block.iter().fold((0u64, 0u64), |(s, p), r| {
                let c = EXP_GAMMA * (r.n as f64).ln().ln().ln();
                let n = r.n as f64;
                (s + within(r.sigma as f64 / n, c) as u64, p + within(n / r.phi as f64, c) as u64)
            })
        })
        .into_iter()
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let total = (x - 15) as f64;
    Ok(NormalOrderFraction { x, band, sigma_fraction: s as f64 / total, phi_fraction: p as f64 / total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn normal_cdf_matches_reference() {
        let n = Normal::new(0.0, 1.0).unwrap();
        for i in -80..=80 {
            let z = i as f64 / 10.0;
            assert!((normal_cdf(z) - n.cdf(z)).abs() < 1e-10, "z = {z}");
        }
    }

    #[test]
    fn histogram_mass() {
        let h = Histogram::from_samples(&[-10.0, 0.0, 0.1, 3.9, 4.0, 10.0], -4.0, 4.0, 8);
        assert!((h.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(h.bin_edges.len(), 9);
        assert_eq!(h.bin_edges[8], 4.0);
        assert!((h.masses[0] - 1.0 / 6.0).abs() < 1e-15);
        assert!((h.masses[7] - 3.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let n = Normal::new(0.0, 1.0).unwrap();
        let m = 1000;
        let z: Vec<f64> = (0..m).map(|i| n.inverse_cdf((i as f64 + 0.5) / m as f64)).collect();
        assert!((ks_distance(&z, normal_cdf) - 0.5 / m as f64).abs() < 1e-9);
        assert!((ks_distance(&[0.0, 0.0], normal_cdf) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn erdos_kac_small() {
        let a = erdos_kac(10_000, 16).unwrap();
        assert!((a.histogram.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(a.histogram.sample_count, 9998);
        assert!(a.ks_distance > 0.0 && a.ks_distance < 1.0);
        let b = erdos_kac(1_000_000, 16).unwrap();
        assert!(b.ks_distance < a.ks_distance);
        assert!(erdos_kac(99, 16).is_err());
        assert!(erdos_kac(1000, 4).is_err());
    }

    #[test]
    fn average_order_examples() {
        let r = average_order(100, AverageFn::Sigma0).unwrap();
        assert_eq!(r.empirical_sum, BigUint::from(482u32));
        let r = average_order(100, AverageFn::Phi).unwrap();
        assert_eq!(r.empirical_sum, BigUint::from(3044u32));
        let r = average_order(10, AverageFn::SigmaS(1)).unwrap();
        assert_eq!(r.empirical_sum, BigUint::from(87u32));
        assert!(average_order(10, AverageFn::SigmaS(4)).is_err());
        assert_eq!(AverageFn::from_name("sigma_2"), Some(AverageFn::SigmaS(2)));
        assert_eq!(AverageFn::from_name("sigma_9"), None);
    }

    #[test]
    fn divisor_sums_agree() {
        for x in [1u64, 2, 10, 99, 1000, 12_345] {
            let double_loop: u64 = (1..=x).map(|n| (1..=n).filter(|d| n % d == 0).count() as u64).sum::<u64>();
            if x <= 1000 {
                assert_eq!(divisor_count_sum_hyperbola(x), double_loop);
            }
            assert_eq!(BigUint::from(divisor_count_sum_hyperbola(x)), average_order(x, AverageFn::Sigma0).unwrap().empirical_sum);
            assert_eq!(sigma_s_sum(x, 0), BigUint::from(divisor_count_sum_hyperbola(x)));
        }
        let x = 100_000;
        assert_eq!(BigUint::from(divisor_count_sum_hyperbola(x)), average_order(x, AverageFn::Sigma0).unwrap().empirical_sum);
    }

    #[test]
    fn mean_omega_by_counting_interchange() {
        for x in [1000u64, 100_000] {
            let t = crate::primes::sieve(x);
            let expected: u64 = t.iter().map(|p| x / p).sum();
            assert_eq!(average_order(x, AverageFn::Omega).unwrap().empirical_sum, BigUint::from(expected));
        }
    }

    #[test]
    fn totient_constant_prefers_three_over_pi_squared() {
        let r = average_order(100_000, AverageFn::Phi).unwrap();
        let alt = r.alternative.unwrap();
        assert!(alt.fits_better);
        assert!(alt.residual.abs() * 10.0 < r.residual.abs());
        assert!((r.fitted_constant - 3.0 / (PI * PI)).abs() < 1e-3);
        let r = average_order(100_000, AverageFn::Omega).unwrap();
        assert!(r.alternative.unwrap().fits_better);
    }

    #[test]
    fn binomial_rows() {
        let r = binomial_row_average(1).unwrap();
        assert_eq!(r.sigma_avg_exact, ExactRatio::one());
        assert_eq!(binomial_row_average(4).unwrap().sigma_avg_exact, ExactRatio::new(3, 2));
        assert_eq!(binomial_row_average(2).unwrap().sigma_avg_exact, ExactRatio::new(7, 6));
        assert_eq!(binomial_row_average(2).unwrap().phi_avg_exact, ExactRatio::new(5, 6));
        assert!(binomial_row_average(0).is_err());
        assert!(binomial_row_average(2001).is_err());
        assert_eq!(binomial_factored(10, 3).value_u64(), Some(120));
        for n in [5u64, 6, 31, 64] {
            let full = binomial_row_average(n).unwrap().sigma_avg_exact * ExactRatio::from(n + 1);
            assert_eq!(binomial_half_row_sigma_sum(n), full, "N = {n}");
        }
    }

    #[test]
    fn limsup_examples() {
        let all = limsup_tracker(10_000, LimsupClass::All).unwrap();
        let odd = limsup_tracker(10_000, LimsupClass::Odd).unwrap();
        let sf = limsup_tracker(10_000, LimsupClass::Squarefree).unwrap();
        assert!(all.sup_sigma >= odd.sup_sigma);
        assert!(all.sup_sigma >= sf.sup_sigma);
        let sa: Vec<u64> = crate::extremal::record_scan(10_000, crate::extremal::RecordKind::Superabundant)
            .unwrap()
            .iter()
            .map(|e| e.n)
            .collect();
        assert!(sa.contains(&all.argmax_sigma), "{}", all.argmax_sigma);
    }

    #[test]
    fn density_examples() {
        let t = normalized_abundancy(17, 18);
        assert!((t - 0.5709).abs() < 1e-3);
        let hit = density_search(t, 1e-3, 1000).unwrap().unwrap();
        assert!(hit <= 17);
        assert!(density_search(0.5, 0.05, 100_000).unwrap().is_some());
        assert_eq!(density_search(0.5, 1.0, 100).unwrap(), Some(16));
        assert!(density_search(1.5, 0.1, 100).is_err());
    }

    #[test]
    fn normal_order_trend() {
        let a = normal_order_fraction(10_000, 2.0).unwrap();
        let b = normal_order_fraction(10_000, 3.0).unwrap();
        assert!(b.sigma_fraction >= a.sigma_fraction && b.phi_fraction >= a.phi_fraction);
        let wide = normal_order_fraction(10_000, 1e6).unwrap();
        assert!(wide.sigma_fraction > 0.999);
        let c = normal_order_fraction(1_000_000, 2.0).unwrap();
        assert!(c.sigma_fraction > a.sigma_fraction);
    }
}
