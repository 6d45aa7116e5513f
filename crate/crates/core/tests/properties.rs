use std::sync::OnceLock;

use abundancy::arith::{core_ratios, log_sigma_over_n, phi, sigma, sigma_s};
use abundancy::criteria::{nicolas_scan_detail, robin_check, scan_range, RobinVariant, ScanCheck};
use abundancy::extremal::{colossally_abundant, record_scan, RecordKind};
use abundancy::foursquares::r4_jacobi;
use abundancy::mertens::{euler_product, prime_power_tail, prime_sum, PrimeSumVariant, ProductVariant, RemainderSample};
use abundancy::report::Mode;
use abundancy::stats::{
    average_order, binomial_half_row_sigma_sum, binomial_row_average, divisor_count_sum_hyperbola, erdos_kac,
    limsup_tracker, AverageFn, LimsupClass,
};
use abundancy::{arith, ExactRatio, FactoredInteger, PrimeTable};
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

const LIMIT: u64 = 200_000;

fn table() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| PrimeTable::build(LIMIT).unwrap())
}

fn fi(n: u64) -> FactoredInteger {
    FactoredInteger::of_u64(n).unwrap()
}

/// Factored integers built from up to six of the first 40 primes.
fn factored() -> impl Strategy<Value = FactoredInteger> {
    prop::collection::btree_map(0usize..40, 1u32..6, 0..6).prop_map(|m| {
        let primes = table().primes();
        FactoredInteger::from_factors(m.into_iter().map(|(i, e)| (primes[i], e)).collect()).unwrap()
    })
}

fn divisor_power_sum(n: u64, s: u32) -> BigUint {
    (1..=n).filter(|d| n % d == 0).map(|d| BigUint::from(d).pow(s)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chebyshev_sandwich(x in 2.0f64..LIMIT as f64) {
        let t = table();
        let (th, ps) = (t.theta(x).unwrap(), t.psi(x).unwrap());
        let extra = t.count_le(x.sqrt()) as f64 * x.ln();
        prop_assert!(th <= ps + 1e-9);
        prop_assert!(ps <= th + extra + 1e-9);
        if x >= 286.0 {
            prop_assert!(th / x > 0.5 && th / x < 1.2);
        }
    }

    #[test]
    fn theta_below_prime(k in 1usize..17_000) {
        let t = table();
        let p = t.primes()[k - 1];
        prop_assert!(t.cum_log()[k - 1] < p as f64);
    }

    #[test]
    fn divisor_sums_match_enumeration(n in 1u64..100_000, s in 0u32..4) {
        prop_assert_eq!(sigma_s(&fi(n), s), divisor_power_sum(n, s));
    }

    #[test]
    fn totient_matches_gcd_count(n in 1u64..10_000) {
        let count = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
        prop_assert_eq!(phi(&fi(n)), BigUint::from(count));
    }

    #[test]
    fn corrected_representation_and_rho_bracket(f in factored()) {
        let r = core_ratios(&f);
        prop_assert_eq!(&r.sigma_over_n, &(&r.phi_over_n.recip() * &r.rho));
        if f.is_one() {
            prop_assert_eq!(&r.rho, &ExactRatio::one());
        } else {
            prop_assert!(r.rho > ExactRatio::new(6079, 10000));
            prop_assert!(r.rho < ExactRatio::one());
        }
    }

    #[test]
    fn multiplicative(a in factored(), b in factored(), s in 0u32..4) {
        let b_coprime = FactoredInteger::from_factors(
            b.factors().iter().copied().filter(|&(p, _)| a.valuation(p) == 0).collect(),
        ).unwrap();
        prop_assert_eq!(sigma_s(&a.mul(&b_coprime), s), sigma_s(&a, s) * sigma_s(&b_coprime, s));
    }

    #[test]
    fn log_abundancy_matches_exact(n in 1u64..1_000_000) {
        let f = fi(n);
        let exact = ExactRatio::from_biguints(sigma(&f), BigUint::from(n)).ln();
        let approx = log_sigma_over_n(&f).value();
        prop_assert!((approx - exact).abs() <= 1e-9 * exact.abs().max(1e-300) + 1e-15);
    }

    #[test]
    fn shifted_prime_sum_difference(x in 3.0f64..LIMIT as f64) {
        let t = table();
        let a = prime_sum(t, x, PrimeSumVariant::InvP).unwrap().empirical;
        let b = prime_sum(t, x, PrimeSumVariant::InvPMinus1).unwrap().empirical;
        let d: f64 = t.primes_le(x).iter().map(|&p| 1.0 / (p as f64 * (p as f64 - 1.0))).sum();
        prop_assert!((a - b + d).abs() < 1e-12);
    }

    #[test]
    fn product_pair_is_zeta2_factor(x1 in 2.0f64..LIMIT as f64, x2 in 2.0f64..LIMIT as f64) {
        let t = table();
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        let pair = |x: f64| {
            euler_product(t, x, ProductVariant::OneMinus).unwrap().empirical
                * euler_product(t, x, ProductVariant::OnePlus).unwrap().empirical
        };
        let direct: f64 = t.primes_le(lo).iter().map(|&p| 1.0 - 1.0 / (p as f64 * p as f64)).product();
        prop_assert!((pair(lo) - direct).abs() < 1e-12);
        prop_assert!(pair(lo) <= 1.0);
        prop_assert!(pair(hi) <= pair(lo) + 1e-15);
    }

    #[test]
    fn envelope_growth_never_breaks_within(
        x in 3.0f64..1e9, emp in -10.0f64..10.0, main in -10.0f64..10.0, env in 0.0f64..5.0, k in 1.0f64..100.0
    ) {
        let a = RemainderSample::new(x, emp, main, env);
        let b = RemainderSample::new(x, emp, main, env * k);
        prop_assert!(!a.within || b.within);
    }

    #[test]
    fn strict_robin_implies_unconditional(n in 3u64..10_000_000) {
        let f = fi(n);
        let strict = robin_check(&f, RobinVariant::Strict).unwrap();
        let uncond = robin_check(&f, RobinVariant::Unconditional).unwrap();
        prop_assert!(!strict.holds || uncond.holds);
    }

    #[test]
    fn robin_on_large_factored_is_stable(f in factored()) {
        prop_assume!(f.value() >= BigUint::from(3u32));
        let a = robin_check(&f, RobinVariant::Strict).unwrap();
        let b = robin_check(&f, RobinVariant::Strict).unwrap();
        prop_assert_eq!(&a, &b);
        let u = robin_check(&f, RobinVariant::Unconditional).unwrap();
        prop_assert!(!a.holds || u.holds);
        if a.mode == Mode::ExactRational {
            prop_assert_eq!(a.error_bound, 0.0);
        }
    }

    #[test]
    fn scan_partition_independent(lo in 1u64..20_000, len in 1u64..80_000, cut in 0.0f64..1.0) {
        let hi = lo + len;
        let mid = lo + ((len as f64) * cut) as u64;
        let checks = [ScanCheck::RobinStrict, ScanCheck::RobinUnconditional, ScanCheck::RsTotient, ScanCheck::Lagarias];
        let whole = scan_range(lo, hi, &checks, false).unwrap();
        let left = scan_range(lo, mid, &checks, false).unwrap();
        let mut split: Vec<_> = left.rows.clone();
        if mid < hi {
            split.extend(scan_range(mid + 1, hi, &checks, false).unwrap().rows);
        }
        prop_assert_eq!(whole.rows, split);
    }

    #[test]
    fn ca_chain(e1 in 0.06f64..2.0, e2 in 0.06f64..2.0) {
        let (big_e, small_e) = if e1 >= e2 { (e1, e2) } else { (e2, e1) };
        let a = colossally_abundant(big_e, table()).unwrap();
        let b = colossally_abundant(small_e, table()).unwrap();
        prop_assert!(b.div(&a).is_some(), "{} does not divide {}", a, b);
    }

    #[test]
    fn divisor_count_two_ways(x in 1u64..100_000) {
        let s = average_order(x, AverageFn::Sigma0).unwrap().empirical_sum;
        prop_assert_eq!(s, BigUint::from(divisor_count_sum_hyperbola(x)));
    }

    #[test]
    fn erdos_kac_histogram_bounds(x in 100u64..50_000, bins in 5usize..40) {
        let ek = erdos_kac(x, bins).unwrap();
        let mass = ek.histogram.total_mass();
        prop_assert!(mass > 0.0 && mass <= 1.0 + 1e-12);
        prop_assert!((0.0..=1.0).contains(&ek.ks_distance));
    }

    #[test]
    fn squarefree_limsup_below_all(x in 100u64..200_000) {
        let all = limsup_tracker(x, LimsupClass::All).unwrap();
        let sf = limsup_tracker(x, LimsupClass::Squarefree).unwrap();
        prop_assert!(sf.sup_sigma <= all.sup_sigma);
    }

    #[test]
    fn r4_divisible_by_8_and_doubling(n in 1u64..1_000_000_000) {
        let r = r4_jacobi(&fi(n)).r4;
        prop_assert_eq!(&r % 8u32, BigUint::from(0u32));
        if n % 2 == 1 {
            prop_assert_eq!(r4_jacobi(&fi(2 * n)).r4, r * 3u32);
        }
    }
}

#[test]
fn prime_power_tail_closed_form() {
    for p in [2u64, 3, 5, 101] {
        let pf = p as f64;
        let series: f64 = (2..200).rev().map(|n| 1.0 / (n as f64 * pf.powi(n))).sum();
        assert!((prime_power_tail(p) - series).abs() < 1e-14, "p = {p}");
    }
}

#[test]
fn omega_mean_by_counting_interchange() {
    for x in [1_000u64, 100_000] {
        let direct = average_order(x, AverageFn::Omega).unwrap().empirical_sum;
        let by_primes: u64 = table().primes_le(x as f64).iter().map(|&p| x / p).sum();
        assert_eq!(direct, BigUint::from(by_primes), "x = {x}");
    }
}

#[test]
fn binomial_half_row_consistency() {
    for n in [1u64, 2, 7, 10, 33, 64, 101] {
        let full = binomial_row_average(n).unwrap().sigma_avg_exact;
        let half = binomial_half_row_sigma_sum(n);
        assert_eq!(&full * &ExactRatio::from(n + 1), half, "N = {n}");
    }
}

#[test]
fn nicolas_and_totient_share_lhs() {
    let t = table();
    for r in nicolas_scan_detail(t, 2000).unwrap() {
        let f = FactoredInteger::primorial(t, r.k).unwrap();
        let direct = arith::log_n_over_phi(&f).value();
        assert!((r.log_n_over_phi - direct).abs() <= 1e-12 * direct.max(1.0), "k = {}", r.k);
    }
}

#[test]
fn colossal_values_are_superabundant() {
    let sa: Vec<u64> = record_scan(100_000, RecordKind::Superabundant).unwrap().iter().map(|e| e.n).collect();
    let mut eps = 2.0;
    while eps > 0.05 {
        let ca = colossally_abundant(eps, table()).unwrap();
        if let Some(v) = ca.value_u64().filter(|&v| v <= 100_000 && v > 1) {
            assert!(sa.contains(&v), "CA({eps}) = {v} is not a superabundant record");
        }
        eps *= 0.9;
    }
    let keys: Vec<ExactRatio> = record_scan(100_000, RecordKind::Superabundant).unwrap().into_iter().map(|e| e.key).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}
