//! Log-space verdicts re-evaluated with 128-bit binary floats.

use abundancy::criteria::{nicolas_scan_detail, robin_check, rs_totient_primorials, RobinVariant};
use abundancy::report::{Mode, Verdict};
use abundancy::{CriterionReport, FactoredInteger, PrimeTable};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

type F = FBig<HalfEven, 2>;

const PREC: usize = 128;

fn f(n: u64) -> F {
    F::from(n).with_precision(PREC).value()
}

/// e^γ from 38 decimal digits of γ.
fn exp_gamma() -> F {
    let num = F::from(57_721_566_490_153_286_060_651_209_008_240_243_104u128).with_precision(PREC).value();
    let den = F::from(100_000_000_000_000_000_000_000_000_000_000_000_000u128).with_precision(PREC).value();
    (num / den).exp()
}

fn to_f64(x: &F) -> f64 {
    x.to_f64().value()
}

/// High-precision `log N`, `log(N/φ(N))` and `log(σ(N)/N)`.
fn logs(n: &FactoredInteger) -> (F, F, F) {
    let one = f(1);
    let mut log_n = f(0);
    let mut log_n_phi = f(0);
    let mut log_sigma = f(0);
    for &(p, a) in n.factors() {
        let pf = f(p);
        let lp = pf.ln();
        log_n += &lp * f(a as u64);
        let one_minus_inv = &one - &one / &pf;
        log_n_phi -= one_minus_inv.ln();
        let pa1 = pf.powi((a + 1).into());
        log_sigma += (&one - &one / &pa1).ln() - one_minus_inv.ln();
    }
    (log_n, log_n_phi, log_sigma)
}

fn agrees(report: &CriterionReport, precise_margin: f64) {
    assert_eq!(report.mode, Mode::LogSpace);
    assert!(
        (report.margin - precise_margin).abs() <= report.error_bound,
        "{}: margin {} vs {precise_margin}, bound {}",
        report.subject,
        report.margin,
        report.error_bound
    );
    match report.verdict {
        Verdict::Holds => assert!(precise_margin > 0.0, "{}", report.subject),
        Verdict::Fails => assert!(precise_margin < 0.0, "{}", report.subject),
        _ => {}
    }
}

#[test]
fn nicolas_scan_is_certified() {
    let table = PrimeTable::build(50_000).unwrap();
    let rows = nicolas_scan_detail(&table, 5_000).unwrap();
    assert_eq!(rows.len(), 5_000);
    let eg = exp_gamma();
    let mut log_n = f(0);
    let mut log_n_phi = f(0);
    let one = f(1);
    let mut checked = 0;
    for (i, row) in rows.iter().enumerate() {
        let p = f(table.primes()[i]);
        log_n += p.ln();
        log_n_phi -= (&one - &one / &p).ln();
        if row.report.mode != Mode::LogSpace || (i % 7 != 0 && i + 1 != rows.len()) {
            continue;
        }
        // N/φ(N) − e^γ log log N
        let margin = log_n_phi.exp() - &eg * log_n.ln();
        agrees(&row.report, to_f64(&margin));
        checked += 1;
    }
    assert!(checked > 600, "{checked}");
}

#[test]
fn totient_primorials_are_certified() {
    let table = PrimeTable::build(20_000).unwrap();
    let eg = exp_gamma();
    let one = f(1);
    let mut log_n = f(0);
    let mut log_n_phi = f(0);
    let mut done = 0;
    for r in rs_totient_primorials(&table, 2000).unwrap() {
        let k = match r.subject {
            abundancy::Subject::Primorial(k) => k,
            ref s => panic!("unexpected subject {s}"),
        };
        while done < k {
            let p = f(table.primes()[done]);
            log_n += p.ln();
            log_n_phi -= (&one - &one / &p).ln();
            done += 1;
        }
        if r.mode != Mode::LogSpace || (k % 5 != 0 && k != 2000) {
            continue;
        }
        let ll = log_n.ln();
        let margin = &eg * &ll + f(5) / (f(2) * &ll) - log_n_phi.exp();
        agrees(&r, to_f64(&margin));
    }
    assert_eq!(done, 2000);
}

#[test]
fn robin_on_large_products_is_certified() {
    let table = PrimeTable::build(20_000).unwrap();
    let eg = exp_gamma();
    // colossal-like shapes, well beyond the exact path
    for k in [60usize, 200, 1000, 2000] {
        let primes = &table.primes()[..k];
        let factors: Vec<(u64, u32)> =
            primes.iter().enumerate().map(|(i, &p)| (p, if i < 3 { 5 - i as u32 } else { 1 })).collect();
        let n = FactoredInteger::from_factors(factors).unwrap();
        let r = robin_check(&n, RobinVariant::Strict).unwrap();
        let (log_n, _, log_sigma) = logs(&n);
        let margin = &eg * log_n.ln() - log_sigma.exp();
        agrees(&r, to_f64(&margin));
        assert!(r.holds);
    }
}
