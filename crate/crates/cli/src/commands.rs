//! One function per subcommand, each producing tables and violations.

use abundancy::arith::{log_sigma_over_n, sigma};
use abundancy::criteria::{
    nicolas_scan_detail, primorial_probe_scan, rs_totient_primorials, scan_range, FChoice, ScanCheck,
};
use abundancy::errata::errata_ledger;
use abundancy::extremal::{ca_oracle, colossally_abundant, multiple_abundancy_check, record_scan, RecordKind};
use abundancy::foursquares::{r4_bound, r4_bound_check, r4_bruteforce_prefix, r4_exception_scan, r4_jacobi};
use abundancy::identities::identity_suite;
use abundancy::mertens::{
    ap_harmonic_slope, b_printed_series, elementary_bound_scan, estimate_constants, euler_product_grid, harmonic_grid,
    log_grid, prime_sum_grid, Envelope, HarmonicVariant, PrimeSumVariant, ProductVariant, AP_CLASS,
};
use abundancy::num::fmt15;
use abundancy::stats::{
    average_order, binomial_row_average, density_search, erdos_kac, limsup_tracker, normal_order_fraction,
    normalized_abundancy, AverageFn, LimsupClass,
};
use abundancy::{consts, Error, FactoredInteger, PrimeTable, Result, Subject};
use rayon::prelude::*;

use crate::output::{Cell, Report, Table};
use crate::{row, Command, Opts, Outcome, RunConfig, Violation};

/// Log-spaced sample points for the sum and product grids.
const GRID_POINTS: usize = 200;
const GRID_LO: f64 = 286.0;
const EK_BINS: usize = 20;
const CA_GRID: usize = 20;
const NORMAL_ORDER_BAND: f64 = 1.5;

pub(crate) fn dispatch(command: Command, cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    match command {
        Command::ScanRobin => scan(
            cfg,
            opts,
            &[
                ScanCheck::RobinStrict,
                ScanCheck::RobinUnconditional,
                ScanCheck::RsTotient,
                ScanCheck::RobinSmooth,
                ScanCheck::RobinDyadic,
            ],
        ),
        Command::ScanLagarias => scan(cfg, opts, &[ScanCheck::Lagarias]),
        Command::Primorials => primorials(cfg),
        Command::MertensGrid => mertens_grid(cfg, opts),
        Command::ProductsGrid => products_grid(cfg),
        Command::Constants => constants(cfg, opts),
        Command::Extremal => extremal(cfg),
        Command::Ca => ca(cfg, opts),
        Command::ErdosKac => erdos_kac_cmd(cfg),
        Command::Averages => averages(cfg),
        Command::R4 => r4(cfg, opts),
        Command::Density => density(cfg, opts),
        Command::Identities => identities(cfg),
        Command::Errata => errata(cfg),
    }
}

fn table(cfg: &RunConfig) -> Result<PrimeTable> {
    PrimeTable::build_cached(cfg.limit, cfg.cache_dir.as_deref())
}

fn fi(n: u64) -> FactoredInteger {
    FactoredInteger::of_u64(n).expect("n ≥ 1")
}

fn natural(s: &Subject) -> u64 {
    match s {
        Subject::Natural(n) => *n,
        Subject::Factored(f) => f.value_u64().unwrap_or(u64::MAX),
        Subject::Primorial(k) => *k as u64,
    }
}

fn ap_class(opts: &Opts) -> Result<(u64, u64)> {
    let (a, q) = (opts.residue.unwrap_or(AP_CLASS.0), opts.modulus.unwrap_or(AP_CLASS.1));
    if a >= q && q > 1 {
        return Err(Error::Domain(format!("residue {a} is not reduced modulo {q}")));
    }
    Ok((a, q))
}

fn scan(cfg: &RunConfig, opts: &Opts, checks: &[ScanCheck]) -> Result<Outcome> {
    let result = scan_range(1, cfg.limit, checks, !opts.violators)?;
    let mut rows = Table::new("rows", &["n", "criterion", "holds", "margin", "mode"]);
    let mut violations = Vec::new();
    for r in &result.rows {
        let n = natural(&r.report.subject);
        if r.report.is_violation() {
            violations.push(Violation::new(r.check.name(), n));
        }
        rows.push(row![n, r.check.name(), r.report.holds, r.report.margin, r.report.mode.name()]);
    }
    let mut summary = Table::new("summary", &["criterion", "checked", "violations", "escalated", "min_margin_n", "min_margin"]);
    for (check, s) in &result.summaries {
        summary.push(row![
            check.name(),
            s.checked,
            s.violations,
            s.escalated,
            s.min_margin.map(|m| m.0),
            s.min_margin.map(|m| m.1)
        ]);
    }
    Ok(Outcome { report: Report { tables: vec![rows, summary] }, violations })
}

fn primorials(cfg: &RunConfig) -> Result<Outcome> {
    let t = table(cfg)?;
    let k_max = t.len();
    let mut violations = Vec::new();

    let mut nicolas = Table::new("nicolas", &["k", "p_k", "log_N", "log_N_over_phi", "holds", "margin", "mode"]);
    for r in nicolas_scan_detail(&t, k_max)? {
        if r.report.is_violation() {
            violations.push(Violation::new("nicolas", &r.report.subject));
        }
        nicolas.push(row![r.k, r.p_k, r.log_n, r.log_n_over_phi, r.report.holds, r.report.margin, r.report.mode.name()]);
    }

    let mut rs = Table::new("rs_totient", &["k", "p_k", "holds", "margin", "mode"]);
    for r in rs_totient_primorials(&t, k_max)? {
        let k = natural(&r.subject) as usize;
        if r.is_violation() {
            violations.push(Violation::new("rs_totient", &r.subject));
        }
        rs.push(row![k, t.primes()[k - 1], r.holds, r.margin, r.mode.name()]);
    }

    let mut probe = Table::new("probe", &["k", "p_k", "log_N", "delta", "tail", "lhs12", "rhs12"]);
    for p in primorial_probe_scan(&t, k_max, FChoice::Sqrt { c: 1.0 })? {
        if !(p.delta > 0.0) {
            violations.push(Violation::new("primorial_delta", format!("primorial({})", p.k)));
        }
        if !p.contradiction_side_holds() {
            violations.push(Violation::new("primorial_probe", format!("primorial({})", p.k)));
        }
        probe.push(row![p.k, p.p_k, p.log_n, p.delta, p.tail, p.lhs_12, p.rhs_12]);
    }
    Ok(Outcome { report: Report { tables: vec![nicolas, rs, probe] }, violations })
}

fn grid(cfg: &RunConfig) -> Result<Vec<f64>> {
    if (cfg.limit as f64) < GRID_LO {
        return Err(Error::Domain(format!("the grid needs --limit of at least {GRID_LO}")));
    }
    Ok(log_grid(GRID_LO, cfg.limit as f64, GRID_POINTS))
}

const SAMPLE_COLUMNS: [&str; 7] = ["variant", "x", "empirical", "main_term", "residual", "envelope", "within"];

fn mertens_grid(cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    let t = table(cfg)?;
    let xs = grid(cfg)?;
    let (a, q) = ap_class(opts)?;
    let mut violations = Vec::new();

    let mut sums = Table::new("prime_sums", &SAMPLE_COLUMNS);
    let ap_name = format!("ap_{a}_mod_{q}");
    let variants = [
        ("inv_p".to_string(), PrimeSumVariant::InvP),
        ("inv_p_minus_1".to_string(), PrimeSumVariant::InvPMinus1),
        ("inv_p_plus_1".to_string(), PrimeSumVariant::InvPPlus1),
        (ap_name.clone(), PrimeSumVariant::Ap { a, q }),
    ];
    for (name, variant) in variants {
        for s in prime_sum_grid(&t, &xs, variant, cfg.envelope)? {
            // only the plain sum under the corrected envelope is gated
            if variant == PrimeSumVariant::InvP && cfg.envelope == Envelope::Corrected && !s.within {
                violations.push(Violation::new("mertens_envelope", s.x.floor() as u64));
            }
            sums.push(row![name.as_str(), s.x, s.empirical, s.main_term, s.residual, s.envelope, s.within]);
        }
    }

    let mut harmonic = Table::new("harmonic_sums", &SAMPLE_COLUMNS);
    for (name, variant) in [("plain".to_string(), HarmonicVariant::Plain), (ap_name, HarmonicVariant::Ap { a, q })] {
        for s in harmonic_grid(&xs, &variant)? {
            harmonic.push(row![name.as_str(), s.x, s.empirical, s.main_term, s.residual, s.envelope, s.within]);
        }
    }

    let (worst, failures) = elementary_bound_scan(&t, cfg.limit as f64)?;
    for f in &failures {
        violations.push(Violation::new("mertens_elementary", &f.subject));
    }
    let mut elementary = Table::new("elementary_bound", &["x_max", "worst_x", "worst_margin", "failures"]);
    elementary.push(row![cfg.limit, worst.subject.to_string(), worst.margin, failures.len()]);

    Ok(Outcome { report: Report { tables: vec![sums, harmonic, elementary] }, violations })
}

fn products_grid(cfg: &RunConfig) -> Result<Outcome> {
    let t = table(cfg)?;
    let xs = grid(cfg)?;
    let mut violations = Vec::new();
    let mut products = Table::new("products", &SAMPLE_COLUMNS);
    for variant in [ProductVariant::OneMinus, ProductVariant::POverPm1, ProductVariant::OnePlus] {
        for s in euler_product_grid(&t, &xs, variant)? {
            if variant != ProductVariant::OnePlus && !s.within {
                violations.push(Violation::new("product_envelope", format!("{}@{}", variant.name(), s.x.floor())));
            }
            products.push(row![variant.name(), s.x, s.empirical, s.main_term, s.residual, s.envelope, s.within]);
        }
    }
    Ok(Outcome { report: Report { tables: vec![products] }, violations })
}

fn constants(cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    let t = table(cfg)?;
    let mut est = Table::new("constants", &["name", "method", "value", "reference", "abs_error"]);
    for c in estimate_constants(&t)? {
        est.push(row![c.name, c.method, c.value, c.reference, c.abs_error]);
    }
    let printed = b_printed_series(60);
    est.push(row!["B", "printed_series", printed, consts::MERTENS_B, (printed - consts::MERTENS_B).abs()]);

    let (a, q) = ap_class(opts)?;
    let slope = ap_harmonic_slope(a, q, cfg.limit as f64)?;
    let mut slopes = Table::new("ap_harmonic_slope", &["a", "q", "fitted", "over_q", "over_phi_q", "prefers_over_q"]);
    slopes.push(row![a, q, slope.fitted, slope.over_q, slope.over_phi_q, slope.prefers_over_q()]);
    Ok(Outcome { report: Report { tables: vec![est, slopes] }, violations: Vec::new() })
}

fn extremal(cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Table::new("records", &["n", "key_numerator", "key_denominator", "kind"]);
    for kind in [RecordKind::HighlyComposite, RecordKind::Superabundant] {
        for e in record_scan(cfg.limit, kind)? {
            records.push(row![e.n, Cell::int(e.key.numer()), Cell::int(e.key.denom()), kind.name()]);
        }
    }
    const M_MAX: u64 = 10;
    let m = multiple_abundancy_check(cfg.limit, M_MAX)?;
    let mut multiples = Table::new("multiple_abundancy", &["n_max", "m_max", "pairs_tested", "counterexamples"]);
    multiples.push(row![cfg.limit, M_MAX, m.pairs_tested, m.counterexamples.len()]);
    let violations = m.counterexamples.iter().map(|(m, n)| Violation::new("multiple_abundancy", format!("{m}*{n}"))).collect();
    Ok(Outcome { report: Report { tables: vec![records, multiples] }, violations })
}

fn ca(cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    let t = table(cfg)?;
    let m_max = opts.oracle_limit.unwrap_or(cfg.limit);
    let eps_list: Vec<f64> = match opts.eps {
        Some(e) => vec![e],
        None => (0..CA_GRID).map(|i| 2.0 - i as f64 * (1.9 / CA_GRID as f64)).collect(),
    };
    let nums = eps_list.iter().map(|&e| colossally_abundant(e, &t)).collect::<Result<Vec<_>>>()?;
    let oracles: Vec<Option<u64>> = eps_list
        .par_iter()
        .zip(&nums)
        .map(|(&e, f)| match f.value_u64() {
            Some(v) if v <= m_max => ca_oracle(e, m_max).map(Some),
            _ => Ok(None),
        })
        .collect::<Result<_>>()?;

    let mut violations = Vec::new();
    let mut out = Table::new(
        "colossally_abundant",
        &["eps", "n", "value", "log_n", "log_sigma_over_n", "oracle", "agrees", "divides_next"],
    );
    for (i, (&e, f)) in eps_list.iter().zip(&nums).enumerate() {
        let agrees = oracles[i].map(|o| Some(o) == f.value_u64());
        let divides = nums.get(i + 1).map(|next| next.div(f).is_some());
        if agrees == Some(false) {
            violations.push(Violation::new("ca_oracle", fmt15(e)));
        }
        if divides == Some(false) {
            violations.push(Violation::new("ca_chain", fmt15(e)));
        }
        out.push(row![e, f.to_string(), f.value_u64(), f.ln(), log_sigma_over_n(f).value(), oracles[i], agrees, divides]);
    }
    Ok(Outcome { report: Report { tables: vec![out] }, violations })
}

fn erdos_kac_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let ek = erdos_kac(cfg.limit, EK_BINS)?;
    let h = &ek.histogram;
    let mut hist = Table::new("histogram", &["bin_lo", "bin_hi", "mass"]);
    for (i, &m) in h.masses.iter().enumerate() {
        hist.push(row![h.bin_edges[i], h.bin_edges[i + 1], m]);
    }
    let mut summary = Table::new("summary", &["x", "samples", "ks_distance"]);
    summary.push(row![ek.x, h.sample_count, ek.ks_distance]);
    Ok(Outcome { report: Report { tables: vec![hist, summary] }, violations: Vec::new() })
}

fn averages(cfg: &RunConfig) -> Result<Outcome> {
    let x = cfg.limit;
    let mut orders = Table::new(
        "average_order",
        &[
            "function",
            "x",
            "empirical_sum",
            "main_term",
            "fitted_constant",
            "residual",
            "alt_label",
            "alt_main_term",
            "alt_residual",
            "alt_fits_better",
        ],
    );
    for f in [AverageFn::Sigma0, AverageFn::SigmaS(1), AverageFn::SigmaS(2), AverageFn::Phi, AverageFn::Omega] {
        let r = average_order(x, f)?;
        let alt = r.alternative.as_ref();
        orders.push(row![
            f.name(),
            r.x,
            Cell::int(&r.empirical_sum),
            r.main_term,
            r.fitted_constant,
            r.residual,
            alt.map(|a| a.label),
            alt.map(|a| a.main_term),
            alt.map(|a| a.residual),
            alt.map(|a| a.fits_better)
        ]);
    }
    let mut tables = vec![orders];

    let mut binomial = Table::new("binomial_rows", &["n", "sigma_avg", "phi_avg", "log_log_log_n"]);
    for n in [10u64, 100, 1000].into_iter().filter(|&n| n <= x) {
        let b = binomial_row_average(n)?;
        binomial.push(row![b.n, b.sigma_avg, b.phi_avg, b.log_log_log_n]);
    }
    tables.push(binomial);

    if x >= 100 {
        let mut limsup = Table::new(
            "limsup",
            &["class", "x", "sup_sigma", "argmax_sigma", "sigma_constant", "sup_phi", "argmax_phi", "phi_constant"],
        );
        for class in [LimsupClass::All, LimsupClass::Odd, LimsupClass::Squarefree] {
            let r = limsup_tracker(x, class)?;
            limsup.push(row![
                class.name(),
                r.x,
                r.sup_sigma,
                r.argmax_sigma,
                r.sigma_constant,
                r.sup_phi,
                r.argmax_phi,
                r.phi_constant
            ]);
        }
        tables.push(limsup);
    }
    if x >= 10_000 {
        let r = normal_order_fraction(x, NORMAL_ORDER_BAND)?;
        let mut normal = Table::new("normal_order", &["x", "band", "sigma_fraction", "phi_fraction"]);
        normal.push(row![r.x, r.band, r.sigma_fraction, r.phi_fraction]);
        tables.push(normal);
    }
    Ok(Outcome { report: Report { tables }, violations: Vec::new() })
}

fn r4(cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    let mut violations = Vec::new();
    let oracle_limit = opts.oracle_limit.unwrap_or(100);
    let brute = r4_bruteforce_prefix(oracle_limit)?;
    let mismatches: Vec<u64> = (1..=oracle_limit)
        .into_par_iter()
        .filter(|&n| r4_jacobi(&fi(n)).r4 != brute[n as usize].into())
        .collect();
    for &n in &mismatches {
        violations.push(Violation::new("r4_oracle", n));
    }
    let mut oracle = Table::new("oracle", &["limit", "checked", "mismatches"]);
    oracle.push(row![oracle_limit, oracle_limit, mismatches.len()]);

    let scan = r4_exception_scan(1, cfg.limit, false)?;
    for &n in &scan.exceptions {
        violations.push(Violation::new("r4_bound", n));
    }
    let ns: Vec<u64> = if opts.violators { scan.exceptions.clone() } else { (1..=cfg.limit).collect() };
    let rows: Vec<Vec<Cell>> = ns
        .par_iter()
        .map(|&n| {
            let f = fi(n);
            let j = r4_jacobi(&f);
            let (bound, holds) = match (r4_bound(&f), r4_bound_check(&f)) {
                (Ok(b), Ok(c)) => (Some(b), Some(c.holds)),
                _ => (None, None),
            };
            row![n, Cell::int(&j.r4), j.parity_branch.name(), bound, holds]
        })
        .collect();
    let mut values = Table::new("r4", &["n", "r4", "branch", "bound", "holds"]);
    values.rows = rows;

    let mut summary = Table::new("summary", &["lo", "hi", "checked", "domain_excluded", "exceptions", "largest_exception"]);
    summary.push(row![scan.lo, scan.hi, scan.checked, scan.domain_excluded, scan.exceptions.len(), scan.largest_exception()]);
    Ok(Outcome { report: Report { tables: vec![oracle, values, summary] }, violations })
}

fn density(cfg: &RunConfig, opts: &Opts) -> Result<Outcome> {
    let tol = opts.eps.unwrap_or(1e-3);
    let targets: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let hits = targets.par_iter().map(|&t| density_search(t, tol, cfg.limit)).collect::<Result<Vec<_>>>()?;
    let mut out = Table::new("density", &["target", "tol", "budget", "witness", "normalized_abundancy"]);
    for (&t, hit) in targets.iter().zip(hits) {
        let value = hit.map(|n| {
            let s = sigma(&fi(n));
            normalized_abundancy(n, u64::try_from(s).expect("σ(n) fits u64 for n in budget"))
        });
        out.push(row![t, tol, cfg.limit, hit, value]);
    }
    Ok(Outcome { report: Report { tables: vec![out] }, violations: Vec::new() })
}

fn identities(cfg: &RunConfig) -> Result<Outcome> {
    struct Tally {
        printed_form: bool,
        holds: u64,
        fails: u64,
        first_failure: Option<u64>,
    }
    let per_n: Vec<Vec<(&'static str, bool, bool)>> = (1..=cfg.limit)
        .into_par_iter()
        .map(|n| identity_suite(&fi(n)).checks.iter().map(|(name, c)| (*name, c.printed_form, c.holds)).collect())
        .collect();
    let mut tallies: std::collections::BTreeMap<&'static str, Tally> = Default::default();
    let mut violations = Vec::new();
    for (i, checks) in per_n.iter().enumerate() {
        let n = i as u64 + 1;
        for &(name, printed_form, holds) in checks {
            let t = tallies.entry(name).or_insert(Tally { printed_form, holds: 0, fails: 0, first_failure: None });
            if holds {
                t.holds += 1;
            } else {
                t.fails += 1;
                t.first_failure.get_or_insert(n);
                if !printed_form {
                    violations.push(Violation::new("identity", format!("{name}@{n}")));
                }
            }
        }
    }
    let mut ids = Table::new("identities", &["name", "printed_form", "holds", "fails", "first_failure"]);
    for (name, t) in &tallies {
        ids.push(row![*name, t.printed_form, t.holds, t.fails, t.first_failure]);
    }

    let duncan: Vec<(u64, abundancy::CriterionReport)> = (1..=cfg.limit)
        .into_par_iter()
        .filter_map(|n| {
            let f = fi(n);
            f.is_squarefree().then(|| (n, abundancy::arith::duncan_bound(&f).expect("squarefree")))
        })
        .collect();
    let worst = duncan.iter().min_by(|a, b| a.1.margin.total_cmp(&b.1.margin));
    let failures: Vec<u64> = duncan.iter().filter(|(_, r)| r.is_violation()).map(|(n, _)| *n).collect();
    for &n in &failures {
        violations.push(Violation::new("duncan", n));
    }
    let mut d = Table::new("duncan", &["limit", "squarefree_checked", "failures", "min_margin_n", "min_margin"]);
    d.push(row![cfg.limit, duncan.len(), failures.len(), worst.map(|w| w.0), worst.map(|w| w.1.margin)]);
    Ok(Outcome { report: Report { tables: vec![ids, d] }, violations })
}

fn errata(cfg: &RunConfig) -> Result<Outcome> {
    let t = table(cfg)?;
    let mut out = Table::new("errata", &["name", "printed", "corrected", "confirmed", "evidence"]);
    for e in errata_ledger(&t)? {
        out.push(row![e.name, e.printed, e.corrected, e.confirmed, e.evidence]);
    }
    Ok(Outcome { report: Report { tables: vec![out] }, violations: Vec::new() })
}
