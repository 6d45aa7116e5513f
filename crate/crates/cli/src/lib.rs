//! Command-line front end: argument parsing, the worker pool, report output
//! and the violation gate.

mod commands;
pub mod expect;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use abundancy::mertens::Envelope;
use abundancy::primes::CACHE_ENV;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use expect::{Expectations, Violation};
pub use output::{Cell, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "abundancy", version, about = "Divisor-function criteria, extremal numbers and Mertens-type sums")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Upper end of the scanned range; each subcommand has its own default
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    pub limit: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads [default: available cores]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,
    /// Remainder envelope for the prime-reciprocal sum
    #[arg(long, global = true, value_enum, default_value_t = EnvelopeArg::Corrected)]
    pub envelope: EnvelopeArg,
    /// Epsilon for `ca`, tolerance for `density`
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub modulus: Option<u64>,
    #[arg(long, global = true)]
    pub residue: Option<u64>,
    /// Only list failing rows
    #[arg(long, global = true)]
    pub violators: bool,
    /// File of expected violations, replacing the bundled defaults
    #[arg(long, global = true, value_name = "FILE")]
    pub expect: Option<PathBuf>,
    /// Range for brute-force and exhaustive oracles
    #[arg(long = "oracle-limit", global = true)]
    pub oracle_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvelopeArg {
    Printed,
    Corrected,
}

impl From<EnvelopeArg> for Envelope {
    fn from(e: EnvelopeArg) -> Self {
        match e {
            EnvelopeArg::Printed => Envelope::Printed,
            EnvelopeArg::Corrected => Envelope::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Robin, unconditional Robin, totient and filtered Robin checks over 1..=limit
    ScanRobin,
    /// Lagarias' harmonic-number bound over 1..=limit
    ScanLagarias,
    /// Nicolas, totient and probe quantities for primorials with p_k ≤ limit
    Primorials,
    /// Prime-reciprocal and harmonic sums against their envelopes
    MertensGrid,
    /// Euler products against their envelopes
    ProductsGrid,
    /// Estimates of γ, B and the progression constants
    Constants,
    /// Highly composite and superabundant records up to limit
    Extremal,
    /// Colossally abundant numbers on an epsilon grid (or at --eps)
    Ca,
    /// Histogram of normalized ω(n) and its distance to the normal law
    ErdosKac,
    /// Average and normal orders, limsups and binomial-row averages
    Averages,
    /// Four-square counts: oracle agreement and bound exceptions
    R4,
    /// Integers whose normalized abundancy is near given targets
    Density,
    /// Divisor-sum identities and Duncan's bound for n ≤ limit
    Identities,
    /// Misprints detected by the checks, with evidence
    Errata,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ScanRobin => "scan-robin",
            Command::ScanLagarias => "scan-lagarias",
            Command::Primorials => "primorials",
            Command::MertensGrid => "mertens-grid",
            Command::ProductsGrid => "products-grid",
            Command::Constants => "constants",
            Command::Extremal => "extremal",
            Command::Ca => "ca",
            Command::ErdosKac => "erdos-kac",
            Command::Averages => "averages",
            Command::R4 => "r4",
            Command::Density => "density",
            Command::Identities => "identities",
            Command::Errata => "errata",
        }
    }

    pub fn default_limit(self) -> u64 {
        match self {
            Command::ScanRobin | Command::ScanLagarias | Command::Extremal | Command::R4 => 10_000,
            Command::Identities => 1_000,
            Command::Primorials | Command::Ca | Command::Density => 100_000,
            Command::MertensGrid
            | Command::ProductsGrid
            | Command::Constants
            | Command::ErdosKac
            | Command::Averages
            | Command::Errata => 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub limit: u64,
    pub format: Format,
    pub threads: usize,
    pub envelope: Envelope,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(command: Command, opts: &Opts) -> Self {
        Self {
            limit: opts.limit.unwrap_or_else(|| command.default_limit()),
            format: opts.format,
            threads: opts
                .threads
                .map_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()), |t| t as usize),
            envelope: opts.envelope.into(),
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }
}

/// Result of one subcommand before output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub report: Report,
    pub violations: Vec<Violation>,
}

/// Runs one invocation; `argv[0]` is the program name. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let expectations = match &cli.opts.expect {
        None => Expectations::default_set(),
        Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| Expectations::parse(&t)) {
            Ok(e) => e,
            Err(e) => {
                let _ = writeln!(err, "error: cannot use expectation file {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
    };
    let config = RunConfig::resolve(cli.command, &cli.opts);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} worker threads: {e}", config.threads);
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| commands::dispatch(cli.command, &config, &cli.opts)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let header = format!(
        "# generated by abundancy {} ({}, limit {}) at unix time {stamp}",
        env!("CARGO_PKG_VERSION"),
        cli.command.name(),
        config.limit
    );
    let written = match config.format {
        Format::Csv => writeln!(out, "{header}").and_then(|_| outcome.report.write_csv(out)),
        Format::Json => writeln!(err, "{header}").and_then(|_| outcome.report.write_json(out)),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: writing output: {e}");
        return EXIT_USAGE;
    }

    let unexpected = expectations.unexpected(&outcome.violations);
    if !outcome.violations.is_empty() {
        let _ = writeln!(
            err,
            "{} violation(s), {} expected, {} unexpected",
            outcome.violations.len(),
            outcome.violations.len() - unexpected.len(),
            unexpected.len()
        );
    }
    const SHOWN: usize = 50;
    for v in unexpected.iter().take(SHOWN) {
        let _ = writeln!(err, "unexpected violation: {v}");
    }
    if unexpected.len() > SHOWN {
        let _ = writeln!(err, "... and {} more", unexpected.len() - SHOWN);
    }
    if unexpected.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("abundancy").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        let (code, _, err) = run_str(&["scan-robin", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--bogus"));
        assert_eq!(run_str(&["scan-robin", "--limit", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["scan-robin", "--threads", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn config_defaults() {
        let cli = Cli::try_parse_from(["abundancy", "r4", "--threads", "3"]).unwrap();
        let c = RunConfig::resolve(cli.command, &cli.opts);
        assert_eq!(c.limit, 10_000);
        assert_eq!(c.threads, 3);
        assert_eq!(c.envelope, Envelope::Corrected);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn global_flags_before_subcommand() {
        let cli = Cli::try_parse_from(["abundancy", "--limit", "50", "--format", "json", "identities"]).unwrap();
        assert_eq!(cli.opts.limit, Some(50));
        assert_eq!(cli.opts.format, Format::Json);
    }
}
