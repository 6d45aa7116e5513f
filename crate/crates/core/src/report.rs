//! Verdicts shared by every inequality checker.

use std::fmt;

use crate::factored::FactoredInteger;

/// The integer a report is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Natural(u64),
    Factored(FactoredInteger),
    /// The `k`-th primorial `2·3·…·p_k`.
    Primorial(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Natural(n) => write!(f, "{n}"),
            Subject::Factored(fi) => match fi.value_u64() {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "{fi}"),
            },
            Subject::Primorial(k) => write!(f, "primorial({k})"),
        }
    }
}

impl From<u64> for Subject {
    fn from(n: u64) -> Self {
        Subject::Natural(n)
    }
}

impl From<&FactoredInteger> for Subject {
    fn from(f: &FactoredInteger) -> Self {
        Subject::Factored(f.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// `σ(N) < e^γ N log log N`
    RobinStrict,
    /// `σ(N) < e^γ N log log N + 0.6482 N / log log N`
    RobinUnconditional,
    /// `σ(N) ≤ H_N + exp(H_N) log H_N`
    Lagarias,
    /// `N_k/φ(N_k) > e^γ log log N_k`
    Nicolas,
    /// `N/φ(N) < e^γ log log N + 2.5 / log log N`
    RsTotient,
    /// `σ(N) < (π²/6) N (1 + ω(N) log 2)` for squarefree `N`
    Duncan,
    /// `σ(N) < (e^γ/ζ(s)) N log log N` for `s`-free `N`
    SFree(u32),
    /// `Σ_{p≤x} 1/p ≤ log log x − log log 2 + 1/(2 log 2)`
    ElementaryMertens,
    /// `r₄(N) < 4e^γ N log log N` (odd) or `24 e^γ M log log M` (even)
    FourSquareBound,
}

impl Criterion {
    pub fn name(&self) -> String {
        match self {
            Criterion::RobinStrict => "robin_strict".into(),
            Criterion::RobinUnconditional => "robin_unconditional".into(),
            Criterion::Lagarias => "lagarias".into(),
            Criterion::Nicolas => "nicolas".into(),
            Criterion::RsTotient => "rs_totient".into(),
            Criterion::Duncan => "duncan".into(),
            Criterion::SFree(s) => format!("sfree_{s}"),
            Criterion::ElementaryMertens => "mertens_elementary".into(),
            Criterion::FourSquareBound => "r4_bound".into(),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "robin_strict" => Criterion::RobinStrict,
            "robin_unconditional" => Criterion::RobinUnconditional,
            "lagarias" => Criterion::Lagarias,
            "nicolas" => Criterion::Nicolas,
            "rs_totient" => Criterion::RsTotient,
            "duncan" => Criterion::Duncan,
            "mertens_elementary" => Criterion::ElementaryMertens,
            "r4_bound" => Criterion::FourSquareBound,
            other => Criterion::SFree(other.strip_prefix("sfree_")?.parse().ok()?),
        })
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Exact comparison of rationals (irrational constants replaced by
    /// rational brackets, both ends agreeing).
    ExactRational,
    /// Floating evaluation (logarithms or compensated sums) with an explicit
    /// error bound on the margin.
    LogSpace,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::ExactRational => "exact_rational",
            Mode::LogSpace => "log_space",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Boundary case where both sides coincide and the criterion admits it.
    Equality,
    /// `|margin|` is within the error bound.
    Indeterminate,
}

/// Per-integer verdict for one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub subject: Subject,
    pub criterion: Criterion,
    pub holds: bool,
    pub verdict: Verdict,
    /// `rhs − lhs` in the criterion's natural scale.
    pub margin: f64,
    pub mode: Mode,
    /// Bound on the absolute error of `margin` (0 in exact mode).
    pub error_bound: f64,
}

impl CriterionReport {
    /// Verdict from a floating margin with an error bound.
    pub fn from_margin(subject: Subject, criterion: Criterion, margin: f64, error_bound: f64) -> Self {
        let verdict = if margin.abs() <= error_bound {
            Verdict::Indeterminate
        } else if margin > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Self { subject, criterion, holds: margin > 0.0, verdict, margin, mode: Mode::LogSpace, error_bound }
    }

    /// Verdict settled exactly; `margin` is informational.
    pub fn exact(subject: Subject, criterion: Criterion, holds: bool, margin: f64) -> Self {
        Self {
            subject,
            criterion,
            holds,
            verdict: if holds { Verdict::Holds } else { Verdict::Fails },
            margin,
            mode: Mode::ExactRational,
            error_bound: 0.0,
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        self.verdict == Verdict::Indeterminate
    }

    /// Fails or is indeterminate.
    pub fn is_violation(&self) -> bool {
        matches!(self.verdict, Verdict::Fails | Verdict::Indeterminate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_roundtrip() {
        for c in [
            Criterion::RobinStrict,
            Criterion::RobinUnconditional,
            Criterion::Lagarias,
            Criterion::Nicolas,
            Criterion::RsTotient,
            Criterion::Duncan,
            Criterion::SFree(3),
            Criterion::ElementaryMertens,
            Criterion::FourSquareBound,
        ] {
            assert_eq!(Criterion::from_name(&c.name()), Some(c));
        }
        assert_eq!(Criterion::from_name("nope"), None);
    }

    #[test]
    fn margin_classification() {
        let r = CriterionReport::from_margin(7.into(), Criterion::RobinStrict, 1e-15, 1e-12);
        assert_eq!(r.verdict, Verdict::Indeterminate);
        let r = CriterionReport::from_margin(7.into(), Criterion::RobinStrict, -0.02, 1e-12);
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(!r.holds);
    }
}
