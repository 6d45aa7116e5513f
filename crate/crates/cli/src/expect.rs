//! Known violations that do not fail a run.
//!
//! One criterion per line followed by subjects: integers, inclusive ranges
//! `a..b`, or literal labels such as `primorial(9)`. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_EXPECTATIONS: &str = include_str!("../expectations/default.txt");

/// A criterion failure found by a subcommand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub criterion: String,
    pub subject: String,
}

impl Violation {
    pub fn new(criterion: impl Into<String>, subject: impl ToString) -> Self {
        Self { criterion: criterion.into(), subject: subject.to_string() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.criterion, self.subject)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Pattern {
    Range(u64, u64),
    Literal(String),
}

impl Pattern {
    fn matches(&self, subject: &str) -> bool {
        match self {
            Pattern::Range(lo, hi) => subject.parse::<u64>().is_ok_and(|n| (*lo..=*hi).contains(&n)),
            Pattern::Literal(s) => s == subject,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    by_criterion: BTreeMap<String, Vec<Pattern>>,
}

impl Expectations {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            let mut tokens = line.split_whitespace();
            let Some(criterion) = tokens.next() else { continue };
            let patterns = out.by_criterion.entry(criterion.to_string()).or_default();
            for tok in tokens {
                let pattern = match tok.split_once("..") {
                    Some((a, b)) => {
                        let parse = |s: &str| s.parse::<u64>().map_err(|e| format!("line {}: bad range {tok}: {e}", i + 1));
                        Pattern::Range(parse(a)?, parse(b)?)
                    }
                    None => match tok.parse::<u64>() {
                        Ok(n) => Pattern::Range(n, n),
                        Err(_) => Pattern::Literal(tok.to_string()),
                    },
                };
                patterns.push(pattern);
            }
        }
        Ok(out)
    }

    pub fn default_set() -> Self {
        Self::parse(DEFAULT_EXPECTATIONS).expect("the bundled expectation file parses")
    }

    pub fn is_expected(&self, v: &Violation) -> bool {
        self.by_criterion.get(&v.criterion).is_some_and(|ps| ps.iter().any(|p| p.matches(&v.subject)))
    }

    pub fn unexpected<'a>(&self, vs: &'a [Violation]) -> Vec<&'a Violation> {
        vs.iter().filter(|v| !self.is_expected(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_match() {
        let e = Expectations::parse("# c\nrobin_strict 3..5040\nrs_totient 223092870 primorial(9) # tail\n\n").unwrap();
        assert!(e.is_expected(&Violation::new("robin_strict", 5040)));
        assert!(!e.is_expected(&Violation::new("robin_strict", 5041)));
        assert!(e.is_expected(&Violation::new("rs_totient", "primorial(9)")));
        assert!(!e.is_expected(&Violation::new("lagarias", 2)));
        assert!(Expectations::parse("x 1..b").is_err());
    }

    #[test]
    fn defaults_cover_known_boundaries() {
        let e = Expectations::default_set();
        for v in [
            Violation::new("robin_strict", 5040),
            Violation::new("robin_unconditional", 12),
            Violation::new("rs_totient", 223092870),
            Violation::new("r4_bound", 17),
        ] {
            assert!(e.is_expected(&v), "{v}");
        }
        assert!(!e.is_expected(&Violation::new("robin_strict", 5041)));
    }
}
