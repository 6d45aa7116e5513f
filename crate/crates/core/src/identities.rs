//! Exact verification of divisor and totient identities on a single `N`.
//!
//! Every check compares two sides as exact rationals. Checks marked
//! `printed_form` evaluate a misprinted variant next to its standard form;
//! their failures are evidence for the errata ledger, not suite failures.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{core_ratios, jordan, phi, sigma_s};
use crate::consts::zeta_bracket;
use crate::factored::FactoredInteger;
use crate::ratio::ExactRatio;

/// Default largest `N` for which divisor-sum identities are evaluated.
pub const DEFAULT_EXACT_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `lhs = rhs`
    Equality,
    /// `lhs < rhs`
    Strict,
    /// `lhs ≤ rhs`
    NonStrict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub kind: CheckKind,
    /// Sides of the first failing instance, or of the last instance checked.
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
    /// Evaluates a misprinted form kept for the errata ledger.
    pub printed_form: bool,
    /// Set when the statement is vacuous for this `N` (e.g. `N = 1`).
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub n: FactoredInteger,
    pub checks: BTreeMap<&'static str, IdentityCheck>,
    /// Divisor-sum checks not run because `N` exceeded the exact bound.
    pub skipped: Vec<&'static str>,
}

impl IdentityReport {
    /// Every standard-form check holds.
    pub fn all_standard_hold(&self) -> bool {
        self.checks.values().filter(|c| !c.printed_form).all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.printed_form && !c.holds)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Printed forms that fail for this `N`.
    pub fn errata(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.printed_form && !c.holds)
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.get(name)
    }
}

/// Accumulates instances of one named check.
struct Check {
    kind: CheckKind,
    printed_form: bool,
    result: Option<(bool, ExactRatio, ExactRatio)>,
    note: Option<&'static str>,
}

impl Check {
    fn new(kind: CheckKind) -> Self {
        Self { kind, printed_form: false, result: None, note: None }
    }

    fn printed(kind: CheckKind) -> Self {
        Self { printed_form: true, ..Self::new(kind) }
    }

    fn instance(&mut self, lhs: ExactRatio, rhs: ExactRatio) {
        if matches!(self.result, Some((false, _, _))) {
            return;
        }
        let ok = match self.kind {
            CheckKind::Equality => lhs == rhs,
            CheckKind::Strict => lhs < rhs,
            CheckKind::NonStrict => lhs <= rhs,
        };
        self.result = Some((ok, lhs, rhs));
    }

    fn vacuous(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self.result = Some((true, ExactRatio::one(), ExactRatio::one()));
        self
    }

    fn finish(self) -> IdentityCheck {
        let (holds, lhs, rhs) = self.result.unwrap_or((true, ExactRatio::one(), ExactRatio::one()));
        IdentityCheck { holds, kind: self.kind, lhs, rhs, printed_form: self.printed_form, note: self.note }
    }
}

fn int(x: BigUint) -> ExactRatio {
    ExactRatio::from_integer(BigInt::from(x))
}

fn sig(f: &FactoredInteger, s: u32) -> BigInt {
    BigInt::from(sigma_s(f, s))
}

fn frac(num: BigInt, den: BigInt) -> ExactRatio {
    ExactRatio::new(num, den)
}

/// Runs the suite with the default exact bound.
pub fn identity_suite(f: &FactoredInteger) -> IdentityReport {
    identity_suite_with_bound(f, DEFAULT_EXACT_BOUND)
}

pub fn identity_suite_with_bound(f: &FactoredInteger, exact_bound: u64) -> IdentityReport {
    let mut checks = BTreeMap::new();
    let mut skipped = Vec::new();
    let within = f.value() <= BigUint::from(exact_bound);

    product_form_checks(f, &mut checks);
    if within {
        divisor_sum_checks(f, &mut checks);
    } else {
        skipped.extend(DIVISOR_SUM_CHECKS);
    }
    IdentityReport { n: f.clone(), checks, skipped }
}

const DIVISOR_SUM_CHECKS: [&str; 20] = [
    "divisor_count",
    "sigma_closed_form",
    "sigma_reciprocal_sum",
    "sigma_reciprocal_sum_printed",
    "mobius_inversion",
    "sigma_square_divisor_sum",
    "abundancy_divisor_monotone",
    "mobius_weighted_sigma",
    "submultiplicative",
    "two_term_recursion",
    "two_term_recursion_printed",
    "sigma_square_identity",
    "sigma_product_identity",
    "totient_mobius_sum",
    "totient_divisor_sum",
    "totient_divisor_sum_printed",
    "jordan_mobius_sum",
    "jordan_divisor_sum",
    "jordan_mobius_printed",
    "totient_squarefree_sum",
];

/// Checks that only need the factorization of `N` (no divisor enumeration).
fn product_form_checks(f: &FactoredInteger, out: &mut BTreeMap<&'static str, IdentityCheck>) {
    let ratios = core_ratios(f);
    let n = BigInt::from(f.value());
    let sigma1 = sig(f, 1);
    let phi_n = BigInt::from(phi(f));
    let n_over_phi = ratios.phi_over_n.recip();

    // σ(N)/N = (N/φ(N))·ρ(N)
    let mut c = Check::new(CheckKind::Equality);
    c.instance(ratios.sigma_over_n.clone(), &n_over_phi * &ratios.rho);
    out.insert("abundancy_representation", c.finish());

    // σ(N)/φ(N) = (N/φ(N))·ρ(N), as printed
    let mut c = Check::printed(CheckKind::Equality);
    c.instance(frac(sigma1.clone(), phi_n.clone()), &n_over_phi * &ratios.rho);
    out.insert("sigma_over_phi_printed", c.finish());

    // σ(N) = ∏ (1 + p² + … + p^α), as printed (no linear term)
    let mut c = Check::printed(CheckKind::Equality);
    let missing_linear: BigInt = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let pb = BigInt::from(p);
            (2..=a).fold(BigInt::one(), |acc, k| acc + pb.pow(k))
        })
        .fold(BigInt::one(), |acc, x| acc * x);
    c.instance(ExactRatio::from_integer(sigma1.clone()), ExactRatio::from_integer(missing_linear));
    out.insert("sigma_product_missing_linear_term", c.finish());

    // σ(N) = σ₂(N) ∏ (p + 1)/(p^{α+1} + 1)
    let mut c = Check::new(CheckKind::Equality);
    let factor: ExactRatio = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let pb = BigInt::from(p);
            frac(&pb + 1, pb.pow(a + 1) + 1)
        })
        .product();
    c.instance(ExactRatio::from_integer(sigma1.clone()), &ExactRatio::from_integer(sig(f, 2)) * &factor);
    out.insert("sigma_from_sigma2", c.finish());

    // σ(N) = σ₃(N) ∏ (p² + p + 1)/(p^{2(α+1)} + p^{α+1} + 1)
    let mut c = Check::new(CheckKind::Equality);
    let factor: ExactRatio = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let pb = BigInt::from(p);
            let q = pb.pow(a + 1);
            frac(&pb * &pb + &pb + 1, &q * &q + &q + 1)
        })
        .product();
    c.instance(ExactRatio::from_integer(sigma1.clone()), &ExactRatio::from_integer(sig(f, 3)) * &factor);
    out.insert("sigma_from_sigma3", c.finish());

    // σ(N)/N = σ₂(N)/N² ∏ (p^{3α+2} + p^α)/(p² + 1) · (p³+p²+p+1)/(p^{3(α+1)}+p^{2(α+1)}+p^{α+1}+1)
    let mut c = Check::new(CheckKind::Equality);
    let factor: ExactRatio = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let pb = BigInt::from(p);
            let q = pb.pow(a + 1);
            let first = frac(pb.pow(3 * a + 2) + pb.pow(a), pb.pow(2) + 1);
            let second = frac(pb.pow(3) + pb.pow(2) + &pb + 1, q.pow(3) + q.pow(2) + &q + 1);
            first * second
        })
        .product();
    c.instance(ratios.sigma_over_n.clone(), &frac(sig(f, 2), n.pow(2)) * &factor);
    out.insert("abundancy_from_sigma2", c.finish());

    // σ(N)/N = σ₃(N)/N³ ∏ (p^{5α+3} + p^{2α})/(p³ + 1) · (Σ_{k≤5} p^k)/(Σ_{k≤5} p^{k(α+1)})
    let mut c = Check::new(CheckKind::Equality);
    let factor: ExactRatio = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let pb = BigInt::from(p);
            let q = pb.pow(a + 1);
            let first = frac(pb.pow(5 * a + 3) + pb.pow(2 * a), pb.pow(3) + 1);
            let top: BigInt = (0..=5).map(|k| pb.pow(k)).sum();
            let bottom: BigInt = (0..=5).map(|k| q.pow(k)).sum();
            first * frac(top, bottom)
        })
        .product();
    c.instance(ratios.sigma_over_n.clone(), &frac(sig(f, 3), n.pow(3)) * &factor);
    out.insert("abundancy_from_sigma3", c.finish());

    // σ(N)/N < ∏(1 − p^{−k})^{−1}·(1 + 1/p + … + 1/p^{k−1}) < ζ(k)·∏(1 + … + 1/p^{k−1}), k = 2, 3
    for (name, k) in [("abundancy_zeta2_bound", 2u32), ("abundancy_zeta3_bound", 3u32)] {
        let c = if f.is_one() {
            Check::new(CheckKind::Strict).vacuous("empty products coincide")
        } else {
            let mut c = Check::new(CheckKind::Strict);
            let mut euler = ExactRatio::one();
            let mut partial = ExactRatio::one();
            for &(p, _) in f.factors() {
                let pk = BigInt::from(p).pow(k);
                euler = euler * frac(pk.clone(), &pk - 1);
                let geometric: BigInt = (0..k).map(|j| BigInt::from(p).pow(j)).sum();
                partial = partial * frac(geometric, BigInt::from(p).pow(k - 1));
            }
            let middle = &euler * &partial;
            c.instance(ratios.sigma_over_n.clone(), middle.clone());
            // outer inequality holds iff the Euler factor over p | N is below ζ(k)
            let zeta_lo = ExactRatio::from(zeta_bracket(k).expect("bracket").lo);
            c.instance(euler, zeta_lo);
            c
        };
        out.insert(name, c.finish());
    }

    // φ(N) = N ∏(1 − 1/p)
    let mut c = Check::new(CheckKind::Equality);
    c.instance(ExactRatio::from_integer(phi_n.clone()), &ExactRatio::from_integer(n.clone()) * &ratios.phi_over_n);
    out.insert("totient_product", c.finish());

    // Euler-factor bound σ_s(N)/N^s < ∏ p^s/(p^s − 1) and σ_s(N) < ζ(s) N^s
    let c = if f.is_one() {
        Check::new(CheckKind::Strict).vacuous("empty products coincide")
    } else {
        let mut c = Check::new(CheckKind::Strict);
        for s in 1..=3u32 {
            let euler: ExactRatio = f
                .factors()
                .iter()
                .map(|&(p, _)| {
                    let ps = BigInt::from(p).pow(s);
                    frac(ps.clone(), ps - 1)
                })
                .product();
            c.instance(frac(sig(f, s), n.pow(s)), euler);
        }
        c
    };
    out.insert("sigma_euler_factor_bound", c.finish());

    let mut c = Check::new(CheckKind::Strict);
    for s in [2u32, 3, 5, 7] {
        let zeta_lo = ExactRatio::from(zeta_bracket(s).expect("bracket").lo);
        c.instance(frac(sig(f, s), n.pow(s)), zeta_lo);
    }
    out.insert("sigma_zeta_bound", c.finish());

    // J_s(N) = N^s ∏ (1 − p^{−s}) computed two ways
    let mut c = Check::new(CheckKind::Equality);
    for s in 1..=3u32 {
        let product: ExactRatio = f
            .factors()
            .iter()
            .map(|&(p, _)| {
                let ps = BigInt::from(p).pow(s);
                frac(&ps - 1, ps)
            })
            .product();
        c.instance(int(jordan(f, s)), &ExactRatio::from_integer(n.pow(s)) * &product);
    }
    out.insert("jordan_product", c.finish());
}

/// Checks that sum over the divisors of `N`.
fn divisor_sum_checks(f: &FactoredInteger, out: &mut BTreeMap<&'static str, IdentityCheck>) {
    let divisors = f.divisors();
    let n = BigInt::from(f.value());
    let dvals: Vec<BigInt> = divisors.iter().map(|d| BigInt::from(d.value())).collect();

    let mut c = Check::new(CheckKind::Equality);
    c.instance(int(sigma_s(f, 0)), ExactRatio::from_integer(divisors.len() as u64));
    out.insert("divisor_count", c.finish());

    let mut c = Check::new(CheckKind::Equality);
    for s in 1..=3u32 {
        let direct: BigInt = dvals.iter().map(|d| d.pow(s)).sum();
        c.instance(ExactRatio::from_integer(sig(f, s)), ExactRatio::from_integer(direct));
    }
    out.insert("sigma_closed_form", c.finish());

    // σ_s(N) = N^s Σ d^{−s}
    let mut c = Check::new(CheckKind::Equality);
    let mut printed = Check::printed(CheckKind::Equality);
    for s in 1..=3u32 {
        let recip_sum: ExactRatio = dvals.iter().map(|d| frac(BigInt::one(), d.pow(s))).sum();
        c.instance(ExactRatio::from_integer(sig(f, s)), &ExactRatio::from_integer(n.pow(s)) * &recip_sum);
        if s == 1 {
            printed.instance(ExactRatio::from_integer(sig(f, s)), recip_sum);
        }
    }
    out.insert("sigma_reciprocal_sum", c.finish());
    out.insert("sigma_reciprocal_sum_printed", printed.finish());

    // N^s = Σ μ(N/d) σ_s(d)
    let mut c = Check::new(CheckKind::Equality);
    for s in 1..=3u32 {
        let total: BigInt = divisors
            .iter()
            .map(|d| {
                let mu = f.div(d).expect("divisor").mobius();
                BigInt::from(mu) * sig(d, s)
            })
            .sum();
        c.instance(ExactRatio::from_integer(n.pow(s)), ExactRatio::from_integer(total));
    }
    out.insert("mobius_inversion", c.finish());

    // σ(N)² = N Σ σ(d²)/d
    let mut c = Check::new(CheckKind::Equality);
    let sum: ExactRatio = divisors.iter().zip(&dvals).map(|(d, dv)| frac(sig(&d.pow(2), 1), dv.clone())).sum();
    c.instance(ExactRatio::from_integer(sig(f, 1).pow(2)), &ExactRatio::from_integer(n.clone()) * &sum);
    out.insert("sigma_square_divisor_sum", c.finish());

    // σ(d)/d ≤ σ(N)/N for every d | N
    let mut c = Check::new(CheckKind::NonStrict);
    let abundancy = frac(sig(f, 1), n.clone());
    for (d, dv) in divisors.iter().zip(&dvals) {
        c.instance(frac(sig(d, 1), dv.clone()), abundancy.clone());
    }
    out.insert("abundancy_divisor_monotone", c.finish());

    // Σ μ(d) σ(d) = (−1)^k p₁⋯p_k
    let mut c = Check::new(CheckKind::Equality);
    let total: BigInt = divisors.iter().map(|d| BigInt::from(d.mobius()) * sig(d, 1)).sum();
    let sign = if f.omega() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    c.instance(ExactRatio::from_integer(total), ExactRatio::from_integer(sign * BigInt::from(f.radical().value())));
    out.insert("mobius_weighted_sigma", c.finish());

    // σ_s(MN) < σ_s(M)σ_s(N) whenever gcd(M, N) > 1; M ∈ {N, P(N)}
    let c = match f.largest_prime() {
        None => Check::new(CheckKind::Strict).vacuous("gcd(M, 1) = 1 for every M"),
        Some(p) => {
            let mut c = Check::new(CheckKind::Strict);
            let pf = FactoredInteger::from_factors_unchecked(vec![(p, 1)]);
            for s in 1..=2u32 {
                for m in [f, &pf] {
                    c.instance(ExactRatio::from_integer(sig(&m.mul(f), s)), ExactRatio::from_integer(sig(m, s) * sig(f, s)));
                }
            }
            c
        }
    };
    out.insert("submultiplicative", c.finish());

    // σ_s(Np) = σ_s(N)σ_s(p) − p^s σ_s(N/p) for p | N, and the printed σ_s(N) on the left
    let (mut c, mut printed) = (Check::new(CheckKind::Equality), Check::printed(CheckKind::Equality));
    if f.is_one() {
        c = c.vacuous("no prime divides 1");
        printed = printed.vacuous("no prime divides 1");
    } else {
        for &(p, _) in f.factors() {
            let pf = FactoredInteger::from_factors_unchecked(vec![(p, 1)]);
            let quotient = f.div(&pf).expect("p | N");
            for s in 1..=3u32 {
                let rhs = sig(f, s) * sig(&pf, s) - BigInt::from(p).pow(s) * sig(&quotient, s);
                c.instance(ExactRatio::from_integer(sig(&f.mul(&pf), s)), ExactRatio::from_integer(rhs.clone()));
                if p == f.factors()[0].0 && s == 1 {
                    printed.instance(ExactRatio::from_integer(sig(f, s)), ExactRatio::from_integer(rhs));
                }
            }
        }
    }
    out.insert("two_term_recursion", c.finish());
    out.insert("two_term_recursion_printed", printed.finish());

    // σ_s(N)² = Σ_{d|N} d^s σ_s(N²/d²)
    let mut c = Check::new(CheckKind::Equality);
    let n_sq = f.pow(2);
    for s in 1..=2u32 {
        let total: BigInt = divisors
            .iter()
            .zip(&dvals)
            .map(|(d, dv)| dv.pow(s) * sig(&n_sq.div(&d.pow(2)).expect("d² | N²"), s))
            .sum();
        c.instance(ExactRatio::from_integer(sig(f, s).pow(2)), ExactRatio::from_integer(total));
    }
    out.insert("sigma_square_identity", c.finish());

    // σ_s(M)σ_s(N) = Σ_{d | gcd(M,N)} d^s σ_s(MN/d²), M ∈ {N, 12}
    let mut c = Check::new(CheckKind::Equality);
    let twelve = FactoredInteger::from_factors_unchecked(vec![(2, 2), (3, 1)]);
    for m in [f, &twelve] {
        let g = m.gcd(f);
        let mn = m.mul(f);
        for s in 1..=2u32 {
            let total: BigInt = g
                .divisors()
                .iter()
                .map(|d| BigInt::from(d.value()).pow(s) * sig(&mn.div(&d.pow(2)).expect("d² | MN"), s))
                .sum();
            c.instance(ExactRatio::from_integer(sig(m, s) * sig(f, s)), ExactRatio::from_integer(total));
        }
    }
    out.insert("sigma_product_identity", c.finish());

    // φ(N) = N Σ μ(d)/d
    let mut c = Check::new(CheckKind::Equality);
    let sum: ExactRatio = divisors.iter().zip(&dvals).map(|(d, dv)| frac(BigInt::from(d.mobius()), dv.clone())).sum();
    c.instance(int(phi(f)), &ExactRatio::from_integer(n.clone()) * &sum);
    out.insert("totient_mobius_sum", c.finish());

    // N = Σ φ(d), and the printed φ(N) = Σ φ(d)
    let total: BigInt = divisors.iter().map(|d| BigInt::from(phi(d))).sum();
    let mut c = Check::new(CheckKind::Equality);
    c.instance(ExactRatio::from_integer(n.clone()), ExactRatio::from_integer(total.clone()));
    out.insert("totient_divisor_sum", c.finish());
    let mut c = Check::printed(CheckKind::Equality);
    c.instance(int(phi(f)), ExactRatio::from_integer(total));
    out.insert("totient_divisor_sum_printed", c.finish());

    // J_s(N) = Σ μ(N/d) d^s; N^s = Σ J_s(d); printed N^s = Σ μ(N/d) J_s(d)
    let (mut mob, mut div_sum, mut printed) = (
        Check::new(CheckKind::Equality),
        Check::new(CheckKind::Equality),
        Check::printed(CheckKind::Equality),
    );
    for s in 1..=3u32 {
        let mut by_mobius = BigInt::zero();
        let mut jordan_sum = BigInt::zero();
        let mut printed_sum = BigInt::zero();
        for (d, dv) in divisors.iter().zip(&dvals) {
            let mu = BigInt::from(f.div(d).expect("divisor").mobius());
            let jd = BigInt::from(jordan(d, s));
            by_mobius += &mu * dv.pow(s);
            printed_sum += &mu * &jd;
            jordan_sum += jd;
        }
        mob.instance(int(jordan(f, s)), ExactRatio::from_integer(by_mobius));
        div_sum.instance(ExactRatio::from_integer(n.pow(s)), ExactRatio::from_integer(jordan_sum));
        printed.instance(ExactRatio::from_integer(n.pow(s)), ExactRatio::from_integer(printed_sum));
    }
    out.insert("jordan_mobius_sum", mob.finish());
    out.insert("jordan_divisor_sum", div_sum.finish());
    out.insert("jordan_mobius_printed", printed.finish());

    // N/φ(N) = m Σ_{d|N, m|d} μ(d)²/φ(d) for squarefree m | N; printed with (μ(m)/m)^{−1}
    let (mut c, mut printed) = (Check::new(CheckKind::Equality), Check::printed(CheckKind::Equality));
    let n_over_phi = frac(n.clone(), BigInt::from(phi(f)));
    for m in divisors.iter().filter(|m| m.is_squarefree()) {
        let sum: ExactRatio = divisors
            .iter()
            .filter(|d| d.is_squarefree() && d.div(m).is_some())
            .map(|d| frac(BigInt::one(), BigInt::from(phi(d))))
            .sum();
        let mv = BigInt::from(m.value());
        c.instance(n_over_phi.clone(), &ExactRatio::from_integer(mv.clone()) * &sum);
        let printed_factor = frac(mv, BigInt::from(m.mobius()));
        printed.instance(n_over_phi.clone(), &printed_factor * &sum);
    }
    out.insert("totient_squarefree_sum", c.finish());
    out.insert("totient_squarefree_sum_printed", printed.finish());
}
