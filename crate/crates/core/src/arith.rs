//! Exact arithmetic functions on factored integers.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::consts::{EXP_GAMMA, ZETA2};
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::num::CompensatedSum;
use crate::ratio::ExactRatio;
use crate::report::{Criterion, CriterionReport};

/// `σ_s(p^α) = (p^{(α+1)s} − 1)/(p^s − 1)`, or `α + 1` when `s = 0`.
pub fn sigma_s_prime_power(p: u64, alpha: u32, s: u32) -> BigUint {
    if s == 0 {
        return BigUint::from(alpha + 1);
    }
    let ps = BigUint::from(p).pow(s);
    (ps.pow(alpha + 1) - 1u32) / (ps - 1u32)
}

/// `σ_s(N) = Σ_{d|N} d^s`, multiplicatively.
pub fn sigma_s(f: &FactoredInteger, s: u32) -> BigUint {
    f.factors()
        .iter()
        .map(|&(p, a)| sigma_s_prime_power(p, a, s))
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// `σ(N)`.
pub fn sigma(f: &FactoredInteger) -> BigUint {
    sigma_s(f, 1)
}

/// `φ(N) = ∏ p^{α−1}(p − 1)`.
pub fn phi(f: &FactoredInteger) -> BigUint {
    f.factors()
        .iter()
        .map(|&(p, a)| BigUint::from(p).pow(a - 1) * (p - 1))
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Jordan's totient `J_s(N) = N^s ∏ (1 − p^{−s})`.
pub fn jordan(f: &FactoredInteger, s: u32) -> BigUint {
    f.factors()
        .iter()
        .map(|&(p, a)| {
            let ps = BigUint::from(p).pow(s);
            ps.pow(a - 1) * (ps - 1u32)
        })
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Normalized quantities of `N` in exact and logarithmic form.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreRatios {
    /// `σ(N)/N`
    pub sigma_over_n: ExactRatio,
    /// `φ(N)/N`
    pub phi_over_n: ExactRatio,
    /// `ρ(N) = ∏ (1 − p^{−(α+1)})`
    pub rho: ExactRatio,
    pub omega: usize,
    /// `σ₀(N)`
    pub sigma0: BigUint,
    /// `log N`
    pub log_n: f64,
    /// `log(σ(N)/N)` evaluated term by term in log space
    pub log_sigma_over_n: f64,
}

/// `log(σ(N)/N) = Σ [log(1 − p^{−(α+1)}) − log(1 − 1/p)]`, compensated.
pub fn log_sigma_over_n(f: &FactoredInteger) -> CompensatedSum {
    let mut acc = CompensatedSum::new();
    for &(p, a) in f.factors() {
        let pf = p as f64;
        acc.add((-pf.powi(-(a as i32 + 1))).ln_1p());
        acc.add(-(-1.0 / pf).ln_1p());
    }
    acc
}

/// `log(N/φ(N)) = −Σ log(1 − 1/p)`, compensated.
pub fn log_n_over_phi(f: &FactoredInteger) -> CompensatedSum {
    f.factors().iter().map(|&(p, _)| -(-1.0 / p as f64).ln_1p()).collect()
}

pub fn core_ratios(f: &FactoredInteger) -> CoreRatios {
    let mut sigma_over_n = ExactRatio::one();
    let mut phi_over_n = ExactRatio::one();
    let mut rho = ExactRatio::one();
    let mut sigma0 = BigUint::one();
    for &(p, a) in f.factors() {
        let pb = BigInt::from(p);
        let pa = pb.pow(a);
        let pa1 = &pa * &pb;
        sigma_over_n = sigma_over_n * ExactRatio::new(&pa1 - 1, &pa * (&pb - 1));
        phi_over_n = phi_over_n * ExactRatio::new(&pb - 1, pb.clone());
        rho = rho * ExactRatio::new(&pa1 - 1, pa1.clone());
        sigma0 *= a + 1;
    }
    CoreRatios {
        sigma_over_n,
        phi_over_n,
        rho,
        omega: f.omega(),
        sigma0,
        log_n: f.ln(),
        log_sigma_over_n: log_sigma_over_n(f).value(),
    }
}

/// `σ(N) < (π²/6)·N·(1 + ω(N) log 2)` for squarefree `N`.
///
/// The margin is `rhs − σ(N)`; it is evaluated as `N·(rhs/N − σ(N)/N)` so
/// that very large `N` only overflow in the final scaling.
pub fn duncan_bound(f: &FactoredInteger) -> Result<CriterionReport> {
    if !f.is_squarefree() {
        return Err(Error::Precondition(format!("{f} is not squarefree")));
    }
    let ratios = core_ratios(f);
    let bound = ZETA2 * (1.0 + ratios.omega as f64 * std::f64::consts::LN_2);
    let abundancy = ratios.sigma_over_n.to_f64();
    let n = ratios.log_n.exp();
    let margin = (bound - abundancy) * n;
    let err = 8.0 * f64::EPSILON * bound * n;
    Ok(CriterionReport::from_margin(f.into(), Criterion::Duncan, margin, err))
}

/// `e^γ log log N` in `σ/N` units, the Robin threshold.
pub fn robin_threshold(log_n: f64) -> f64 {
    EXP_GAMMA * log_n.ln()
}
