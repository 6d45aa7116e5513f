//! Four-square representation counts.

use num_bigint::BigUint;
use num_integer::Roots;

use crate::arith::sigma;
use crate::consts::EXP_GAMMA;
use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::report::{Criterion, CriterionReport};
use crate::sieve::ArithSieve;

/// Largest `n` accepted by [`r4_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R4Result {
    pub n: BigUint,
    pub r4: BigUint,
    pub parity_branch: Parity,
    /// `M` in `N = 2^α M`
    pub m_odd_part: FactoredInteger,
}

/// `r₄(N) = 8σ(N)` for odd `N` and `24σ(M)` for `N = 2^α M`, `α > 0`.
pub fn r4_jacobi(f: &FactoredInteger) -> R4Result {
    let (alpha, m) = f.split_two();
    let (parity_branch, r4) = if alpha == 0 { (Parity::Odd, sigma(f) * 8u32) } else { (Parity::Even, sigma(&m) * 24u32) };
    R4Result { n: f.value(), r4, parity_branch, m_odd_part: m }
}

/// `r₂(k)` for `0 ≤ k ≤ n`, counting signed ordered pairs.
pub fn r2_table(n: u64) -> Vec<u64> {
    let mut t = vec![0u64; n as usize + 1];
    let r = n.sqrt() as i64;
    for x in -r..=r {
        let x2 = (x * x) as u64;
        let rest = n - x2;
        let ry = rest.sqrt() as i64;
        for y in -ry..=ry {
            t[(x2 + (y * y) as u64) as usize] += 1;
        }
    }
    t
}

fn r4_from_r2(r2: &[u64], n: u64) -> u64 {
    let n = n as usize;
    (0..=n).map(|k| r2[k] * r2[n - k]).sum()
}

/// Signed ordered quadruples with `x² + y² + z² + w² = n`, by convolving
/// two-square counts.
pub fn r4_bruteforce(n: u64) -> Result<u64> {
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::Resource(format!("n = {n} exceeds the brute-force limit {BRUTEFORCE_LIMIT}")));
    }
    Ok(r4_from_r2(&r2_table(n), n))
}

/// [`r4_bruteforce`] for every `0 ≤ n ≤ limit`, sharing one `r₂` table.
pub fn r4_bruteforce_prefix(limit: u64) -> Result<Vec<u64>> {
    if limit > BRUTEFORCE_LIMIT {
        return Err(Error::Resource(format!("limit {limit} exceeds {BRUTEFORCE_LIMIT}")));
    }
    let r2 = r2_table(limit);
    Ok((0..=limit).map(|n| r4_from_r2(&r2, n)).collect())
}

/// Literal quadruple loop, for cross-checking the convolution.
pub fn r4_naive(n: u64) -> u64 {
    let r = n.sqrt() as i64;
    let n = n as i64;
    let mut count = 0;
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                let rest = n - x * x - y * y - z * z;
                if rest < 0 {
                    continue;
                }
                let w = rest.sqrt();
                if w * w == rest {
                    count += if w == 0 { 1 } else { 2 };
                }
            }
        }
    }
    count
}

/// Lattice points of `ℤ⁴` with `x² + y² + z² + w² ≤ x_max`.
pub fn ball_count(x_max: u64) -> u64 {
    let r = x_max.sqrt() as i64;
    let x_max = x_max as i64;
    let mut count = 0u64;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let rest = x_max - a * a - b * b - c * c;
                if rest >= 0 {
                    count += 2 * rest.sqrt() as u64 + 1;
                }
            }
        }
    }
    count
}

/// Bound `4e^γ N log log N` (odd) or `24e^γ M log log M` (even).
fn bound_formula(parity: Parity, n: f64, m: f64) -> f64 {
    match parity {
        Parity::Odd => 4.0 * EXP_GAMMA * n * n.ln().ln(),
        Parity::Even => 24.0 * EXP_GAMMA * m * m.ln().ln(),
    }
}

/// The bound for `N`, as a float.
pub fn r4_bound(f: &FactoredInteger) -> Result<f64> {
    bound_of(f, &r4_jacobi(f))
}

fn bound_of(f: &FactoredInteger, r: &R4Result) -> Result<f64> {
    let base = match r.parity_branch {
        Parity::Odd => f,
        Parity::Even => &r.m_odd_part,
    };
    if base.value_u64().is_some_and(|v| v < 3) {
        return Err(Error::Domain(format!("log log is undefined for the {} branch of {f}", r.parity_branch.name())));
    }
    Ok(bound_formula(r.parity_branch, f.ln().exp(), r.m_odd_part.ln().exp()))
}

/// `r₄(N)` against its bound; the margin is `bound − r₄(N)`.
///
/// No lower threshold on `N` is enforced. Only inputs where `log log` of the
/// relevant part is undefined (`N < 3` odd, `M < 3` even) are rejected.
pub fn r4_bound_check(f: &FactoredInteger) -> Result<CriterionReport> {
    let r = r4_jacobi(f);
    let bound = bound_of(f, &r)?;
    let r4 = crate::ratio::ExactRatio::from_biguints(r.r4.clone(), BigUint::from(1u32)).to_f64();
    let err = 16.0 * f64::EPSILON * (bound + r4);
    Ok(CriterionReport::from_margin(f.into(), Criterion::FourSquareBound, bound - r4, err))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct R4Scan {
    pub lo: u64,
    pub hi: u64,
    pub checked: u64,
    /// `n` excluded because `log log` is undefined.
    pub domain_excluded: u64,
    pub exceptions: Vec<u64>,
}

impl R4Scan {
    pub fn largest_exception(&self) -> Option<u64> {
        self.exceptions.last().copied()
    }
}

/// The bound over `lo..=hi`, optionally odd `n` only.
pub fn r4_exception_scan(lo: u64, hi: u64, odd_only: bool) -> Result<R4Scan> {
    let parts = ArithSieve::new(lo..=hi)?.map_blocks(|block| {
        let mut s = R4Scan::default();
        for r in block.iter().filter(|r| !odd_only || r.n % 2 == 1) {
            let (parity, m, sigma_m) = if r.nu2 == 0 {
                (Parity::Odd, r.n, r.sigma)
            } else {
                (Parity::Even, r.odd_part(), r.sigma / ((2u64 << r.nu2) - 1))
            };
            if (parity == Parity::Odd && r.n < 3) || m < 3 {
                s.domain_excluded += 1;
                continue;
            }
            s.checked += 1;
            let r4 = if parity == Parity::Odd { 8 * sigma_m } else { 24 * sigma_m } as f64;
            let bound = bound_formula(parity, r.n as f64, m as f64);
            if r4 >= bound * (1.0 - 16.0 * f64::EPSILON) {
                let f = FactoredInteger::of_u64(r.n).expect("n ≥ 1");
                if r4_bound_check(&f).map_or(true, |c| c.is_violation()) {
                    s.exceptions.push(r.n);
                }
            }
        }
        s
    });
    let mut out = R4Scan { lo, hi, ..Default::default() };
    for p in parts {
        out.checked += p.checked;
        out.domain_excluded += p.domain_excluded;
        out.exceptions.extend(p.exceptions);
    }
    Ok(out)
}
