//! Numerical constants used across the crate.
//!
//! Decimal values are the published expansions; the rational brackets are
//! what exact-mode comparisons use so that no verdict depends on rounding.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// `e^γ`.
pub const EXP_GAMMA: f64 = 1.781_072_417_990_197_985_236_504_103_107_179_549_17;

/// Meissel–Mertens constant.
pub const MERTENS_B: f64 = 0.261_497_212_847_642_783_755_426_838_608_695_859_05;

pub const PI: f64 = std::f64::consts::PI;

/// `6/π²`, the density of squarefree integers.
pub const SIX_OVER_PI_SQ: f64 = 6.0 / (PI * PI);

/// `ζ(2) = π²/6`.
pub const ZETA2: f64 = PI * PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_990_76;
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;
/// Ten printed decimals only.
pub const ZETA5: f64 = 1.036_927_755_1;
pub const ZETA6: f64 = PI * PI * PI * PI * PI * PI / 945.0;
/// Ten printed decimals only.
pub const ZETA7: f64 = 1.008_349_277_4;

/// Reference value of `ζ(s)` for integer `s ≥ 2`.
///
/// `s ≤ 7` uses the closed forms and published decimals above; larger `s`
/// sums the Dirichlet series directly, which converges to full double
/// precision within a few hundred terms.
pub fn zeta(s: u32) -> f64 {
    match s {
        0 | 1 => f64::INFINITY,
        2 => ZETA2,
        3 => ZETA3,
        4 => ZETA4,
        5 => ZETA5,
        6 => ZETA6,
        7 => ZETA7,
        _ => {
            let s = s as i32;
            // terms ≤ 2^-53 once k^s exceeds 2^53
            let mut acc = 0.0;
            for k in (2..=400u32).rev() {
                acc += (k as f64).powi(-s);
            }
            1.0 + acc
        }
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Closed rational interval `[lo, hi]` known to contain a constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }
}

/// `178107/100000 < e^γ < 178108/100000`.
pub fn exp_gamma_bracket() -> Bracket {
    Bracket::new(ratio(178_107, 100_000), ratio(178_108, 100_000))
}

/// `6079/10000 < 6/π² < 608/1000`.
pub fn six_over_pi_sq_bracket() -> Bracket {
    Bracket::new(ratio(6079, 10_000), ratio(608, 1000))
}

/// Rational bracket for `ζ(s)`, `s ∈ {2, 3, 4, 5, 6, 7}`.
pub fn zeta_bracket(s: u32) -> Option<Bracket> {
    let (lo, hi, den) = match s {
        2 => (16_449_340_668, 16_449_340_669, 10_000_000_000),
        3 => (12_020_569_031, 12_020_569_032, 10_000_000_000),
        4 => (10_823_232_337, 10_823_232_338, 10_000_000_000),
        // printed to ten decimals, so widen by one unit in the last place
        5 => (10_369_277_550, 10_369_277_552, 10_000_000_000),
        6 => (10_173_430_619, 10_173_430_620, 10_000_000_000),
        7 => (10_083_492_773, 10_083_492_775, 10_000_000_000),
        _ => return None,
    };
    Some(Bracket::new(ratio(lo, den), ratio(hi, den)))
}
