//! Threshold and gap functions of the rank-2 entropy promise problems.
//!
//! Every family is written through the entropy values a yes and a no
//! instance are guaranteed to reach (`p_yes`, `p_no`), with
//! t = (p_yes + p_no)/2 and g = (p_yes - p_no)/2. The functions accept a
//! real n so that monotonicity and anchor checks can probe between integers.

use std::f64::consts::LN_2;

use super::ReductionError;
use crate::entropy::{tsallis_half, Family, Order};

/// Which closed form applies to an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Renyi, order in (0, 2) including one.
    RenyiBelowTwo,
    RenyiTwo,
    /// Renyi, order in (2, inf).
    RenyiAboveTwo,
    RenyiInfinity,
    /// Tsallis, order in (0, 2) including one.
    TsallisBelowTwo,
    TsallisTwo,
    /// Tsallis, order in (2, 3].
    TsallisTwoToThree,
    /// Tsallis, order in (3, inf).
    TsallisAboveThree,
}

impl Regime {
    pub fn of(family: Family, order: Order) -> Result<Regime, ReductionError> {
        let v = order.value();
        Ok(match (family, order) {
            (_, Order::Zero) => return Err(ReductionError::OrderZero),
            (Family::Tsallis, Order::Infinity) => return Err(ReductionError::TsallisInfinity),
            (Family::Renyi, Order::Infinity) => Regime::RenyiInfinity,
            (Family::Renyi, _) if v == 2.0 => Regime::RenyiTwo,
            (Family::Renyi, _) if v < 2.0 => Regime::RenyiBelowTwo,
            (Family::Renyi, _) => Regime::RenyiAboveTwo,
            (Family::Tsallis, _) if v == 2.0 => Regime::TsallisTwo,
            (Family::Tsallis, _) if v < 2.0 => Regime::TsallisBelowTwo,
            (Family::Tsallis, _) if v <= 3.0 => Regime::TsallisTwoToThree,
            (Family::Tsallis, _) => Regime::TsallisAboveThree,
        })
    }
}

/// Smallest n for which the gap is certified positive.
pub fn min_n(family: Family, order: Order) -> Result<u32, ReductionError> {
    Regime::of(family, order)?;
    let v = order.value();
    let n = match family {
        Family::Renyi if v < 1.0 => (2.0 / v).ceil(),
        Family::Tsallis if v < 1.0 => (1.0 / v).ceil(),
        Family::Tsallis if v > 3.0 => v.log2().ceil().max(2.0),
        _ => 2.0,
    };
    Ok(n.max(1.0) as u32)
}

fn pow2(e: f64) -> f64 {
    2f64.powf(e)
}

/// ln 2 - 2^{1-n} + 2^{-2n}
fn renyi_yes_base(n: f64) -> f64 {
    LN_2 - pow2(1.0 - n) + pow2(-2.0 * n)
}

/// -ln(1 - 2^{-2n-1})
fn renyi_no_base(n: f64) -> f64 {
    -(-pow2(-2.0 * n - 1.0)).ln_1p()
}

/// (p_yes, p_no) for the regime at order value `v` (ignored where the regime
/// fixes it) and real `n`.
pub fn promise_values(regime: Regime, v: f64, n: f64) -> (f64, f64) {
    let half = |q: f64| tsallis_half(Order::of(q)).expect("finite positive order");
    let sq = (1.0 - pow2(-n)).powi(2);
    match regime {
        Regime::RenyiTwo => (renyi_yes_base(n), renyi_no_base(n)),
        Regime::RenyiBelowTwo => {
            let bits = -(-pow2(-2.0 * n - 1.0)).ln_1p() / LN_2;
            (renyi_yes_base(n), LN_2 * bits.powf(v / 2.0))
        }
        Regime::RenyiAboveTwo => (v / (2.0 * (v - 1.0)) * renyi_yes_base(n), renyi_no_base(n)),
        Regime::RenyiInfinity => (renyi_yes_base(n) / 2.0, renyi_no_base(n)),
        Regime::TsallisTwo => (sq / 2.0, pow2(-2.0 * n - 1.0)),
        Regime::TsallisBelowTwo => (half(v) * sq, half(v) * pow2(-n * v)),
        Regime::TsallisTwoToThree => (v / (4.0 * (v - 1.0)) * sq, half(v) * pow2(-2.0 * n)),
        Regime::TsallisAboveThree => (half(v) * sq, v / (v - 1.0) * pow2(-2.0 * n - 2.0)),
    }
}

/// (t, g) at real n.
pub fn threshold_gap_real(regime: Regime, v: f64, n: f64) -> (f64, f64) {
    let (y, no) = promise_values(regime, v, n);
    ((y + no) / 2.0, (y - no) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGap {
    pub t: f64,
    pub g: f64,
    /// g > 0.
    pub valid: bool,
}

pub fn threshold_gap(family: Family, order: Order, n: u32) -> Result<ThresholdGap, ReductionError> {
    let regime = Regime::of(family, order)?;
    let min = min_n(family, order)?;
    if n < min {
        return Err(ReductionError::NTooSmall { n, min, order: order.to_string(), family: family.to_string() });
    }
    let (t, g) = threshold_gap_real(regime, order.value(), n as f64);
    Ok(ThresholdGap { t, g, valid: g > 0.0 })
}
