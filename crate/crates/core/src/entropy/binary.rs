use std::f64::consts::LN_2;

use super::{EntropyError, Order};

const RANGE_SLACK: f64 = 1e-12;
const TINY: f64 = 1e-300;

/// Folds x into [0, 1/2] so that x and 1-x take the same floating path.
fn canonical(x: f64) -> Result<f64, EntropyError> {
    if !(x >= -RANGE_SLACK && x <= 1.0 + RANGE_SLACK) {
        return Err(EntropyError::OutOfRange(x));
    }
    let x = x.clamp(0.0, 1.0);
    let c = if x <= 0.5 { x } else { 1.0 - x };
    Ok(if c < TINY { 0.0 } else { c })
}

/// sum_i p_i (p_i^{r-1} - 1) over {c, 1-c}; equals x^r + (1-x)^r - 1 without
/// cancellation when r is near 1.
fn power_sum_minus_one(c: f64, r: f64) -> f64 {
    let d = 1.0 - c;
    c * ((r - 1.0) * c.ln()).exp_m1() + d * ((r - 1.0) * (-c).ln_1p()).exp_m1()
}

fn shannon_c(c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    -c * c.ln() - (1.0 - c) * (-c).ln_1p()
}

fn tsallis_c(c: f64, q: Order) -> Result<f64, EntropyError> {
    Ok(match q {
        Order::Zero => {
            if c == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        Order::One => shannon_c(c),
        Order::Infinity => return Err(EntropyError::TsallisInfinity),
        Order::Real(r) => {
            let q = r.get();
            if c == 0.0 {
                0.0
            } else if (q - 1.0).abs() < 0.5 {
                -power_sum_minus_one(c, q) / (q - 1.0)
            } else {
                (-(q * (-c).ln_1p()).exp_m1() - (q * c.ln()).exp()) / (q - 1.0)
            }
        }
    })
}

fn renyi_c(c: f64, alpha: Order) -> f64 {
    match alpha {
        Order::Zero => {
            if c == 0.0 {
                0.0
            } else {
                LN_2
            }
        }
        Order::One => shannon_c(c),
        Order::Infinity => -(-c).ln_1p(),
        Order::Real(r) => {
            let a = r.get();
            if c == 0.0 {
                0.0
            } else if (a - 1.0).abs() < 0.5 {
                power_sum_minus_one(c, a).ln_1p() / (1.0 - a)
            } else {
                let (lc, ld) = (c.ln(), (-c).ln_1p());
                (a * ld + (a * (lc - ld)).exp().ln_1p()) / (1.0 - a)
            }
        }
    }
}

/// Shannon binary entropy in nats, with 0 ln 0 = 0.
pub fn shannon_binary(x: f64) -> Result<f64, EntropyError> {
    Ok(shannon_c(canonical(x)?))
}

/// Min binary entropy -ln max{x, 1-x}.
pub fn min_binary(x: f64) -> Result<f64, EntropyError> {
    Ok(renyi_c(canonical(x)?, Order::Infinity))
}

/// q-Tsallis binary entropy (1 - x^q - (1-x)^q)/(q-1). Order zero gives 1 on
/// (0, 1) and 0 at the endpoints; order one is Shannon.
pub fn tsallis_binary(x: f64, q: Order) -> Result<f64, EntropyError> {
    tsallis_c(canonical(x)?, q)
}

/// H^T_q(1/2).
pub fn tsallis_half(q: Order) -> Result<f64, EntropyError> {
    tsallis_c(0.5, q)
}

/// alpha-Renyi binary entropy ln(x^a + (1-x)^a)/(1-a). Order zero gives ln 2 on
/// (0, 1); infinity gives the min entropy.
pub fn renyi_binary(x: f64, alpha: Order) -> Result<f64, EntropyError> {
    Ok(renyi_c(canonical(x)?, alpha))
}

/// q-logarithm (1 - x^{1-q})/(q-1); natural log at order one.
pub fn q_log(x: f64, q: Order) -> Result<f64, EntropyError> {
    if !(x > 0.0) {
        return Err(EntropyError::NonPositive(x));
    }
    match q {
        Order::Infinity => Err(EntropyError::BadOrder("q-logarithm at infinity".into())),
        Order::One => Ok(x.ln()),
        Order::Zero => Ok(x - 1.0),
        Order::Real(r) => {
            let q = r.get();
            Ok(-((1.0 - q) * x.ln()).exp_m1() / (q - 1.0))
        }
    }
}
