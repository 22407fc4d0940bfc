//! Auxiliary functions from the monotonicity arguments behind the Renyi and
//! Tsallis bounds, and the sign pattern of binom(q, 2k) they rely on.

use super::appendix::derivative;
use super::{CheckResult, GridSpec, Location, Worst};
use crate::entropy::{binom_identity_sums, gen_binom, gen_binom_sign, tsallis_half, BinomSeriesConfig, Order, Sign};

/// x((1-x)^a + (1+x)^a) - ((1+x)^{a-1} - (1-x)^{a-1})(1+x^2); its sign is
/// the sign of the x-derivative of (a/2)(ln2 + ln(1+x^2)) - ln((1-x)^a + (1+x)^a).
pub fn renyi_slope_aux(x: f64, a: f64) -> f64 {
    x * ((1.0 - x).powf(a) + (1.0 + x).powf(a)) - ((1.0 + x).powf(a - 1.0) - (1.0 - x).powf(a - 1.0)) * (1.0 + x * x)
}

/// T(x; q) = (1+x)^q - (1-x)^q - 2^q x, used for q in (0, 1).
pub fn tsallis_t(x: f64, q: f64) -> f64 {
    (1.0 + x).powf(q) - (1.0 - x).powf(q) - 2f64.powf(q) * x
}

/// U(x; q) = 2^q x + (1-x)^q - (1+x)^q, used for q in (1, 2).
pub fn tsallis_u(x: f64, q: f64) -> f64 {
    2f64.powf(q) * x + (1.0 - x).powf(q) - (1.0 + x).powf(q)
}

fn t_slope(x: f64, q: f64) -> f64 {
    q * ((1.0 + x).powf(q - 1.0) + (1.0 - x).powf(q - 1.0)) - 2f64.powf(q)
}

fn u_slope(x: f64, q: f64) -> f64 {
    2f64.powf(q) - q * ((1.0 - x).powf(q - 1.0) + (1.0 + x).powf(q - 1.0))
}

const ZERO_TOL: f64 = 1e-12;
const SLOPE_TOL: f64 = 1e-7;
pub const SIGN_CASE_ORDERS: [f64; 5] = [2.5, 3.0, 4.2, 5.7, 6.0];
pub const SIGN_CASE_MAX_K: u64 = 30;

/// Claimed sign of binom(q, 2k), or None when no claim is made for that k.
fn claimed_sign(q: f64, k: u64) -> Option<Sign> {
    let c = q.ceil() as u64;
    if q > 2.0 && q <= 3.0 {
        (k >= 2).then_some(Sign::Minus)
    } else if c >= 4 && c % 2 == 0 {
        (k >= 2).then_some(Sign::Plus)
    } else if c >= 5 {
        if k == 2 {
            Some(Sign::Plus)
        } else if k > (q / 2.0).floor() as u64 {
            Some(Sign::Minus)
        } else {
            None
        }
    } else {
        None
    }
}

pub fn check_proof_auxiliaries(grid: &GridSpec) -> Vec<CheckResult> {
    let slack = grid.slack();
    let xs = grid.xs();
    let mut out = Vec::new();

    let orders = grid.orders(&[Order::of(2.0), Order::of(2.5), Order::of(3.0), Order::of(5.0), Order::of(10.0), Order::of(50.0)], 2.0, 60.0, 11);
    let mut w = Worst::new();
    for &a in &orders {
        for &x in xs {
            w.record(-renyi_slope_aux(x, a.value()), Location::at(x, a));
            if a == Order::of(2.0) {
                w.record(ZERO_TOL - renyi_slope_aux(x, 2.0).abs(), Location::at(x, a));
            }
        }
    }
    out.push(w.finish("aux-renyi-slope-nonpos", "x((1-x)^a+(1+x)^a) - ((1+x)^(a-1)-(1-x)^(a-1))(1+x^2) <= 0 for a >= 2, = 0 at a = 2", slack));

    let small = grid.orders(&[Order::of(0.1), Order::of(0.25), Order::of(0.5), Order::of(0.75), Order::of(0.9)], 0.01, 0.99, 12);
    let mut w = Worst::new();
    for &q in &small {
        let qv = q.value();
        for &x in xs {
            w.record(-tsallis_t(x, qv), Location::at(x, q));
        }
        w.record(ZERO_TOL - tsallis_t(0.0, qv).abs(), Location::at(0.0, q));
        w.record(ZERO_TOL - tsallis_t(1.0, qv).abs(), Location::at(1.0, q));
    }
    out.push(w.finish("aux-tsallis-t-nonpos", "(1+x)^q - (1-x)^q - 2^q x <= 0 on [0,1], zero at both ends, q in (0,1)", slack));

    let mut w = Worst::new();
    for &q in &small {
        let qv = q.value();
        let anchor = 2.0 * qv - 2f64.powf(qv);
        w.record(-anchor, Location::at(0.0, q));
        w.record(SLOPE_TOL - (t_slope(0.0, qv) - anchor).abs(), Location::at(0.0, q));
        for x in [0.25, 0.5, 0.75] {
            w.record(SLOPE_TOL - (t_slope(x, qv) - derivative(|y| tsallis_t(y, qv), x)).abs(), Location::at(x, q));
        }
    }
    out.push(w.finish("aux-tsallis-t-slope-origin", "d/dx[(1+x)^q - (1-x)^q - 2^q x] at 0 = 2q - 2^q < 0, q in (0,1)", slack));

    let mid = grid.orders(&[Order::of(1.1), Order::of(1.25), Order::of(1.5), Order::of(1.75), Order::of(1.9)], 1.01, 1.99, 13);
    let mut w = Worst::new();
    for &q in &mid {
        let qv = q.value();
        for &x in xs {
            w.record(-tsallis_u(x, qv), Location::at(x, q));
        }
        w.record(ZERO_TOL - tsallis_u(0.0, qv).abs(), Location::at(0.0, q));
        w.record(ZERO_TOL - tsallis_u(1.0, qv).abs(), Location::at(1.0, q));
    }
    out.push(w.finish("aux-tsallis-u-nonpos", "2^q x + (1-x)^q - (1+x)^q <= 0 on [0,1], zero at both ends, q in (1,2)", slack));

    let mut w = Worst::new();
    for &q in &mid {
        let qv = q.value();
        let at0 = 2f64.powf(qv) - 2.0 * qv;
        let at1 = 2f64.powf(qv - 1.0) * (2.0 - qv);
        w.record(-at0, Location::at(0.0, q));
        w.record(at1, Location::at(1.0, q));
        w.record(SLOPE_TOL - (u_slope(0.0, qv) - at0).abs(), Location::at(0.0, q));
        w.record(SLOPE_TOL - (u_slope(1.0, qv) - at1).abs(), Location::at(1.0, q));
        for x in [0.25, 0.5, 0.75] {
            w.record(SLOPE_TOL - (u_slope(x, qv) - derivative(|y| tsallis_u(y, qv), x)).abs(), Location::at(x, q));
        }
    }
    out.push(w.finish("aux-tsallis-u-slopes", "U'(0) = 2^q - 2q < 0 and U'(1) = 2^(q-1)(2-q) > 0, q in (1,2)", slack));

    // Sign pattern of binom(q, 2k): the parity rule and the numeric sign must
    // both agree with the claim for each case.
    let mut w = Worst::new();
    for q in SIGN_CASE_ORDERS {
        for k in 1..=SIGN_CASE_MAX_K {
            let Some(claim) = claimed_sign(q, k) else { continue };
            let c = gen_binom(q, 2 * k);
            let s = if claim == Sign::Plus { 1.0 } else { -1.0 };
            let mut m = s * c;
            if c.abs() > 1e-14 && gen_binom_sign(q, k) != claim {
                m = m.min(-1.0);
            }
            w.record(m, Location { x: None, order: Some(Order::of(q)), index: Some(k as usize) });
        }
    }
    out.push(w.finish(
        "aux-binom-sign-cases",
        "binom(q,2k) <= 0 for k >= 2 if q in (2,3]; >= 0 for k >= 2 if ceil(q) even >= 4; binom(q,4) >= 0 and <= 0 for k > floor(q/2) if ceil(q) odd >= 5",
        slack,
    ));

    // Endpoint values of the ratio series: 2^(2-q)/(q-1) times the sums.
    let cfg = BinomSeriesConfig::default();
    let mut w = Worst::new();
    for q in SIGN_CASE_ORDERS {
        let o = Order::of(q);
        let scale = 2f64.powf(2.0 - q) / (q - 1.0);
        let m = binom_identity_sums(q, &cfg).and_then(|s| {
            let at0 = scale * s.sum_even.limit - 2.0 * tsallis_half(o)?;
            let at1 = scale * s.sum_even_weighted.limit - q / (2.0 * (q - 1.0));
            Ok(1e-8 - at0.abs().max(at1.abs()))
        });
        w.record_result(m, Location { x: None, order: Some(o), index: None });
    }
    out.push(w.finish(
        "aux-binom-ratio-endpoints",
        "2^(2-q)/(q-1) sum binom(q,2k) = 2H^T_q(1/2) and 2^(2-q)/(q-1) sum k binom(q,2k) = q/(2(q-1))",
        slack,
    ));
    out
}
