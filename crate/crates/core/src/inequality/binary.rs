use std::f64::consts::{LN_2, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, GridSpec, Location, Worst};
use crate::entropy::{
    min_binary, quantum_entropy, renyi_binary, shannon_binary, tsallis_binary, tsallis_half, EntropyError, Family,
    Order,
};

const INF: Order = Order::Infinity;

fn o(r: f64) -> Order {
    Order::of(r)
}

/// Worst margin of `margin(x, order)` over the grid and the given orders.
fn sweep<F>(grid: &GridSpec, orders: &[Order], claim: &str, anchor: &str, margin: F) -> CheckResult
where
    F: Fn(f64, Order) -> Result<f64, EntropyError>,
{
    let mut w = Worst::new();
    for &ord in orders {
        for &x in grid.xs() {
            w.record_result(margin(x, ord), Location::at(x, ord));
        }
    }
    w.finish(claim, anchor, grid.slack())
}

/// H^R_a(x) >= H^R_b(x) for consecutive sampled orders a < b, from 0 to
/// infinity.
pub fn check_renyi_monotonicity(grid: &GridSpec) -> CheckResult {
    let mut orders = grid.orders(
        &[Order::Zero, o(0.25), o(0.5), Order::One, o(1.5), o(2.0), o(2.5), o(3.0), o(5.0), o(10.0), INF],
        0.01,
        20.0,
        1,
    );
    orders.sort_by(|a, b| a.value().total_cmp(&b.value()));
    orders.dedup();
    let mut w = Worst::new();
    for pair in orders.windows(2) {
        for &x in grid.xs() {
            let m = renyi_binary(x, pair[0]).and_then(|a| Ok(a - renyi_binary(x, pair[1])?));
            w.record_result(m, Location::at(x, pair[0]));
        }
    }
    w.finish("renyi-monotone-in-order", "H^R_a(x) >= H^R_b(x) for 0 <= a <= b <= inf", grid.slack())
}

/// H^T_q(1/2) * 4x(1-x) <= H^T_q(x) for q in [0, 2] and [3, inf).
pub fn check_tsallis_lower_bound(grid: &GridSpec) -> CheckResult {
    let mut orders = grid.orders(&[Order::Zero, o(0.25), o(0.5), Order::One, o(1.5), o(2.0)], 0.01, 2.0, 2);
    orders.extend(grid.orders(&[o(3.0), o(4.0), o(5.0), o(10.0), o(20.0)], 3.0, 30.0, 3));
    sweep(grid, &orders, "tsallis-parabola-lower-bound", "H^T_q(1/2) * 4x(1-x) <= H^T_q(x), q in [0,2] or [3,inf)", |x, q| {
        Ok(tsallis_binary(x, q)? - tsallis_half(q)? * 4.0 * x * (1.0 - x))
    })
}

/// H^R_2(x) <= 2 H_min(x).
pub fn check_min_entropy_bound(grid: &GridSpec) -> CheckResult {
    sweep(grid, &[o(2.0)], "renyi2-vs-min-entropy", "H^R_2(x) <= 2 H_min(x)", |x, q| {
        Ok(2.0 * min_binary(x)? - renyi_binary(x, q)?)
    })
}

/// 2 H(1/2) H^T_2(x) <= H(x) <= sqrt(2) H(1/2) sqrt(H^T_2(x)).
pub fn check_shannon_power_bounds(grid: &GridSpec) -> CheckResult {
    sweep(
        grid,
        &[Order::One],
        "shannon-vs-tsallis2-sandwich",
        "2 ln2 H^T_2(x) <= H(x) <= sqrt(2) ln2 sqrt(H^T_2(x))",
        |x, _| {
            let h = shannon_binary(x)?;
            let t2 = tsallis_binary(x, o(2.0))?;
            Ok((h - 2.0 * LN_2 * t2).min(SQRT_2 * LN_2 * t2.sqrt() - h))
        },
    )
}

/// Upper bound for orders in (0, 2] and lower bound for [2, inf] of the
/// Renyi binary entropy in terms of order 2.
pub fn check_renyi_new_bounds(grid: &GridSpec) -> Vec<CheckResult> {
    let low = grid.orders(&[o(1e-4), o(0.25), o(0.5), Order::One, o(1.5), o(2.0 - 1e-4), o(2.0)], 1e-3, 2.0, 4);
    let upper = sweep(
        grid,
        &low,
        "renyi-upper-bound-below-two",
        "H^R_a(x) <= ln2^(1-a/2) H^R_2(x)^(a/2), a in (0,2]",
        |x, a| {
            let av = a.value();
            Ok(LN_2.powf(1.0 - av / 2.0) * renyi_binary(x, o(2.0))?.powf(av / 2.0) - renyi_binary(x, a)?)
        },
    );
    let high = grid.orders(&[o(2.0), o(2.0 + 1e-4), o(2.5), o(3.0), o(5.0), o(10.0), INF], 2.0, 50.0, 5);
    let lower = sweep(
        grid,
        &high,
        "renyi-lower-bound-above-two",
        "a/(2(a-1)) H^R_2(x) <= H^R_a(x), a in [2,inf] (1/2 at inf)",
        |x, a| {
            let coef = match a {
                Order::Infinity => 0.5,
                _ => a.value() / (2.0 * (a.value() - 1.0)),
            };
            Ok(renyi_binary(x, a)? - coef * renyi_binary(x, o(2.0))?)
        },
    );
    vec![upper, lower]
}

/// The three Tsallis sandwiches against order 2.
pub fn check_tsallis_new_bounds(grid: &GridSpec) -> Vec<CheckResult> {
    let h2 = |x: f64| tsallis_binary(x, o(2.0));
    let below = grid.orders(&[o(1e-4), o(0.25), o(0.5), Order::One, o(1.5), o(2.0 - 1e-4), o(2.0)], 1e-3, 2.0, 6);
    let upper = sweep(
        grid,
        &below,
        "tsallis-upper-bound-below-two",
        "H^T_q(x) <= 2^(q/2) H^T_q(1/2) H^T_2(x)^(q/2), q in (0,2]",
        |x, q| {
            let qv = q.value();
            Ok(2f64.powf(qv / 2.0) * tsallis_half(q)? * h2(x)?.powf(qv / 2.0) - tsallis_binary(x, q)?)
        },
    );
    let mid = grid.orders(&[o(2.0), o(2.25), o(2.5), o(2.75), o(3.0)], 2.0, 3.0, 7);
    let between = sweep(
        grid,
        &mid,
        "tsallis-sandwich-two-to-three",
        "q/(2(q-1)) H^T_2(x) <= H^T_q(x) <= 2 H^T_q(1/2) H^T_2(x), q in [2,3]",
        |x, q| {
            let qv = q.value();
            let (hq, t2) = (tsallis_binary(x, q)?, h2(x)?);
            Ok((hq - qv / (2.0 * (qv - 1.0)) * t2).min(2.0 * tsallis_half(q)? * t2 - hq))
        },
    );
    let high = grid.orders(&[o(3.0), o(4.0), o(5.0), o(6.0), o(10.0), o(20.0)], 3.0, 30.0, 8);
    let above = sweep(
        grid,
        &high,
        "tsallis-sandwich-above-three",
        "2 H^T_q(1/2) H^T_2(x) <= H^T_q(x) <= q/(2(q-1)) H^T_2(x), q in [3,inf)",
        |x, q| {
            let qv = q.value();
            let (hq, t2) = (tsallis_binary(x, q)?, h2(x)?);
            Ok((hq - 2.0 * tsallis_half(q)? * t2).min(qv / (2.0 * (qv - 1.0)) * t2 - hq))
        },
    );
    vec![upper, between, above]
}

/// Random probability vectors of length 2..=max_dim, plus a pure and a
/// uniform one.
pub fn random_spectra(count: usize, max_dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let mut out = vec![vec![1.0, 0.0], vec![0.25; 4]];
    for _ in 0..count {
        let d = rng.gen_range(2..=max_dim.max(2));
        // exponential weights give a uniform draw from the simplex
        let mut v: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|p| *p /= s);
        out.push(v);
    }
    out
}

/// S_inf(rho) <= S_a(rho) <= a/(a-1) S_inf(rho) for a > 1.
pub fn check_salpha_vs_smin(spectra: &[Vec<f64>], slack: f64) -> CheckResult {
    let mut w = Worst::new();
    for (i, s) in spectra.iter().enumerate() {
        let smin = quantum_entropy(s, INF, Family::Renyi);
        for a in [1.5, 2.0, 3.0, 5.0, 10.0] {
            let m = smin.clone().and_then(|smin| {
                let sa = quantum_entropy(s, o(a), Family::Renyi)?;
                Ok((sa - smin).min(a / (a - 1.0) * smin - sa))
            });
            w.record_result(m, Location { index: Some(i), order: Some(o(a)), x: None });
        }
    }
    w.finish("renyi-spectrum-vs-min-entropy", "S_inf(rho) <= S_a(rho) <= a/(a-1) S_inf(rho), a > 1", slack)
}
