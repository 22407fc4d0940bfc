use crate::entropy::{tsallis_binary, tsallis_half, Order};

/// Minimizer over q of the normalized Tsallis binary entropy at one x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QStarPoint {
    pub x: f64,
    pub q_star: f64,
    /// H^T_q*(x) / H^T_q*(1/2).
    pub ratio: f64,
    pub in_two_three: bool,
}

fn ratio(x: f64, q: f64) -> f64 {
    let o = match Order::new(q) {
        Ok(o) => o,
        Err(_) => return f64::NAN,
    };
    match (tsallis_binary(x, o), tsallis_half(o)) {
        (Ok(a), Ok(b)) => a / b,
        _ => f64::NAN,
    }
}

/// For each x in (0, 1/2) ∪ (1/2, 1), scans q over [q_lo, q_hi] on
/// `samples` points and refines the best one by golden-section search.
/// Points where the ratio is constant in q (x in {0, 1/2, 1}) are skipped.
/// Exploratory only: nothing here is asserted.
pub fn scan_qstar(xs: &[f64], q_lo: f64, q_hi: f64, samples: usize) -> Vec<QStarPoint> {
    let samples = samples.max(3);
    let step = (q_hi - q_lo) / (samples - 1) as f64;
    xs.iter()
        .filter(|&&x| x > 0.0 && x < 1.0 && x != 0.5)
        .map(|&x| {
            let best = (0..samples)
                .map(|i| q_lo + i as f64 * step)
                .min_by(|a, b| ratio(x, *a).total_cmp(&ratio(x, *b)))
                .expect("samples >= 3");
            let (mut a, mut b) = ((best - step).max(q_lo), (best + step).min(q_hi));
            let g = (5f64.sqrt() - 1.0) / 2.0;
            while b - a > 1e-10 {
                let (c, d) = (b - g * (b - a), a + g * (b - a));
                if ratio(x, c) < ratio(x, d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            let q_star = (a + b) / 2.0;
            QStarPoint { x, q_star, ratio: ratio(x, q_star), in_two_three: (2.0..=3.0).contains(&q_star) }
        })
        .collect()
}
