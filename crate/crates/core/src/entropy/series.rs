//! Generalized binomial coefficients and the series built from them.

use super::EntropyError;

/// Truncation controls for binomial series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomSeriesConfig {
    max_terms: usize,
    tail_tolerance: f64,
}

impl BinomSeriesConfig {
    pub fn new(max_terms: usize, tail_tolerance: f64) -> Result<Self, EntropyError> {
        if max_terms < 8 {
            return Err(EntropyError::BadConfig(format!("max_terms {max_terms} < 8")));
        }
        if !(tail_tolerance > 0.0) {
            return Err(EntropyError::BadConfig(format!("tail_tolerance {tail_tolerance} must be positive")));
        }
        Ok(BinomSeriesConfig { max_terms, tail_tolerance })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }
}

impl Default for BinomSeriesConfig {
    fn default() -> Self {
        BinomSeriesConfig { max_terms: 1 << 21, tail_tolerance: 1e-12 }
    }
}

/// binom(a, k) = a(a-1)...(a-k+1)/k!, accumulated with one multiply and one
/// divide per factor.
pub fn gen_binom(a: f64, k: u64) -> f64 {
    let mut r = 1.0;
    for j in 0..k {
        let j = j as f64;
        r *= a - j;
        r /= j + 1.0;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Predicted sign of binom(a, 2k): nonnegative iff max{0, 2k - ceil(a)} is even.
pub fn gen_binom_sign(a: f64, k: u64) -> Sign {
    let excess = (2 * k) as i64 - a.ceil() as i64;
    if excess.max(0) % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Truncated series value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// Rigorous bound on the absolute value of the omitted tail.
    pub tail_bound: f64,
}

/// 2^{1-q} sum_k binom(q, 2k) v^{2k}, which equals the rank-2 trace power for
/// |v| < 1. The tail after term K is bounded geometrically once 4K + 1 >= q,
/// since consecutive term ratios are then at most v^2.
pub fn rank2_trace_power_series(overlap_mag: f64, q: f64, cfg: &BinomSeriesConfig) -> Result<SeriesSum, EntropyError> {
    if !(0.0..1.0).contains(&overlap_mag) {
        return Err(EntropyError::OutOfRange(overlap_mag));
    }
    if !q.is_finite() {
        return Err(EntropyError::BadOrder(format!("{q}")));
    }
    let scale = 2f64.powf(1.0 - q);
    let v2 = overlap_mag * overlap_mag;
    let mut coef = 1.0f64; // binom(q, 2k)
    let mut pow = 1.0; // v^{2k}
    let mut sum = 0.0;
    for k in 0..cfg.max_terms {
        let term = coef * pow;
        sum += term;
        let tail = if 4.0 * k as f64 + 1.0 >= q { scale * term.abs() * v2 / (1.0 - v2) } else { f64::INFINITY };
        if tail <= cfg.tail_tolerance {
            return Ok(SeriesSum { value: scale * sum, terms: k + 1, tail_bound: tail });
        }
        let m = 2.0 * k as f64;
        coef *= (q - m) / (m + 1.0);
        coef *= (q - m - 1.0) / (m + 2.0);
        pow *= v2;
    }
    Err(EntropyError::NotConverged { partial: scale * sum, terms: cfg.max_terms })
}

/// A series evaluated by partial sums at doubling checkpoints, with the limit
/// extrapolated from the known algebraic decay of the tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    /// Partial sum over the terms actually added.
    pub partial_sum: f64,
    pub terms: usize,
    /// Extrapolated value of the infinite sum.
    pub limit: f64,
    /// limit - partial_sum.
    pub tail_estimate: f64,
    /// Difference between the last two extrapolation levels.
    pub error_estimate: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomIdentitySums {
    /// sum_{k>=1} binom(a, 2k)
    pub sum_even: SeriesEstimate,
    /// sum_{k>=1} k binom(a, 2k)
    pub sum_even_weighted: SeriesEstimate,
}

const FIRST_CHECKPOINT: usize = 64;

/// Richardson extrapolation on partial sums at K, 2K, 4K, ...; the tail after
/// K terms behaves like sum_j c_j K^{-(p0 + j)}.
fn extrapolate(checkpoints: &[f64], p0: f64, terminated: bool, tol: f64) -> (f64, f64, bool) {
    let last = *checkpoints.last().expect("at least one checkpoint");
    if terminated {
        return (last, 0.0, true);
    }
    if p0 <= 0.0 {
        return (last, f64::INFINITY, false);
    }
    let mut table: Vec<f64> = checkpoints.to_vec();
    let mut diag = vec![last];
    for j in 0..checkpoints.len() - 1 {
        let f = 2f64.powf(p0 + j as f64);
        table = table.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        diag.push(*table.last().unwrap());
    }
    let n = diag.len();
    // Use the first few levels only: higher levels amplify rounding.
    let best = n.min(5) - 1;
    let err = if best == 0 { f64::INFINITY } else { (diag[best] - diag[best - 1]).abs() };
    (diag[best], err, err <= tol)
}

/// Partial sums of sum_{k>=1} binom(a,2k) and sum_{k>=1} k binom(a,2k), with
/// an extrapolated limit and tail estimate. The weighted series converges
/// only for a > 1 or integer a.
pub fn binom_identity_sums(a: f64, cfg: &BinomSeriesConfig) -> Result<BinomIdentitySums, EntropyError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(EntropyError::BadOrder(format!("upper index {a} must be positive")));
    }
    let mut coef = 1.0;
    let (mut s0, mut c0) = (0.0f64, 0.0f64);
    let (mut s1, mut c1) = (0.0f64, 0.0f64);
    let (mut cp0, mut cp1) = (Vec::new(), Vec::new());
    let mut next = FIRST_CHECKPOINT;
    let mut terminated = false;
    let mut k = 0usize;
    while k < cfg.max_terms {
        k += 1;
        let m = 2.0 * (k - 1) as f64;
        coef *= (a - m) / (m + 1.0);
        coef *= (a - m - 1.0) / (m + 2.0);
        if coef == 0.0 {
            terminated = true;
        }
        kahan(&mut s0, &mut c0, coef);
        kahan(&mut s1, &mut c1, coef * k as f64);
        if k == next || terminated {
            cp0.push(s0);
            cp1.push(s1);
            next *= 2;
            if terminated {
                break;
            }
            if cp0.len() >= 4 {
                let (_, e0, ok0) = extrapolate(&cp0, a, false, cfg.tail_tolerance);
                let (_, e1, ok1) = extrapolate(&cp1, a - 1.0, false, cfg.tail_tolerance);
                if ok0 && ok1 && e0.max(e1) <= cfg.tail_tolerance && cp0.len() >= 6 {
                    break;
                }
            }
        }
    }
    if cp0.last() != Some(&s0) {
        cp0.push(s0);
        cp1.push(s1);
    }
    let build = |cps: &[f64], partial: f64, p0: f64| {
        let (limit, err, converged) = extrapolate(cps, p0, terminated, cfg.tail_tolerance.max(1e-300));
        SeriesEstimate {
            partial_sum: partial,
            terms: k,
            limit,
            tail_estimate: limit - partial,
            error_estimate: err,
            converged: converged || terminated,
        }
    };
    Ok(BinomIdentitySums { sum_even: build(&cp0, s0, a), sum_even_weighted: build(&cp1, s1, a - 1.0) })
}

fn kahan(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::rank2_trace_power;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn gen_binom_values() {
        assert_eq!(gen_binom(3.7, 0), 1.0);
        assert_eq!(gen_binom(5.0, 2), 10.0);
        assert_abs_diff_eq!(gen_binom(2.5, 3), 0.3125, epsilon = 1e-15);
        assert_eq!(gen_binom(4.0, 6), 0.0);
    }

    #[test]
    fn sign_rule_examples() {
        assert_eq!(gen_binom_sign(2.5, 1), Sign::Plus);
        assert_eq!(gen_binom_sign(2.5, 2), Sign::Minus);
        assert_eq!(gen_binom_sign(4.0, 3), Sign::Plus);
    }

    #[test]
    fn series_small_cases() {
        let cfg = BinomSeriesConfig::default();
        let s = rank2_trace_power_series(0.0, 2.7, &cfg).unwrap();
        assert_abs_diff_eq!(s.value, 2f64.powf(1.0 - 2.7), epsilon = 1e-15);
        let s = rank2_trace_power_series(0.5, 2.0, &cfg).unwrap();
        assert_abs_diff_eq!(s.value, 0.625, epsilon = 1e-15);
        let s = rank2_trace_power_series(0.3, 2.5, &cfg).unwrap();
        assert_abs_diff_eq!(s.value, rank2_trace_power(0.3, 2.5).unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn series_reports_non_convergence() {
        let cfg = BinomSeriesConfig::new(8, 1e-15).unwrap();
        match rank2_trace_power_series(0.99, 0.3, &cfg) {
            Err(EntropyError::NotConverged { terms, partial }) => {
                assert_eq!(terms, 8);
                assert!(partial.is_finite());
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
        assert!(rank2_trace_power_series(1.0, 2.0, &cfg).is_err());
    }

    #[test]
    fn config_invariants() {
        assert!(BinomSeriesConfig::new(7, 1e-9).is_err());
        assert!(BinomSeriesConfig::new(8, 0.0).is_err());
    }

    #[test]
    fn terminating_identity_sums() {
        let cfg = BinomSeriesConfig::default();
        for (a, e0, e1) in [(2.0, 1.0, 1.0), (4.0, 7.0, 8.0), (3.0, 3.0, 3.0)] {
            let s = binom_identity_sums(a, &cfg).unwrap();
            assert_eq!(s.sum_even.partial_sum, e0);
            assert_eq!(s.sum_even_weighted.partial_sum, e1);
            assert_eq!(s.sum_even.tail_estimate, 0.0);
        }
    }

    #[test]
    fn extrapolated_identity_sums() {
        let cfg = BinomSeriesConfig::default();
        for a in [1.3, 2.5, 6.7] {
            let s = binom_identity_sums(a, &cfg).unwrap();
            assert!((s.sum_even.limit - (2f64.powf(a - 1.0) - 1.0)).abs() < 1e-9, "a={a}");
            assert!((s.sum_even_weighted.limit - 2f64.powf(a - 3.0) * a).abs() < 1e-9, "a={a}");
        }
    }

    proptest! {
        #[test]
        fn series_matches_closed_form(v in 0.0f64..=0.95, q in 0.1f64..8.0) {
            let cfg = BinomSeriesConfig::new(1 << 16, 1e-13).unwrap();
            let s = rank2_trace_power_series(v, q, &cfg).unwrap();
            prop_assert!((s.value - rank2_trace_power(v, q).unwrap()).abs() <= 1e-11);
        }

        #[test]
        fn sign_rule_matches_numeric_sign(a in 0.05f64..12.0, k in 1u64..30) {
            let c = gen_binom(a, 2 * k);
            if c.abs() > 1e-14 {
                let want = if c > 0.0 { Sign::Plus } else { Sign::Minus };
                prop_assert_eq!(gen_binom_sign(a, k), want);
            }
        }
    }
}
