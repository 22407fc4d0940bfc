//! Grid certification of binary-entropy inequalities, sign facts about
//! auxiliary functions, and the exploratory q* scan.
//!
//! Every check reports the worst signed margin it saw (negative means the
//! claimed inequality was violated by that much) and where. A check passes
//! iff its worst margin is at least `-slack`. A NaN anywhere counts as an
//! infinitely bad margin so that a broken formula fails by name.

mod appendix;
mod auxiliary;
mod binary;
mod qstar;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::entropy::{EntropyError, Order};

pub use appendix::{
    check_appendix_facts, g1, g2, i1, i2, j1, j1_at_one_display, j1_at_zero_display, j2, DERIVATIVE_ANCHORS,
};
pub use auxiliary::{check_proof_auxiliaries, renyi_slope_aux, tsallis_t, tsallis_u};
pub use binary::{
    check_min_entropy_bound, check_renyi_monotonicity, check_renyi_new_bounds, check_salpha_vs_smin,
    check_shannon_power_bounds, check_tsallis_lower_bound, check_tsallis_new_bounds, random_spectra,
};
pub use qstar::{scan_qstar, QStarPoint};

pub const DEFAULT_POINTS: usize = 1001;
pub const DEFAULT_SLACK: f64 = 1e-9;
pub const MIN_POINTS: usize = 101;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid needs at least {MIN_POINTS} x points, got {0}")]
    TooFewPoints(usize),
    #[error("x point {0} is outside [0, 1]")]
    PointOutOfRange(f64),
    #[error("slack {0} is outside (0, 1e-6]")]
    BadSlack(f64),
}

/// Evaluation grid for the inequality checks.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    xs: Vec<f64>,
    slack: f64,
    random_orders: usize,
    seed: u64,
}

impl GridSpec {
    /// `points` equally spaced x values covering [0, 1] including both ends.
    pub fn uniform(points: usize) -> Result<Self, GridError> {
        if points < MIN_POINTS {
            return Err(GridError::TooFewPoints(points));
        }
        let last = (points - 1) as f64;
        let xs = (0..points).map(|i| i as f64 / last).collect();
        Ok(GridSpec { xs, slack: DEFAULT_SLACK, random_orders: 0, seed: 0 })
    }

    /// Explicit x values; sorted and deduplicated.
    pub fn from_points(mut xs: Vec<f64>) -> Result<Self, GridError> {
        if let Some(x) = xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(GridError::PointOutOfRange(*x));
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        if xs.len() < MIN_POINTS {
            return Err(GridError::TooFewPoints(xs.len()));
        }
        Ok(GridSpec { xs, slack: DEFAULT_SLACK, random_orders: 0, seed: 0 })
    }

    /// `points` uniform random draws from [0, 1].
    pub fn random(points: usize, seed: u64) -> Result<Self, GridError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_points((0..points).map(|_| rng.gen::<f64>()).collect())
    }

    pub fn with_slack(mut self, slack: f64) -> Result<Self, GridError> {
        if !(slack > 0.0 && slack <= 1e-6) {
            return Err(GridError::BadSlack(slack));
        }
        self.slack = slack;
        Ok(self)
    }

    /// Adds `count` random orders per order interval on top of the fixed
    /// samples.
    pub fn with_random_orders(mut self, count: usize, seed: u64) -> Self {
        self.random_orders = count;
        self.seed = seed;
        self
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn slack(&self) -> f64 {
        self.slack
    }

    /// Fixed orders plus the configured number of uniform draws from
    /// [lo, hi]. `salt` separates the random streams of different checks.
    pub(crate) fn orders(&self, fixed: &[Order], lo: f64, hi: f64, salt: u64) -> Vec<Order> {
        let mut out = fixed.to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        while out.len() < fixed.len() + self.random_orders {
            if let Ok(o) = Order::new(rng.gen_range(lo..=hi)) {
                out.push(o);
            }
        }
        out
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::uniform(DEFAULT_POINTS).expect("default grid is valid")
    }
}

/// Where a margin was observed. Fields that do not apply are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Location {
    pub x: Option<f64>,
    pub order: Option<Order>,
    /// Sample index for checks that do not run over x (random spectra,
    /// coefficient indices).
    pub index: Option<usize>,
}

impl Location {
    pub fn at(x: f64, order: Order) -> Self {
        Location { x: Some(x), order: Some(order), index: None }
    }

    pub fn x(x: f64) -> Self {
        Location { x: Some(x), ..Default::default() }
    }

    fn key(&self) -> (f64, f64, usize) {
        (
            self.x.unwrap_or(f64::NEG_INFINITY),
            self.order.map_or(f64::NEG_INFINITY, Order::value),
            self.index.unwrap_or(0),
        )
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub claim: String,
    /// The inequality being certified, written out.
    pub anchor: String,
    pub worst_margin: f64,
    pub location: Location,
    pub slack: f64,
    pub pass: bool,
}

/// Tracks the worst margin deterministically: smallest value, ties broken by
/// the lexicographically smallest location.
#[derive(Debug, Clone)]
pub(crate) struct Worst {
    margin: f64,
    location: Location,
    seen: bool,
}

impl Worst {
    pub(crate) fn new() -> Self {
        Worst { margin: f64::INFINITY, location: Location::default(), seen: false }
    }

    pub(crate) fn record(&mut self, margin: f64, location: Location) {
        let m = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        let better = !self.seen
            || m < self.margin
            || (m == self.margin && location.cmp_key(&self.location) == Ordering::Less);
        if better {
            self.margin = m;
            self.location = location;
            self.seen = true;
        }
    }

    /// Records the entropy-layer result, treating an error as NaN.
    pub(crate) fn record_result(&mut self, margin: Result<f64, EntropyError>, location: Location) {
        self.record(margin.unwrap_or(f64::NAN), location);
    }

    pub(crate) fn finish(self, claim: &str, anchor: &str, slack: f64) -> CheckResult {
        let worst_margin = if self.seen { self.margin } else { f64::NEG_INFINITY };
        CheckResult {
            claim: claim.to_string(),
            anchor: anchor.to_string(),
            worst_margin,
            location: self.location,
            slack,
            pass: worst_margin >= -slack,
        }
    }
}

/// A function producing one or more registered checks.
pub type CheckGroup = fn(&GridSpec) -> Vec<CheckResult>;

/// Every registered check, grouped so that groups can run independently.
pub const SUITE: [CheckGroup; 9] = [
    |g| vec![check_renyi_monotonicity(g)],
    |g| vec![check_tsallis_lower_bound(g)],
    |g| vec![check_min_entropy_bound(g)],
    |g| vec![check_shannon_power_bounds(g)],
    |g| vec![check_salpha_vs_smin(&random_spectra(200, 8, g.seed), g.slack)],
    check_renyi_new_bounds,
    check_tsallis_new_bounds,
    check_appendix_facts,
    check_proof_auxiliaries,
];

/// Sorts by claim id, the report order.
pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| a.claim.cmp(&b.claim));
}

/// Runs every registered check on `grid`, sorted by claim id.
pub fn run_suite(grid: &GridSpec) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = SUITE.iter().flat_map(|group| group(grid)).collect();
    sort_results(&mut out);
    out
}

/// Claim ids produced by [`run_suite`], in report order.
pub fn claim_ids() -> Vec<String> {
    let grid = GridSpec::uniform(MIN_POINTS).expect("valid");
    run_suite(&grid).into_iter().map(|r| r.claim).collect()
}
