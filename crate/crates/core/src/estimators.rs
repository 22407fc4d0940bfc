//! SWAP-test sampling, Monte Carlo purity estimation and the one-sided
//! order-0 rank detector.
//!
//! Generator contract: each sampling call seeds `ChaCha20Rng::seed_from_u64`
//! with the plan's seed and draws one `Bernoulli` sample per shot, in shot
//! order. The outcome sequence is therefore identical across platforms.

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::circuit::{output_spectrum, simulate, Circuit, CircuitError, DensityMatrix, Gate, StateVector};
use crate::entropy::RANK_THRESHOLD;

/// Exact-mode purity cut: Tr(rho^2) below this means rank two.
pub const PURITY_CUT: f64 = 1.0 - 1e-9;

/// Acceptance probabilities below this are treated as exactly zero.
pub const ACCEPT_CLAMP: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("shot count must be at least 1")]
    NoShots,
    #[error("state dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("output state has rank {0} > 2")]
    RankTooHigh(usize),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotPlan {
    shots: u64,
    seed: u64,
}

impl ShotPlan {
    pub fn new(shots: u64, seed: u64) -> Result<Self, EstimatorError> {
        if shots == 0 {
            return Err(EstimatorError::NoShots);
        }
        Ok(ShotPlan { shots, seed })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Probability that the SWAP-test ancilla reads 0: (1 + Tr(rho0 rho1)) / 2.
pub fn swap_test_prob(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64, EstimatorError> {
    if rho0.dim() != rho1.dim() {
        return Err(EstimatorError::DimensionMismatch { left: rho0.dim(), right: rho1.dim() });
    }
    let overlap = rho0.trace_product(rho1)?;
    Ok(((1.0 + overlap) / 2.0).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapSample {
    pub zeros: u64,
    pub ones: u64,
    /// 2 * zeros / shots - 1, an unbiased estimate of Tr(rho0 rho1).
    pub estimate: f64,
    /// Exact probability of a 0 outcome.
    pub p_zero: f64,
}

fn count_hits(p: f64, plan: &ShotPlan) -> u64 {
    let mut rng = ChaCha20Rng::seed_from_u64(plan.seed);
    let coin = Bernoulli::new(p.clamp(0.0, 1.0)).expect("probability clamped to [0, 1]");
    (0..plan.shots).filter(|_| coin.sample(&mut rng)).count() as u64
}

pub fn swap_test_sample(rho0: &DensityMatrix, rho1: &DensityMatrix, plan: &ShotPlan) -> Result<SwapSample, EstimatorError> {
    let p_zero = swap_test_prob(rho0, rho1)?;
    let zeros = count_hits(p_zero, plan);
    let estimate = 2.0 * zeros as f64 / plan.shots as f64 - 1.0;
    Ok(SwapSample { zeros, ones: plan.shots - zeros, estimate, p_zero })
}

/// Monte Carlo estimate of Tr(rho^2) from SWAP tests on two copies.
pub fn purity_estimate(rho: &DensityMatrix, plan: &ShotPlan) -> Result<SwapSample, EstimatorError> {
    swap_test_sample(rho, rho, plan)
}

fn shifted(g: &Gate, by: usize) -> Gate {
    match g {
        Gate::H(w) => Gate::H(w + by),
        Gate::X(w) => Gate::X(w + by),
        Gate::Cnot { control, target } => Gate::Cnot { control: control + by, target: target + by },
        Gate::Ry { theta, target } => Gate::Ry { theta: *theta, target: target + by },
        Gate::Unitary { matrix, target } => Gate::Unitary { matrix: *matrix, target: target + by },
        Gate::Controlled { control, body } => {
            Gate::Controlled { control: control + by, body: body.iter().map(|b| shifted(b, by)).collect() }
        }
        Gate::Adjoint(body) => Gate::Adjoint(body.iter().map(|b| shifted(b, by)).collect()),
    }
}

/// Explicit SWAP-test circuit: `prep0` on the first wires, `prep1` after it,
/// then an ancilla (last wire, the only output) running H, a controlled SWAP
/// of each matching output pair, and H. On |0...0> the ancilla reads 0 with
/// probability (1 + Tr(rho0 rho1)) / 2, where rho_i are the preps' reduced
/// states.
pub fn swap_test_circuit(prep0: &Circuit, prep1: &Circuit) -> Result<Circuit, EstimatorError> {
    let (n0, n1) = (prep0.outputs().len(), prep1.outputs().len());
    if n0 != n1 {
        return Err(EstimatorError::DimensionMismatch { left: 1 << n0, right: 1 << n1 });
    }
    let off = prep0.width();
    let anc = off + prep1.width();
    let mut c = Circuit::new(anc + 1, vec![anc])?;
    c.extend(prep0.gates().iter().cloned())?;
    c.extend(prep1.gates().iter().map(|g| shifted(g, off)))?;
    c.push(Gate::H(anc))?;
    for (&a, &b) in prep0.outputs().iter().zip(prep1.outputs()) {
        let (a, b) = (a, b + off);
        let swap = vec![
            Gate::Cnot { control: a, target: b },
            Gate::Cnot { control: b, target: a },
            Gate::Cnot { control: a, target: b },
        ];
        c.push(Gate::Controlled { control: anc, body: swap })?;
    }
    c.push(Gate::H(anc))?;
    Ok(c)
}

/// Ancilla-reads-0 probability of the explicit circuit, by simulation.
pub fn swap_test_circuit_prob(prep0: &Circuit, prep1: &Circuit) -> Result<f64, EstimatorError> {
    let c = swap_test_circuit(prep0, prep1)?;
    let psi = simulate(&c, &StateVector::zero(c.width()))?;
    Ok(psi.wire_probability(c.width() - 1, false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankDecision {
    /// At least two nonzero eigenvalues: the order-0 yes side.
    Rank2,
    /// Pure output: the order-0 no side.
    Rank1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order0Mode {
    /// Decide from Tr(rho^2) computed exactly.
    Exact,
    /// Decide from sampled SWAP tests: any 1 outcome means rank two.
    Sampling(ShotPlan),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order0Evidence {
    pub decision: RankDecision,
    /// Exact Tr(rho^2) of the output state.
    pub purity: f64,
    /// Probability of a 1 outcome: (1 - Tr(rho^2)) / 2, clamped to zero
    /// below `ACCEPT_CLAMP`.
    pub accept_prob: f64,
    /// Numerical rank at the entropy rank threshold.
    pub rank: usize,
    /// Sampling mode only.
    pub ones: Option<u64>,
    pub shots: Option<u64>,
    /// A sampled RANK1 verdict only says no 1 outcome occurred.
    pub provisional: bool,
}

/// Order-0 rank detector on the mixer's output state.
pub fn order0_decide(mixer: &Circuit, mode: Order0Mode) -> Result<Order0Evidence, EstimatorError> {
    let psi = simulate(mixer, &StateVector::zero(mixer.width()))?;
    let spec = output_spectrum(&psi, mixer.outputs())?;
    let rank = spec.iter().filter(|l| **l > RANK_THRESHOLD).count();
    if rank > 2 {
        return Err(EstimatorError::RankTooHigh(rank));
    }
    let purity: f64 = spec.iter().map(|l| l * l).sum();
    let raw = (1.0 - purity) / 2.0;
    let accept_prob = if raw < ACCEPT_CLAMP { 0.0 } else { raw };
    Ok(match mode {
        Order0Mode::Exact => Order0Evidence {
            decision: if purity < PURITY_CUT { RankDecision::Rank2 } else { RankDecision::Rank1 },
            purity,
            accept_prob,
            rank,
            ones: None,
            shots: None,
            provisional: false,
        },
        Order0Mode::Sampling(plan) => {
            let ones = count_hits(accept_prob, &plan);
            let decision = if ones > 0 { RankDecision::Rank2 } else { RankDecision::Rank1 };
            Order0Evidence {
                decision,
                purity,
                accept_prob,
                rank,
                ones: Some(ones),
                shots: Some(plan.shots),
                provisional: decision == RankDecision::Rank1,
            }
        }
    })
}
