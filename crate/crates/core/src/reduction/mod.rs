//! Rank-2 entropy reduction instances: from a synthetic acceptance
//! probability to an infidelity gadget, a mixer circuit preparing a rank-2
//! state, and the threshold/gap pair for each entropy family and order.
//!
//! Acceptance convention: C' accepts when its output wire reads 1. The
//! gadget then has |<psi0|psi1>| = 1 - Pr[accept], so high acceptance gives
//! a nearly maximally mixed rank-2 state (high entropy, yes side).

mod gadget;
mod threshold;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{emit_circuit, output_spectrum, parse_circuit, simulate, Circuit, CircuitError, StateVector};
use crate::entropy::{quantum_entropy, EntropyError, Family, Order, RANK_THRESHOLD};

pub use gadget::{
    acceptance_probability, gadget_overlap, infidelity_gadget, rank2_mixer, synthesize_bqp_instance,
    SyntheticBqpInstance,
};
pub use threshold::{min_n, promise_values, threshold_gap, threshold_gap_real, Regime, ThresholdGap};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("acceptance probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("{0}")]
    BadInstance(String),
    #[error("circuit widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("n = {n} is below the minimum {min} for {family} order {order}")]
    NTooSmall { n: u32, min: u32, order: String, family: String },
    #[error("order 0 has no threshold/gap pair; use the rank detector in `estimators`")]
    OrderZero,
    #[error("Tsallis entropy has no order-infinity instance")]
    TsallisInfinity,
    #[error("reduced state has rank {0} > 2")]
    RankTooHigh(usize),
    #[error("instance file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Ambiguous,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Yes => "YES",
            Label::No => "NO",
            Label::Unknown => "UNKNOWN",
        })
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "YES" => Ok(Label::Yes),
            "NO" => Ok(Label::No),
            "UNKNOWN" => Ok(Label::Unknown),
            _ => Err(format!("unknown label `{s}`")),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Ambiguous => "AMBIGUOUS",
        })
    }
}

/// A mixer circuit together with the promise it is meant to satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionInstance {
    pub mixer: Circuit,
    pub family: Family,
    pub order: Order,
    pub tg: ThresholdGap,
    pub label: Label,
}

impl ReductionInstance {
    /// Number of output qubits of the prepared state.
    pub fn n(&self) -> usize {
        self.mixer.outputs().len()
    }
}

/// YES when p >= 1 - 2^{-n-1}, NO when p <= 2^{-n-1}.
pub fn label_for(accept_prob: f64, n: u32) -> Label {
    let edge = 2f64.powi(-(n as i32) - 1);
    if accept_prob >= 1.0 - edge {
        Label::Yes
    } else if accept_prob <= edge {
        Label::No
    } else {
        Label::Unknown
    }
}

/// Gadget, mixer and thresholds for n = n' + 1 output qubits.
pub fn build_instance(
    bqp: &SyntheticBqpInstance,
    family: Family,
    order: Order,
) -> Result<ReductionInstance, ReductionError> {
    let n = (bqp.n_prime + 1) as u32;
    let tg = threshold_gap(family, order, n)?;
    let (q0, q1) = infidelity_gadget(&bqp.circuit)?;
    let mixer = rank2_mixer(&q0, &q1)?;
    Ok(ReductionInstance { mixer, family, order, tg, label: label_for(bqp.accept_prob, n) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    pub verdict: Verdict,
    pub entropy: f64,
    /// Numerical rank of the reduced state.
    pub rank: usize,
    /// Distance past the relevant cut: S - (t+g) for YES labels,
    /// (t-g) - S for NO labels, the larger of the two otherwise.
    pub margin: f64,
}

impl Verification {
    /// The verdict agrees with the declared label (always true for UNKNOWN).
    pub fn consistent_with(&self, label: Label) -> bool {
        match label {
            Label::Yes => self.verdict == Verdict::Yes,
            Label::No => self.verdict == Verdict::No,
            Label::Unknown => true,
        }
    }
}

/// Exact entropy of the mixer's reduced state, classified against (t, g).
pub fn verify_instance(inst: &ReductionInstance) -> Result<Verification, ReductionError> {
    let psi = simulate(&inst.mixer, &StateVector::zero(inst.mixer.width()))?;
    let spectrum = output_spectrum(&psi, inst.mixer.outputs())?;
    let rank = spectrum.iter().filter(|l| **l > RANK_THRESHOLD).count();
    if rank > 2 {
        return Err(ReductionError::RankTooHigh(rank));
    }
    let s = quantum_entropy(&spectrum, inst.order, inst.family)?;
    let ThresholdGap { t, g, .. } = inst.tg;
    let verdict = if s >= t + g {
        Verdict::Yes
    } else if s <= t - g {
        Verdict::No
    } else {
        Verdict::Ambiguous
    };
    let margin = match inst.label {
        Label::Yes => s - (t + g),
        Label::No => (t - g) - s,
        Label::Unknown => (s - (t + g)).max((t - g) - s),
    };
    Ok(Verification { verdict, entropy: s, rank, margin })
}

/// Header line followed by the circuit text.
pub fn emit_instance(inst: &ReductionInstance) -> String {
    format!(
        "family={}; order={}; t={:.16e}; g={:.16e}; label={}\n{}",
        inst.family,
        inst.order,
        inst.tg.t,
        inst.tg.g,
        inst.label,
        emit_circuit(&inst.mixer)
    )
}

pub fn parse_instance(text: &str) -> Result<ReductionInstance, ReductionError> {
    let bad = |msg: String| ReductionError::Format { line: 1, msg };
    let (header, body) = text.split_once('\n').ok_or_else(|| bad("missing header line".into()))?;
    let mut fields = std::collections::HashMap::new();
    for part in header.split(';') {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, found `{}`", part.trim())))?;
        if fields.insert(k.trim(), v.trim()).is_some() {
            return Err(bad(format!("duplicate key `{}`", k.trim())));
        }
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(format!("missing `{k}`")));
    let family: Family = get("family")?.parse().map_err(|e: EntropyError| bad(e.to_string()))?;
    let order: Order = get("order")?.parse().map_err(|e: EntropyError| bad(e.to_string()))?;
    let num = |k: &str| -> Result<f64, ReductionError> {
        let v: f64 = get(k)?.parse().map_err(|_| bad(format!("`{k}` is not a number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad(format!("`{k}` is not finite")))
        }
    };
    let (t, g) = (num("t")?, num("g")?);
    let label: Label = get("label")?.parse().map_err(bad)?;
    if fields.len() != 5 {
        return Err(bad("unexpected extra keys".into()));
    }
    let mixer = parse_circuit(body).map_err(|e| match e {
        CircuitError::Parse { line, msg } => ReductionError::Format { line: line + 1, msg },
        other => ReductionError::Circuit(other),
    })?;
    Ok(ReductionInstance { mixer, family, order, tg: ThresholdGap { t, g, valid: g > 0.0 }, label })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(v: f64) -> Order {
        Order::of(v)
    }

    #[test]
    fn labels_follow_the_promise() {
        assert_eq!(label_for(1.0, 3), Label::Yes);
        assert_eq!(label_for(1.0 - 1.0 / 16.0, 3), Label::Yes);
        assert_eq!(label_for(0.5, 3), Label::Unknown);
        assert_eq!(label_for(1.0 / 16.0, 3), Label::No);
        assert_eq!(label_for(0.0, 3), Label::No);
    }

    #[test]
    fn tsallis_two_pipeline() {
        let yes = build_instance(&synthesize_bqp_instance(1, 1.0).unwrap(), Family::Tsallis, o(2.0)).unwrap();
        assert_eq!(yes.n(), 2);
        assert_eq!(yes.tg.t + yes.tg.g, 0.28125);
        let v = verify_instance(&yes).unwrap();
        assert!((v.entropy - 0.5).abs() < 1e-12);
        assert_eq!(v.verdict, Verdict::Yes);
        assert_eq!(v.rank, 2);
        let no = build_instance(&synthesize_bqp_instance(1, 0.0).unwrap(), Family::Tsallis, o(2.0)).unwrap();
        let v = verify_instance(&no).unwrap();
        assert!(v.entropy.abs() < 1e-12);
        assert_eq!(v.verdict, Verdict::No);
        assert_eq!(v.rank, 1);
    }

    #[test]
    fn yes_at_the_promise_edge() {
        let p = 1.0 - 2f64.powi(-4);
        let inst = build_instance(&synthesize_bqp_instance(2, p).unwrap(), Family::Renyi, o(2.0)).unwrap();
        assert_eq!(inst.label, Label::Yes);
        let v = verify_instance(&inst).unwrap();
        assert!(v.margin >= 0.0 && v.consistent_with(Label::Yes));
    }

    #[test]
    fn order_zero_and_small_n_are_rejected() {
        let bqp = synthesize_bqp_instance(1, 1.0).unwrap();
        assert_eq!(build_instance(&bqp, Family::Renyi, Order::Zero), Err(ReductionError::OrderZero));
        assert!(matches!(build_instance(&bqp, Family::Renyi, o(0.5)), Err(ReductionError::NTooSmall { min: 4, .. })));
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = build_instance(&synthesize_bqp_instance(2, 0.3).unwrap(), Family::Renyi, Order::Infinity).unwrap();
        let text = emit_instance(&inst);
        assert!(text.starts_with("family=renyi; order=inf; t="));
        assert!(text.lines().next().unwrap().ends_with("label=UNKNOWN"));
        let back = parse_instance(&text).unwrap();
        assert_eq!(back.mixer, inst.mixer);
        assert_eq!(emit_instance(&back), text);
        assert!((back.tg.t - inst.tg.t).abs() <= 1e-16 * inst.tg.t.abs().max(1.0));
    }

    #[test]
    fn corrupted_headers_are_rejected() {
        let inst = build_instance(&synthesize_bqp_instance(1, 1.0).unwrap(), Family::Tsallis, o(2.0)).unwrap();
        let text = emit_instance(&inst);
        for broken in [
            text.replacen("family=tsallis", "family=shannon", 1),
            text.replacen("t=", "t=abc", 1),
            text.replacen("; label=YES", "", 1),
            text.replacen("label=YES", "label=YES; extra=1", 1),
            "family=renyi".to_string(),
        ] {
            assert!(matches!(parse_instance(&broken), Err(ReductionError::Format { line: 1, .. })), "{broken}");
        }
        let bad_body = text.replacen("H 2", "Z 2", 1);
        assert!(matches!(parse_instance(&bad_body), Err(ReductionError::Format { line: 4, .. })));
    }
}
