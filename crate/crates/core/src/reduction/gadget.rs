use crate::circuit::{overlap, simulate, Circuit, Gate, StateVector};

use super::ReductionError;

/// A circuit with one designated output wire whose probability of reading 1
/// is exactly `accept_prob`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticBqpInstance {
    pub circuit: Circuit,
    pub accept_prob: f64,
    pub n_prime: usize,
}

/// Width `n_prime`, output wire 0. Acceptance means wire 0 reads 1, realized
/// by RY(2 asin(sqrt(p))) on wire 0; p = 1 is a plain X and p = 0 is the
/// empty circuit. The other wires stay idle.
pub fn synthesize_bqp_instance(n_prime: usize, accept_prob: f64) -> Result<SyntheticBqpInstance, ReductionError> {
    if n_prime == 0 {
        return Err(ReductionError::BadInstance("n_prime must be positive".into()));
    }
    if !(0.0..=1.0).contains(&accept_prob) {
        return Err(ReductionError::BadProbability(accept_prob));
    }
    let mut circuit = Circuit::new(n_prime, vec![0])?;
    if accept_prob == 1.0 {
        circuit.push(Gate::X(0))?;
    } else if accept_prob > 0.0 {
        circuit.push(Gate::Ry { theta: 2.0 * accept_prob.sqrt().asin(), target: 0 })?;
    }
    Ok(SyntheticBqpInstance { circuit, accept_prob, n_prime })
}

/// Exact probability that the single output wire reads 1 on |0...0>.
pub fn acceptance_probability(c_prime: &Circuit) -> Result<f64, ReductionError> {
    let out = single_output(c_prime)?;
    let psi = simulate(c_prime, &StateVector::zero(c_prime.width()))?;
    Ok(psi.wire_probability(out, true))
}

fn single_output(c: &Circuit) -> Result<usize, ReductionError> {
    match c.outputs() {
        [o] => Ok(*o),
        other => Err(ReductionError::BadInstance(format!("expected exactly one output wire, found {}", other.len()))),
    }
}

/// Q0 = identity and Q1 = C'^dagger CNOT(O -> F) C' on m + 1 wires, with the
/// fresh ancilla F as the last wire. Every wire is an output of both.
///
/// On |0...0>, <psi0|psi1> equals the probability that O reads 0, so the
/// overlap is 1 - Pr[C' accepts] under the reads-1 acceptance rule.
pub fn infidelity_gadget(c_prime: &Circuit) -> Result<(Circuit, Circuit), ReductionError> {
    let o = single_output(c_prime)?;
    let m = c_prime.width();
    let q0 = Circuit::all_outputs(m + 1);
    let mut q1 = Circuit::all_outputs(m + 1);
    q1.extend(c_prime.gates().iter().cloned())?;
    q1.push(Gate::Cnot { control: o, target: m })?;
    q1.push(Gate::Adjoint(c_prime.gates().to_vec()))?;
    Ok((q0, q1))
}

/// |<psi0|psi1>| for the gadget pair on |0...0>.
pub fn gadget_overlap(q0: &Circuit, q1: &Circuit) -> Result<f64, ReductionError> {
    let zero = StateVector::zero(q0.width());
    let a = simulate(q0, &zero)?;
    let b = simulate(q1, &zero)?;
    Ok(overlap(&a, &b)?.norm())
}

/// Ancilla A (last wire): H(A), CTRL(A){Q1}, X(A), CTRL(A){Q0}, X(A). Tracing
/// out A leaves (|psi0><psi0| + |psi1><psi1|)/2 on Q0's outputs.
pub fn rank2_mixer(q0: &Circuit, q1: &Circuit) -> Result<Circuit, ReductionError> {
    if q0.width() != q1.width() {
        return Err(ReductionError::WidthMismatch { left: q0.width(), right: q1.width() });
    }
    let a = q0.width();
    let mut c = Circuit::new(a + 1, q0.outputs().to_vec())?;
    c.push(Gate::H(a))?;
    c.push(Gate::Controlled { control: a, body: q1.gates().to_vec() })?;
    c.push(Gate::X(a))?;
    c.push(Gate::Controlled { control: a, body: q0.gates().to_vec() })?;
    c.push(Gate::X(a))?;
    Ok(c)
}
