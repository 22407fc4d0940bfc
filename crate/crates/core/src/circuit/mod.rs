//! Gate-list circuits over qubit wires and an exact dense simulator.
//!
//! Wires are big-endian: wire 0 is the most significant bit of an amplitude
//! index. Controlled blocks and adjoint blocks are first-class gates whose
//! bodies address the same wires as the enclosing circuit.

mod sim;
mod state;
mod text;

use num_complex::Complex64;
use thiserror::Error;

pub use sim::{output_spectrum, overlap, partial_trace, reduced_state, simulate};
pub use state::{spectrum, DensityMatrix, StateVector};
pub use text::{emit_circuit, parse_circuit};

/// Widest circuit accepted by pure-state simulation.
pub const MAX_PURE_WIDTH: usize = 24;
/// Widest circuit accepted by density-matrix operations.
pub const MAX_DENSITY_WIDTH: usize = 14;

const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("gate {gate}: wire {wire} is outside width {width}")]
    WireOutOfRange { gate: usize, wire: usize, width: usize },
    #[error("gate {gate}: wires are not distinct")]
    RepeatedWire { gate: usize },
    #[error("gate {gate}: payload is not unitary (max deviation {deviation:e})")]
    NotUnitary { gate: usize, deviation: f64 },
    #[error("gate {gate}: circuit has width {width} but the state has {found} amplitudes")]
    DimensionMismatch { gate: usize, width: usize, found: usize },
    #[error("state dimensions differ: {left} vs {right}")]
    StateMismatch { left: usize, right: usize },
    #[error("output wire list invalid: {0}")]
    BadOutputs(String),
    #[error("width {width} exceeds the cap of {cap} for this operation")]
    TooWide { width: usize, cap: usize },
    #[error("amplitude vector: {0}")]
    BadState(String),
    #[error("density matrix: {0}")]
    BadDensity(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot { control: usize, target: usize },
    /// Rotation exp(-i theta Y / 2).
    Ry { theta: f64, target: usize },
    Unitary { matrix: Matrix2, target: usize },
    /// Body applied only where `control` reads 1.
    Controlled { control: usize, body: Vec<Gate> },
    /// Inverse of the body.
    Adjoint(Vec<Gate>),
}

impl Gate {
    pub fn adjoint(&self) -> Gate {
        match self {
            Gate::H(_) | Gate::X(_) | Gate::Cnot { .. } => self.clone(),
            Gate::Ry { theta, target } => Gate::Ry { theta: -theta, target: *target },
            Gate::Unitary { matrix, target } => Gate::Unitary { matrix: dagger(matrix), target: *target },
            Gate::Controlled { control, body } => Gate::Controlled { control: *control, body: adjoint_gates(body) },
            Gate::Adjoint(body) => Gate::Adjoint(adjoint_gates(body)),
        }
    }

    /// Every wire the gate reads or writes.
    pub fn wires(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_wires(&mut out);
        out
    }

    fn collect_wires(&self, out: &mut Vec<usize>) {
        match self {
            Gate::H(w) | Gate::X(w) => out.push(*w),
            Gate::Ry { target, .. } | Gate::Unitary { target, .. } => out.push(*target),
            Gate::Cnot { control, target } => {
                out.push(*control);
                out.push(*target);
            }
            Gate::Controlled { control, body } => {
                out.push(*control);
                for g in body {
                    g.collect_wires(out);
                }
            }
            Gate::Adjoint(body) => {
                for g in body {
                    g.collect_wires(out);
                }
            }
        }
    }

    fn validate(&self, index: usize, width: usize) -> Result<(), CircuitError> {
        let in_range = |w: usize| {
            if w < width {
                Ok(())
            } else {
                Err(CircuitError::WireOutOfRange { gate: index, wire: w, width })
            }
        };
        match self {
            Gate::H(w) | Gate::X(w) => in_range(*w),
            Gate::Ry { theta, target } => {
                if !theta.is_finite() {
                    return Err(CircuitError::NotUnitary { gate: index, deviation: f64::INFINITY });
                }
                in_range(*target)
            }
            Gate::Unitary { matrix, target } => {
                let dev = unitary_deviation(matrix);
                if !(dev <= UNITARY_TOL) {
                    return Err(CircuitError::NotUnitary { gate: index, deviation: dev });
                }
                in_range(*target)
            }
            Gate::Cnot { control, target } => {
                in_range(*control)?;
                in_range(*target)?;
                if control == target {
                    return Err(CircuitError::RepeatedWire { gate: index });
                }
                Ok(())
            }
            Gate::Controlled { control, body } => {
                in_range(*control)?;
                for g in body {
                    g.validate(index, width)?;
                    if g.wires().contains(control) {
                        return Err(CircuitError::RepeatedWire { gate: index });
                    }
                }
                Ok(())
            }
            Gate::Adjoint(body) => body.iter().try_for_each(|g| g.validate(index, width)),
        }
    }
}

pub fn adjoint_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::adjoint).collect()
}

fn dagger(m: &Matrix2) -> Matrix2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

fn unitary_deviation(m: &Matrix2) -> f64 {
    let d = dagger(m);
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let p = d[i][0] * m[0][j] + d[i][1] * m[1][j];
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p - Complex64::new(target, 0.0)).norm());
        }
    }
    if worst.is_nan() {
        f64::INFINITY
    } else {
        worst
    }
}

/// Gate list acting on `width` wires, with a designated list of output wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    outputs: Vec<usize>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize, outputs: Vec<usize>) -> Result<Self, CircuitError> {
        if outputs.len() > width {
            return Err(CircuitError::BadOutputs(format!(
                "{} outputs on {} wires",
                outputs.len(),
                width
            )));
        }
        for (i, &o) in outputs.iter().enumerate() {
            if o >= width {
                return Err(CircuitError::BadOutputs(format!("wire {o} outside width {width}")));
            }
            if outputs[..i].contains(&o) {
                return Err(CircuitError::BadOutputs(format!("wire {o} listed twice")));
            }
        }
        Ok(Circuit { width, outputs, gates: Vec::new() })
    }

    /// Circuit whose outputs are all wires in order.
    pub fn all_outputs(width: usize) -> Self {
        Circuit { width, outputs: (0..width).collect(), gates: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self, CircuitError> {
        gate.validate(self.gates.len(), self.width)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self, CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Same wires and outputs, gates inverted.
    pub fn adjoint(&self) -> Circuit {
        Circuit { width: self.width, outputs: self.outputs.clone(), gates: adjoint_gates(&self.gates) }
    }

    /// Copy of this circuit on a wider register; new wires are appended last.
    pub fn widened(&self, width: usize, outputs: Vec<usize>) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(width.max(self.width), outputs)?;
        c.extend(self.gates.iter().cloned())?;
        Ok(c)
    }

    pub fn gate_count(&self) -> usize {
        fn count(gs: &[Gate]) -> usize {
            gs.iter()
                .map(|g| match g {
                    Gate::Controlled { body, .. } | Gate::Adjoint(body) => 1 + count(body),
                    _ => 1,
                })
                .sum()
        }
        count(&self.gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_wire() {
        let mut c = Circuit::all_outputs(2);
        let err = c.push(Gate::H(2)).unwrap_err();
        assert_eq!(err, CircuitError::WireOutOfRange { gate: 0, wire: 2, width: 2 });
    }

    #[test]
    fn rejects_cnot_on_one_wire() {
        let mut c = Circuit::all_outputs(2);
        assert!(matches!(c.push(Gate::Cnot { control: 1, target: 1 }), Err(CircuitError::RepeatedWire { .. })));
    }

    #[test]
    fn rejects_control_inside_body() {
        let mut c = Circuit::all_outputs(3);
        let g = Gate::Controlled { control: 0, body: vec![Gate::X(0)] };
        assert!(c.push(g).is_err());
    }

    #[test]
    fn rejects_non_unitary_payload() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut c = Circuit::all_outputs(1);
        let g = Gate::Unitary { matrix: [[one, one], [zero, one]], target: 0 };
        assert!(matches!(c.push(g), Err(CircuitError::NotUnitary { .. })));
    }

    #[test]
    fn outputs_must_fit() {
        assert!(Circuit::new(2, vec![0, 1, 2]).is_err());
        assert!(Circuit::new(2, vec![1, 1]).is_err());
        assert!(Circuit::new(3, vec![2, 0]).is_ok());
    }

    #[test]
    fn adjoint_reverses_and_negates() {
        let mut c = Circuit::all_outputs(2);
        c.push(Gate::H(0)).unwrap().push(Gate::Ry { theta: 0.3, target: 1 }).unwrap();
        let a = c.adjoint();
        assert_eq!(a.gates(), &[Gate::Ry { theta: -0.3, target: 1 }, Gate::H(0)]);
    }
}
