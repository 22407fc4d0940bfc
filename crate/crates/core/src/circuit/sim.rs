use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::{clean_spectrum, raw_eigenvalues};
use super::{adjoint_gates, Circuit, CircuitError, DensityMatrix, Gate, Matrix2, StateVector};
use super::{MAX_DENSITY_WIDTH, MAX_PURE_WIDTH};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn h_matrix() -> Matrix2 {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

fn ry_matrix(theta: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
}

/// Apply `u` to wire `bit` on every index where all `ctrl` bits are set.
fn apply_1q(amps: &mut [Complex64], bit: usize, ctrl: usize, u: &Matrix2) {
    for i in 0..amps.len() {
        if i & bit != 0 || i & ctrl != ctrl {
            continue;
        }
        let j = i | bit;
        let (a, b) = (amps[i], amps[j]);
        amps[i] = u[0][0] * a + u[0][1] * b;
        amps[j] = u[1][0] * a + u[1][1] * b;
    }
}

fn apply_x(amps: &mut [Complex64], bit: usize, ctrl: usize) {
    for i in 0..amps.len() {
        if i & bit == 0 && i & ctrl == ctrl {
            amps.swap(i, i | bit);
        }
    }
}

fn apply_gates(gates: &[Gate], amps: &mut [Complex64], width: usize, ctrl: usize) {
    let bit = |w: usize| 1usize << (width - 1 - w);
    for g in gates {
        match g {
            Gate::H(w) => apply_1q(amps, bit(*w), ctrl, &h_matrix()),
            Gate::X(w) => apply_x(amps, bit(*w), ctrl),
            Gate::Cnot { control, target } => apply_x(amps, bit(*target), ctrl | bit(*control)),
            Gate::Ry { theta, target } => apply_1q(amps, bit(*target), ctrl, &ry_matrix(*theta)),
            Gate::Unitary { matrix, target } => apply_1q(amps, bit(*target), ctrl, matrix),
            Gate::Controlled { control, body } => apply_gates(body, amps, width, ctrl | bit(*control)),
            Gate::Adjoint(body) => apply_gates(&adjoint_gates(body), amps, width, ctrl),
        }
    }
}

fn check_wires(circuit: &Circuit, dim: usize) -> Result<(), CircuitError> {
    let width = circuit.width();
    if dim != 1usize << width {
        return Err(CircuitError::DimensionMismatch { gate: 0, width, found: dim });
    }
    for (i, g) in circuit.gates().iter().enumerate() {
        if let Some(&w) = g.wires().iter().find(|&&w| w >= width) {
            return Err(CircuitError::WireOutOfRange { gate: i, wire: w, width });
        }
    }
    Ok(())
}

/// U_circuit |input>.
pub fn simulate(circuit: &Circuit, input: &StateVector) -> Result<StateVector, CircuitError> {
    if circuit.width() > MAX_PURE_WIDTH {
        return Err(CircuitError::TooWide { width: circuit.width(), cap: MAX_PURE_WIDTH });
    }
    check_wires(circuit, input.dim())?;
    let mut out = input.clone();
    apply_gates(circuit.gates(), out.amplitudes_mut(), circuit.width(), 0);
    Ok(out)
}

/// <psi0|psi1>.
pub fn overlap(psi0: &StateVector, psi1: &StateVector) -> Result<Complex64, CircuitError> {
    if psi0.dim() != psi1.dim() {
        return Err(CircuitError::StateMismatch { left: psi0.dim(), right: psi1.dim() });
    }
    Ok(psi0.amplitudes().iter().zip(psi1.amplitudes()).map(|(a, b)| a.conj() * b).sum())
}

/// Reshape |psi> into a (kept x traced) matrix M, so that rho_kept = M M^dagger.
fn split_matrix(psi: &StateVector, keep: &[usize]) -> DMatrix<Complex64> {
    let width = psi.width();
    let rest: Vec<usize> = (0..width).filter(|w| !keep.contains(w)).collect();
    let (dk, dr) = (1usize << keep.len(), 1usize << rest.len());
    let mut m = DMatrix::zeros(dk, dr);
    let gather = |i: usize, wires: &[usize]| {
        wires.iter().fold(0usize, |acc, &w| (acc << 1) | ((i >> (width - 1 - w)) & 1))
    };
    for (i, a) in psi.amplitudes().iter().enumerate() {
        m[(gather(i, keep), gather(i, &rest))] = *a;
    }
    m
}

fn check_keep(width: usize, keep: &[usize]) -> Result<(), CircuitError> {
    for (i, &k) in keep.iter().enumerate() {
        if k >= width || keep[..i].contains(&k) {
            return Err(CircuitError::BadOutputs(format!("kept wire {k} invalid for width {width}")));
        }
    }
    Ok(())
}

/// Reduced density matrix on `keep` (in the listed order) of a pure state.
pub fn partial_trace(psi: &StateVector, keep: &[usize]) -> Result<DensityMatrix, CircuitError> {
    if psi.width() > MAX_DENSITY_WIDTH {
        return Err(CircuitError::TooWide { width: psi.width(), cap: MAX_DENSITY_WIDTH });
    }
    check_keep(psi.width(), keep)?;
    let m = split_matrix(psi, keep);
    let rho = &m * m.adjoint();
    Ok(DensityMatrix::from_trusted(rho))
}

/// Runs the circuit and traces out every non-output wire.
pub fn reduced_state(circuit: &Circuit, input: &StateVector) -> Result<DensityMatrix, CircuitError> {
    if circuit.width() > MAX_DENSITY_WIDTH {
        return Err(CircuitError::TooWide { width: circuit.width(), cap: MAX_DENSITY_WIDTH });
    }
    if circuit.outputs().is_empty() {
        return Err(CircuitError::BadOutputs("no output wires declared".into()));
    }
    let psi = simulate(circuit, input)?;
    partial_trace(&psi, circuit.outputs())
}

/// Spectrum of the reduced state on `keep`, computed on whichever side of the
/// bipartition is smaller. Both marginals of a pure state share their nonzero
/// eigenvalues, so this is exact and avoids diagonalizing 2^n x 2^n matrices
/// when only a few wires are traced out. Padded with zeros to 2^|keep|.
pub fn output_spectrum(psi: &StateVector, keep: &[usize]) -> Result<Vec<f64>, CircuitError> {
    check_keep(psi.width(), keep)?;
    let m = split_matrix(psi, keep);
    let small = if m.nrows() <= m.ncols() { &m * m.adjoint() } else { m.adjoint() * &m };
    let mut ev = raw_eigenvalues(&small);
    ev.resize(m.nrows(), 0.0);
    Ok(clean_spectrum(ev))
}
