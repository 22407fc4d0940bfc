use nalgebra::DMatrix;
use num_complex::Complex64;

use super::CircuitError;

const NORM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;
const NEG_EIGEN_TOL: f64 = 1e-9;

/// Normalized amplitude vector of length 2^width.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    width: usize,
}

impl StateVector {
    /// |0...0> on `width` wires.
    pub fn zero(width: usize) -> Self {
        Self::basis(width, 0)
    }

    pub fn basis(width: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { amps, width }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, CircuitError> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(CircuitError::BadState(format!("length {len} is not a power of two")));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(CircuitError::BadState(format!("norm {norm} is not 1")));
        }
        Ok(StateVector { amps, width: len.trailing_zeros() as usize })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self, CircuitError> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(CircuitError::BadState("cannot normalize a zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::from_amplitudes(amps)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Born probability that `wire` reads `bit`.
    pub fn wire_probability(&self, wire: usize, bit: bool) -> f64 {
        let mask = 1usize << (self.width - 1 - wire);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & mask != 0) == bit)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Tensor product; `self` occupies the leading wires.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { amps, width: self.width + other.width }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self, CircuitError> {
        let dim = m.nrows();
        if dim == 0 || m.ncols() != dim || !dim.is_power_of_two() {
            return Err(CircuitError::BadDensity(format!("shape {}x{}", m.nrows(), m.ncols())));
        }
        let dev = hermitian_deviation(&m);
        if !(dev <= HERMITIAN_TOL) {
            return Err(CircuitError::NotHermitian(dev));
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= TRACE_TOL) {
            return Err(CircuitError::BadDensity(format!("trace {} is not 1", tr.re)));
        }
        let min = raw_eigenvalues(&m).into_iter().fold(f64::INFINITY, f64::min);
        if !(min >= -NEG_EIGEN_TOL) {
            return Err(CircuitError::BadDensity(format!("eigenvalue {min:e} is negative")));
        }
        Ok(DensityMatrix { m })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_trusted(m: DMatrix<Complex64>) -> Self {
        DensityMatrix { m }
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        DensityMatrix { m: &v * v.adjoint() }
    }

    /// I / 2^n.
    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        DensityMatrix { m: DMatrix::from_diagonal_element(dim, dim, w) }
    }

    /// Convex combination with nonnegative weights summing to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self, CircuitError> {
        let first = parts.first().ok_or_else(|| CircuitError::BadDensity("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut acc = DMatrix::zeros(dim, dim);
        let mut total = 0.0;
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(CircuitError::StateMismatch { left: dim, right: rho.dim() });
            }
            if !(*w >= 0.0) {
                return Err(CircuitError::BadDensity(format!("negative weight {w}")));
            }
            acc += &rho.m * Complex64::new(*w, 0.0);
            total += w;
        }
        if !((total - 1.0).abs() <= TRACE_TOL) {
            return Err(CircuitError::BadDensity(format!("weights sum to {total}")));
        }
        Ok(DensityMatrix { m: acc })
    }

    /// (rho0 + rho1) / 2.
    pub fn average(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self, CircuitError> {
        Self::mixture(&[(0.5, a), (0.5, b)])
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { m: self.m.kronecker(&other.m) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Re Tr(self * other).
    pub fn trace_product(&self, other: &DensityMatrix) -> Result<f64, CircuitError> {
        if self.dim() != other.dim() {
            return Err(CircuitError::StateMismatch { left: self.dim(), right: other.dim() });
        }
        // Tr(AB) = sum_ij A_ij B_ji
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += self.m[(i, j)] * other.m[(j, i)];
            }
        }
        Ok(acc.re)
    }

    pub fn spectrum(&self) -> Vec<f64> {
        clean_spectrum(raw_eigenvalues(&self.m))
    }
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
        }
    }
    worst
}

pub(crate) fn raw_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 1 {
        return vec![m[(0, 0)].re];
    }
    m.clone().symmetric_eigenvalues().iter().copied().collect()
}

/// Sort descending, zero eigensolver noise and tiny negatives, renormalize.
/// Noise-level eigenvalues would otherwise dominate sub-unit orders.
pub(crate) fn clean_spectrum(mut ev: Vec<f64>) -> Vec<f64> {
    let floor = 4.0 * f64::EPSILON * ev.len() as f64;
    for v in &mut ev {
        if (*v < 0.0 && *v >= -NEG_EIGEN_TOL) || v.abs() <= floor {
            *v = 0.0;
        }
    }
    ev.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = ev.iter().sum();
    if sum > 0.0 {
        for v in &mut ev {
            *v /= sum;
        }
    }
    ev
}

/// Eigenvalues of a Hermitian matrix, sorted descending, with eigenvalues in
/// [-1e-9, 0) clamped to zero and the list renormalized to sum to one.
pub fn spectrum(m: &DMatrix<Complex64>) -> Result<Vec<f64>, CircuitError> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(CircuitError::BadDensity(format!("shape {}x{}", m.nrows(), m.ncols())));
    }
    let dev = hermitian_deviation(m);
    if !(dev <= HERMITIAN_TOL) {
        return Err(CircuitError::NotHermitian(dev));
    }
    Ok(clean_spectrum(raw_eigenvalues(m)))
}
