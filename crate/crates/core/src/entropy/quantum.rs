use crate::circuit::{overlap, DensityMatrix, StateVector};

use super::{EntropyError, Family, Order};

const SUM_TOL: f64 = 1e-9;
/// Eigenvalues above this count towards the numerical rank.
pub const RANK_THRESHOLD: f64 = 1e-9;

fn validate(spectrum: &[f64]) -> Result<(), EntropyError> {
    if spectrum.is_empty() {
        return Err(EntropyError::BadSpectrum("empty".into()));
    }
    if let Some(v) = spectrum.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
        return Err(EntropyError::BadSpectrum(format!("entry {v} is not a nonnegative real")));
    }
    let sum: f64 = spectrum.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(EntropyError::BadSpectrum(format!("sums to {sum}")));
    }
    Ok(())
}

/// sum over positive eigenvalues of lambda^q.
pub fn trace_power(spectrum: &[f64], q: f64) -> f64 {
    spectrum.iter().filter(|l| **l > 0.0).map(|l| l.powf(q)).sum()
}

/// Tr(rho^r) - 1 computed as sum lambda (lambda^{r-1} - 1).
fn trace_power_minus_one(spectrum: &[f64], r: f64) -> f64 {
    spectrum.iter().filter(|l| **l > 0.0).map(|l| l * ((r - 1.0) * l.ln()).exp_m1()).sum()
}

/// Tsallis or Renyi entropy of a density matrix given its eigenvalues.
pub fn quantum_entropy(spectrum: &[f64], order: Order, family: Family) -> Result<f64, EntropyError> {
    validate(spectrum)?;
    let von_neumann = || -> f64 { spectrum.iter().filter(|l| **l > 0.0).map(|l| -l * l.ln()).sum() };
    match (order, family) {
        (Order::Zero, _) => {
            let rank = spectrum.iter().filter(|l| **l > RANK_THRESHOLD).count() as f64;
            Ok(match family {
                Family::Tsallis => rank - 1.0,
                Family::Renyi => rank.ln(),
            })
        }
        (Order::One, _) => Ok(von_neumann()),
        (Order::Infinity, Family::Tsallis) => Err(EntropyError::TsallisInfinity),
        (Order::Infinity, Family::Renyi) => {
            let max = spectrum.iter().copied().fold(0.0, f64::max);
            Ok(-max.ln())
        }
        (Order::Real(r), Family::Tsallis) => {
            let q = r.get();
            if (q - 1.0).abs() < 0.5 {
                Ok(-trace_power_minus_one(spectrum, q) / (q - 1.0))
            } else {
                Ok((1.0 - trace_power(spectrum, q)) / (q - 1.0))
            }
        }
        (Order::Real(r), Family::Renyi) => {
            let a = r.get();
            if (a - 1.0).abs() < 0.5 {
                Ok(trace_power_minus_one(spectrum, a).ln_1p() / (1.0 - a))
            } else {
                let max = spectrum.iter().copied().fold(0.0, f64::max);
                let rel: f64 = spectrum.iter().filter(|l| **l > 0.0).map(|l| (l / max).powf(a)).sum();
                Ok((a * max.ln() + rel.ln()) / (1.0 - a))
            }
        }
    }
}

/// Uniform mixture of two pure states together with their overlap magnitude.
#[derive(Debug, Clone)]
pub struct Rank2Mixture {
    psi0: StateVector,
    psi1: StateVector,
    overlap_mag: f64,
}

impl Rank2Mixture {
    pub fn new(psi0: StateVector, psi1: StateVector) -> Result<Self, EntropyError> {
        let overlap_mag = overlap(&psi0, &psi1)?.norm().min(1.0);
        Ok(Rank2Mixture { psi0, psi1, overlap_mag })
    }

    pub fn overlap_mag(&self) -> f64 {
        self.overlap_mag
    }

    pub fn states(&self) -> (&StateVector, &StateVector) {
        (&self.psi0, &self.psi1)
    }

    /// Nonzero eigenvalues {(1+v)/2, (1-v)/2}.
    pub fn spectrum(&self) -> [f64; 2] {
        let v = self.overlap_mag;
        [(1.0 + v) / 2.0, (1.0 - v) / 2.0]
    }

    pub fn density(&self) -> DensityMatrix {
        let a = DensityMatrix::from_pure(&self.psi0);
        let b = DensityMatrix::from_pure(&self.psi1);
        DensityMatrix::average(&a, &b).expect("pure states of equal width")
    }
}

/// ((1-v)^q + (1+v)^q) / 2^q.
pub fn rank2_trace_power(overlap_mag: f64, q: f64) -> Result<f64, EntropyError> {
    if !(-1e-12..=1.0 + 1e-12).contains(&overlap_mag) {
        return Err(EntropyError::OutOfRange(overlap_mag));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(EntropyError::BadOrder(format!("{q}")));
    }
    let v = overlap_mag.clamp(0.0, 1.0);
    Ok(((1.0 - v).powf(q) + (1.0 + v).powf(q)) / 2f64.powf(q))
}

/// Which entropy a Jensen-type divergence is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceFamily {
    Tsallis,
    Renyi,
    /// von Neumann entropy; the order argument is ignored.
    ShannonJs,
}

/// S((rho0 + rho1)/2) - (S(rho0) + S(rho1))/2.
pub fn jensen_divergence(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    order: Order,
    family: DivergenceFamily,
) -> Result<f64, EntropyError> {
    let avg = DensityMatrix::average(rho0, rho1)?;
    let (order, family) = match family {
        DivergenceFamily::Tsallis => (order, Family::Tsallis),
        DivergenceFamily::Renyi => (order, Family::Renyi),
        DivergenceFamily::ShannonJs => (Order::One, Family::Renyi),
    };
    let s = |rho: &DensityMatrix| quantum_entropy(&rho.spectrum(), order, family);
    Ok(s(&avg)? - (s(rho0)? + s(rho1)?) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{renyi_binary, tsallis_binary};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    fn o(r: f64) -> Order {
        Order::of(r)
    }

    fn qubit(a: f64, b: f64) -> StateVector {
        StateVector::from_amplitudes(vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)]).unwrap()
    }

    #[test]
    fn pure_spectrum_has_zero_entropy() {
        for fam in [Family::Tsallis, Family::Renyi] {
            for ord in [Order::Zero, Order::One, o(0.5), o(2.0), o(7.0)] {
                assert_eq!(quantum_entropy(&[1.0, 0.0], ord, fam).unwrap(), 0.0);
            }
        }
        assert_eq!(quantum_entropy(&[1.0], Order::Infinity, Family::Renyi).unwrap(), 0.0);
    }

    #[test]
    fn maximally_mixed_qubit_renyi_is_ln2() {
        for ord in [Order::Zero, Order::One, o(0.3), o(2.0), o(40.0), Order::Infinity] {
            assert_abs_diff_eq!(quantum_entropy(&[0.5, 0.5], ord, Family::Renyi).unwrap(), LN_2, epsilon = 1e-14);
        }
    }

    #[test]
    fn tsallis_two_on_08_02() {
        assert_abs_diff_eq!(quantum_entropy(&[0.8, 0.2], o(2.0), Family::Tsallis).unwrap(), 0.32, epsilon = 1e-15);
        // same as (1 - v^2)/2 at v = 0.6
        assert_abs_diff_eq!((1.0 - 0.36) / 2.0, 0.32, epsilon = 1e-15);
    }

    #[test]
    fn order_zero_counts_rank() {
        let s = [0.5, 0.5 - 1e-10, 1e-10];
        assert_eq!(quantum_entropy(&s, Order::Zero, Family::Tsallis).unwrap(), 1.0);
        assert_abs_diff_eq!(quantum_entropy(&s, Order::Zero, Family::Renyi).unwrap(), LN_2);
    }

    #[test]
    fn rejects_bad_spectra_and_tsallis_infinity() {
        assert!(quantum_entropy(&[0.5, 0.4], o(2.0), Family::Renyi).is_err());
        assert!(quantum_entropy(&[1.1, -0.1], o(2.0), Family::Renyi).is_err());
        assert!(quantum_entropy(&[1.0], Order::Infinity, Family::Tsallis).is_err());
    }

    #[test]
    fn rank2_trace_power_values() {
        assert_abs_diff_eq!(rank2_trace_power(0.0, 2.0).unwrap(), 0.5);
        assert_abs_diff_eq!(rank2_trace_power(1.0, 3.3).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rank2_trace_power(0.6, 2.0).unwrap(), 0.68, epsilon = 1e-15);
        assert!(rank2_trace_power(1.5, 2.0).is_err());
        assert!(rank2_trace_power(0.5, 0.0).is_err());
    }

    #[test]
    fn mixture_spectrum_matches_closed_form() {
        let m = Rank2Mixture::new(qubit(1.0, 0.0), qubit(0.6, 0.8)).unwrap();
        assert_abs_diff_eq!(m.overlap_mag(), 0.6, epsilon = 1e-15);
        let s = m.density().spectrum();
        assert_abs_diff_eq!(s[0], m.spectrum()[0], epsilon = 1e-12);
        assert_abs_diff_eq!(s[1], m.spectrum()[1], epsilon = 1e-12);
        let tp = trace_power(&s, 2.5);
        assert_abs_diff_eq!(tp, rank2_trace_power(0.6, 2.5).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn divergence_examples() {
        let rho = DensityMatrix::from_pure(&qubit(0.6, 0.8));
        assert_abs_diff_eq!(jensen_divergence(&rho, &rho, Order::One, DivergenceFamily::ShannonJs).unwrap(), 0.0, epsilon = 1e-12);
        let a = DensityMatrix::from_pure(&qubit(1.0, 0.0));
        let t = jensen_divergence(&a, &rho, o(2.0), DivergenceFamily::Tsallis).unwrap();
        assert_abs_diff_eq!(t, 0.32, epsilon = 1e-12);
        assert_abs_diff_eq!(t, tsallis_binary(0.2, o(2.0)).unwrap(), epsilon = 1e-12);
        let r = jensen_divergence(&a, &rho, o(2.0), DivergenceFamily::Renyi).unwrap();
        assert_abs_diff_eq!(r, LN_2 - 1.36f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(r, renyi_binary(0.2, o(2.0)).unwrap(), epsilon = 1e-12);
    }
}
