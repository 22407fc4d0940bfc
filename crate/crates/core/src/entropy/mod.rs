//! Binary and quantum Renyi/Tsallis entropies of every order in [0, inf].

mod binary;
mod quantum;
mod series;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use binary::{min_binary, q_log, renyi_binary, shannon_binary, tsallis_binary, tsallis_half};
pub use quantum::{
    jensen_divergence, quantum_entropy, rank2_trace_power, trace_power, DivergenceFamily, Rank2Mixture, RANK_THRESHOLD,
};
pub use series::{
    binom_identity_sums, gen_binom, gen_binom_sign, rank2_trace_power_series, BinomIdentitySums,
    BinomSeriesConfig, SeriesEstimate, SeriesSum, Sign,
};

use crate::circuit::CircuitError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error("invalid order: {0}")]
    BadOrder(String),
    #[error("argument {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("q-logarithm needs x > 0, got {0}")]
    NonPositive(f64),
    #[error("Tsallis entropy is not defined at order infinity")]
    TsallisInfinity,
    #[error("spectrum invalid: {0}")]
    BadSpectrum(String),
    #[error("series config invalid: {0}")]
    BadConfig(String),
    #[error("series did not reach tolerance after {terms} terms (partial sum {partial})")]
    NotConverged { partial: f64, terms: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Positive finite real order other than one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder(f64);

impl RealOrder {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Entropy order. One and infinity are exact symbols with their own code
/// paths; a real payload never equals 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Zero,
    Real(RealOrder),
    One,
    Infinity,
}

impl Order {
    /// Maps 0, 1 and +inf to their symbols; any other positive finite value
    /// becomes a real order.
    pub fn new(r: f64) -> Result<Order, EntropyError> {
        if r == 0.0 {
            Ok(Order::Zero)
        } else if r == 1.0 {
            Ok(Order::One)
        } else if r == f64::INFINITY {
            Ok(Order::Infinity)
        } else if r.is_finite() && r > 0.0 {
            Ok(Order::Real(RealOrder(r)))
        } else {
            Err(EntropyError::BadOrder(format!("{r}")))
        }
    }

    /// Shorthand for tests and tables of known-good literals.
    pub fn of(r: f64) -> Order {
        Order::new(r).expect("valid order literal")
    }

    /// Numeric value; infinity maps to f64::INFINITY.
    pub fn value(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::Real(r) => r.0,
            Order::One => 1.0,
            Order::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Zero => write!(f, "0"),
            Order::One => write!(f, "1"),
            Order::Infinity => write!(f, "inf"),
            Order::Real(r) => write!(f, "{}", r.0),
        }
    }
}

impl FromStr for Order {
    type Err = EntropyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(Order::Infinity),
            t => {
                let v: f64 = t.parse().map_err(|_| EntropyError::BadOrder(s.to_string()))?;
                if v.is_infinite() {
                    return Err(EntropyError::BadOrder(s.to_string()));
                }
                Order::new(v)
            }
        }
    }
}

/// Entropy family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Tsallis,
    Renyi,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tsallis => "tsallis",
            Family::Renyi => "renyi",
        })
    }
}

impl FromStr for Family {
    type Err = EntropyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tsallis" => Ok(Family::Tsallis),
            "renyi" => Ok(Family::Renyi),
            _ => Err(EntropyError::BadOrder(format!("unknown family `{s}`"))),
        }
    }
}
