//! Binary and quantum Renyi/Tsallis entropies, a small exact circuit
//! simulator, rank-2 reduction gadgets and numeric certification of the
//! entropy inequalities that connect them.

pub mod circuit;
pub mod entropy;
pub mod inequality;
pub mod reduction;
pub mod estimators;
