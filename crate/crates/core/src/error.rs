use thiserror::Error;

/// Errors surfaced by fallible library operations.
///
/// Structural misuse (mixing truncation orders, out-of-range row access,
/// integrality violations) panics instead: those indicate bugs in the caller
/// or in the arithmetic itself, not bad input.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("cannot invert a series whose constant term is zero")]
    ZeroConstantTerm,

    #[error("factor 1/(1 - z^{z_exp} q^{q_exp}) has no q-adic expansion; the q-exponent must be >= 1")]
    NonConvergentFactor { z_exp: i64, q_exp: usize },

    #[error("brute-force triple enumeration is limited to nmax <= {limit}, got {got}")]
    BruteForceLimit { limit: usize, got: usize },

    #[error("invalid transform parameter {name} = {value}: must be a nonzero rational other than 1")]
    InvalidRho { name: &'static str, value: String },

    #[error("{0}")]
    InvalidInput(String),
}
