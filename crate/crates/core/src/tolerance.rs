//! Numeric conventions shared by every module.

/// Simplex tolerance: probabilities must sum to one within this bound.
pub const TOL_SUM: f64 = 1e-9;

/// Tolerance for algebraic identities between two routes to the same value.
pub const TOL_EQ: f64 = 1e-12;
