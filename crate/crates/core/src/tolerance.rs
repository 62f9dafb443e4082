//! Numerical tolerances shared by every module.
//!
//! All checks in the crate go through these constants so the error budget
//! can be read (and tightened) in one place.

/// Max-abs deviation accepted when validating user-supplied operators
/// (Hermiticity, unit trace).
pub const VALIDATION: f64 = 1e-10;

/// Max-abs deviation for identities that hold exactly in exact arithmetic
/// (reconstruction, unitarity, trace preservation).
pub const EQUALITY: f64 = 1e-12;

/// Eigenvalues in `[PSD_CLAMP, 0)` are treated as rounding noise and clamped
/// to zero; anything below is a genuine positivity violation.
pub const PSD_CLAMP: f64 = -1e-10;

/// Convergence threshold on the off-diagonal Frobenius norm in the Jacobi
/// eigensolver (scaled by the matrix norm when that exceeds one).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Slack on closed physical bounds (Bloch ball radius, coherence bound).
pub const BOUND_SLACK: f64 = 1e-12;
