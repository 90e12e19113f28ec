//! Numerical tolerances shared across the crate.

/// Normalization and orthogonality checks on constructed states.
pub const NORM_TOL: f64 = 1e-9;

/// Pairwise overlap below which two states count as orthogonal.
pub const ORTHO_TOL: f64 = 1e-9;

/// Residual norm below which a basis-completion candidate is discarded.
pub const COMPLETION_CUTOFF: f64 = 1e-9;

/// Conjugate-symmetry check for Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues with magnitude below this are treated as zero when taking
/// inverse square roots.
pub const SUPPORT_CUTOFF: f64 = 1e-10;
