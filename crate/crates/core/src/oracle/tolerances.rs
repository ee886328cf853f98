//! Numeric thresholds used by the simulator, in one place.

/// Largest admissible Hilbert-space dimension `q^N`.
pub const DIMENSION_CAP: u64 = 1 << 20;
/// Norm and orthogonality of dense states.
pub const STATE_TOL: f64 = 1e-12;
/// Completeness of generated channels.
pub const CHANNEL_COMPLETENESS_TOL: f64 = 1e-12;
/// Gram eigenvalues at or below this are treated as zero.
pub const PSEUDO_INVERSE_THRESHOLD: f64 = 1e-10;
/// Completeness of constructed recovery channels.
pub const RECOVERY_COMPLETENESS_TOL: f64 = 1e-9;
/// Agreement between exact and dense matrix elements.
pub const CROSSCHECK_TOL: f64 = 1e-9;
/// Recovered fidelity must be at least `1 - FIDELITY_TOL`.
pub const FIDELITY_TOL: f64 = 1e-9;
/// A code counts as measurably broken below `1 - DEGRADED_FIDELITY_GAP`.
pub const DEGRADED_FIDELITY_GAP: f64 = 1e-4;
