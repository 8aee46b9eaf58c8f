//! Numerical tolerances used across the engine.
//!
//! Everything that compares floating-point values against a threshold reads
//! it from here, so test expectations and runtime checks stay in sync.

/// Max |m_jk - conj(m_kj)| for a valid density matrix.
pub const DENSITY_HERMITIAN: f64 = 1e-12;

/// Max |Tr(rho) - 1| for a valid density matrix.
pub const DENSITY_TRACE: f64 = 1e-12;

/// Smallest admissible eigenvalue of a density matrix.
pub const DENSITY_MIN_EIGENVALUE: f64 = -1e-10;

/// Hermiticity required before eigenvalues are computed.
pub const EIGEN_HERMITIAN_PRECONDITION: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Max |U^dag U - I| accepted when conjugating a state by player unitaries.
pub const UNITARY: f64 = 1e-10;

/// Imaginary parts of payoff traces above this are an error; below, discarded.
pub const PAYOFF_IMAGINARY: f64 = 1e-8;

/// Looser validation applied to master-equation integrator output.
pub const INTEGRATOR_VALIDATION: f64 = 1e-8;

/// Default RK4 step in units of gamma * t.
pub const DEFAULT_RK4_STEP: f64 = 1e-4;

/// Default payoff slack when deciding whether a deviation is profitable.
pub const DEFAULT_NE: f64 = 1e-9;

/// Default width of the final bisection bracket on mu.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;

/// Mixed-strategy probabilities must sum to one within this.
pub const PROBABILITY_SUM: f64 = 1e-12;

/// A grid point only replaces the incumbent best response if it is better by
/// more than this, so ties resolve to the earliest point in grid order.
pub const BEST_RESPONSE_TIE: f64 = 1e-12;

/// How close delta must be to 0 or pi/2 for the specialised closed forms to
/// be reported alongside the trace pipeline.
pub const CLOSED_FORM_APPLICABILITY: f64 = 1e-6;
