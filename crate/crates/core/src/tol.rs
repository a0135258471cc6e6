//! Default numerical tolerances.
//!
//! Every threshold used by the library is named here so that the CLI can
//! expose a single override surface (`--tol name=value`). Values are
//! relative unless stated otherwise.

/// Real-point rank test: a point is real when the second singular value of
/// the 2×(n+2) matrix (Re z; Im z) is below `EPS_RANK` times the first.
/// Points near ℝP^{n+1} are numerically ambiguous and must fail loudly.
pub const EPS_RANK: f64 = 1e-9;

/// Smoothness threshold: a quadric is degenerate when |det A| is below
/// `EPS_DET · ‖A‖_F^{n+2}`.
pub const EPS_DET: f64 = 1e-10;

/// Pencil definiteness: "no real points" requires a pencil member with
/// λ_min above `EPS_DEF · ‖A‖_F`.
pub const EPS_DEF: f64 = 1e-8;

/// Fiber-root boundary: a root (α:β) with |Im(ᾱβ)|/(|α|²+|β|²) below this
/// sits on the real circle within roundoff and is rejected.
pub const EPS_ROOT: f64 = 1e-9;

/// Default finite-difference step for charts, holomorphy residuals and
/// adapted lifts. One Richardson pass is applied on top.
pub const FD_STEP: f64 = 1e-5;

/// Relative on-quadric residual allowed for section samples.
pub const EPS_ON_QUADRIC: f64 = 1e-10;

/// Oriented-plane equality: projector Frobenius distance.
pub const EPS_PLANE: f64 = 1e-10;

/// Projective-point equality on canonical representatives.
pub const EPS_POINT: f64 = 1e-9;

/// Holomorphy / torsion verdict threshold: residuals below this count as
/// holomorphic (torsion-free).
pub const TOL_HOLOMORPHIC: f64 = 1e-5;

/// Residuals above this certify a broken (perturbed) section.
pub const TOL_PERTURBED: f64 = 1e-4;

/// Normal-form reconstruction residual ‖BᵀAB − s·diag(e^{ip_k})‖/‖A‖.
pub const TOL_NORMAL_FORM: f64 = 1e-8;

/// Exact Lie-algebra identities must close to this (scaled) residual.
pub const TOL_FLAT_IDENTITY: f64 = 1e-10;

/// Condition-number ceiling for the torsion expansion solve.
pub const MAX_EXPANSION_COND: f64 = 1e8;

/// Phases within this distance of π wrap to 0 before sorting
/// (p_k < π is an open condition).
pub const PHASE_WRAP: f64 = 1e-10;
