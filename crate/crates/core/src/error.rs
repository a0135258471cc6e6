//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps these onto its exit-code contract: parse failures → 1,
/// degenerate inputs → 2, correspondence violations → 3, identity
/// failures → 4.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A vector or matrix has the wrong dimensions for the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A projective point lies on ℝP^{n+1}, where the twistor projection
    /// is undefined.
    #[error("point is real (Re z, Im z linearly dependent); rho0 undefined")]
    RealPoint,

    /// λ requires an invertible matrix.
    #[error("matrix is singular (|det| = {det:.3e} below tolerance)")]
    SingularMatrix { det: f64 },

    /// A point does not lie on the fiber over the given plane.
    #[error("point does not project to the given oriented plane: {0}")]
    FiberMismatch(String),

    /// The quadric is degenerate (|det| below the smoothness threshold).
    #[error("degenerate quadric: relative |det| = {rel_det:.3e}")]
    DegenerateQuadric { rel_det: f64 },

    /// The quadric meets ℝP^{n+1}; the operation requires a real-point-free
    /// quadric.
    #[error("quadric has real points: {0}")]
    HasRealPoints(String),

    /// The pencil-definiteness criterion needs ambient dimension ≥ 3.
    #[error("ambient dimension {dim} too small; pencil criterion needs n+2 >= 3")]
    AmbientTooSmall { dim: usize },

    /// Restriction basis has linearly dependent columns.
    #[error("rank-deficient restriction basis: sigma_min/sigma_max = {ratio:.3e}")]
    RankDeficientBasis { ratio: f64 },

    /// Chart evaluated outside its injectivity radius.
    #[error("chart step |t| = {t} exceeds scale {scale}")]
    StepTooLarge { t: f64, scale: f64 },

    /// β-surface construction needs a nonzero covector.
    #[error("zero covector does not determine a beta surface")]
    ZeroCovector,

    /// α-surface construction needs a direction outside the plane.
    #[error("vector lies in the plane; cannot span a 3-space")]
    VectorInPlane,

    /// The fiber quadratic has no root, or more than one root, in the open
    /// upper half-plane — the quadric violates the section correspondence.
    #[error("fiber over plane carries {upper} upper-half root(s) instead of 1")]
    FiberMultiplicity { upper: usize },

    /// Finite-difference tangent vectors do not span a 2n-dimensional space.
    #[error("section not immersive: tangent rank {rank} < {expected}")]
    RankDeficientTangent { rank: usize, expected: usize },

    /// The ζ-value matrix of the torsion expansion is numerically singular.
    #[error("ill-conditioned zeta expansion: cond = {cond:.3e}")]
    IllConditionedExpansion { cond: f64 },

    /// A file or JSON document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
