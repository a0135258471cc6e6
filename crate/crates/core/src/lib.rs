//! Numerical library for the flat twistor fibration
//! ρ₀ : ℂP^{n+1} \ ℝP^{n+1} → G₂⁺(ℝ^{n+2}), [z] ↦ span⁺(Re z, Im z).
//!
//! The crate decides whether a complex quadric has real points, computes
//! its phase normal form and dual, extracts the section of ρ₀ induced by a
//! real-point-free quadric, tests section images for holomorphy, and
//! verifies the structure equations, curvature, Bianchi identity and gauge
//! transformation laws of the flat model exactly at the Lie-algebra level.
//!
//! Organisation:
//!
//! * [`projective`] — homogeneous coordinates, the real-point locus, ρ₀,
//!   the group-level map λ and fiber coordinates.
//! * [`quadric`] — complex quadrics: smoothness, the pencil-definiteness
//!   real-point decision, phase normal form, dual, restriction.
//! * [`grassmann`] — charts and sampling on G₂⁺(ℝ^{n+2}), β- and
//!   α-surfaces of the flat model.
//! * [`section`] — per-fiber root extraction (quadric → section) and
//!   section families used for testing.
//! * [`holomorphy`] — finite-difference J-invariance residual of section
//!   images.
//! * [`flat`] — exact verification of the flat model's structure
//!   equations, curvature forms, Bianchi identity and gauge formulas.
//! * [`torsion`] — adapted lifts of sections and the ζ̄-coefficient
//!   torsion test.
//! * [`io`] — JSON file formats for quadrics, planes and reports.
//!
//! All operations are pure functions on immutable values; random sampling
//! takes explicit seeds and owns a local generator.

pub mod error;
pub mod flat;
pub mod grassmann;
pub mod holomorphy;
pub mod io;
pub mod linalg;
pub mod projective;
pub mod quadric;
pub mod section;
pub mod sweeps;
pub mod tol;
pub mod torsion;

pub use error::Error;
pub use flat::{AdaptedFormValues, MCBlocks, TracelessMatrix};
pub use grassmann::{AlphaSurface, BetaSurface, PlaneChart};
pub use holomorphy::{HolomorphyReport, SweepSummary};
pub use projective::{OrientedPlane, ProjectivePoint};
pub use quadric::{PencilNormalForm, Quadric};
pub use section::{FrameField, SectionMap, SectionSample};
pub use torsion::TorsionReport;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
