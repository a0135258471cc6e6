//! Sections of the disk bundle induced by real-point-free quadrics.
//!
//! Over an oriented plane with frame (u, v), the quadric restricts to the
//! binary form c₀α² + 2c₁αβ + c₂β² with c₀ = uᵀAu, c₁ = uᵀAv, c₂ = vᵀAv.
//! For a smooth quadric without real points this form has two roots on
//! ℂP¹, neither on the real circle Im(ᾱβ) = 0, and exactly one with
//! Im(ᾱβ) > 0; the section value is [αu + βv] at that root. Violations
//! (a boundary root, or zero/two upper roots) are reported as errors
//! rather than patched over — they signal a quadric outside the
//! correspondence.

use crate::error::Error;
use crate::grassmann::random_plane_with;
use crate::linalg::{CVector, RVector};
use crate::projective::{fiber_coordinate, OrientedPlane, ProjectivePoint};
use crate::quadric::Quadric;
use crate::tol;
use crate::Result;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One point of a section: the plane, the section value and its fiber
/// coordinate τ (Im τ > 0).
#[derive(Debug, Clone)]
pub struct SectionSample {
    pub plane: OrientedPlane,
    pub point: ProjectivePoint,
    pub tau: Complex64,
}

/// A map assigning to each oriented plane a point of its ρ₀-fiber.
/// Implementations must be safe for concurrent evaluation.
pub trait SectionMap: Sync {
    fn at(&self, plane: &OrientedPlane) -> Result<ProjectivePoint>;
}

/// Roots of c₀α² + 2c₁αβ + c₂β² = 0 on ℂP¹, as unit (α, β) pairs.
///
/// Solved in the better-conditioned affine branch with the sign-matched
/// discriminant square root, so the root at infinity (c₂ = 0) needs no
/// chart special-casing.
fn binary_quadratic_roots(
    c0: Complex64,
    c1: Complex64,
    c2: Complex64,
) -> Result<[(Complex64, Complex64); 2]> {
    let scale = c0.norm().max(c1.norm()).max(c2.norm());
    if scale < 1e-300 {
        return Err(Error::HasRealPoints(
            "fiber lies entirely inside the quadric".into(),
        ));
    }
    // α β-dominant split: roots (1:0), (0:1)
    if c0.norm().max(c2.norm()) < 1e-15 * scale {
        return Ok([
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        ]);
    }
    // solve a z² + 2b z + c = 0 in the variable of the larger endpoint
    let tau_branch = c2.norm() >= c0.norm();
    let (a, b, c) = if tau_branch {
        (c2, c1, c0) // z = β/α
    } else {
        (c0, c1, c2) // z = α/β
    };
    let disc = b * b - a * c;
    let mut r = disc.sqrt();
    if (b.conj() * r).re < 0.0 {
        r = -r;
    }
    let q = -(b + r);
    let (z1, z2) = if q.norm() > 1e-300 {
        (q / a, c / q)
    } else {
        // b ≈ 0 and disc ≈ -ac: symmetric roots
        let s = (-c / a).sqrt();
        (s, -s)
    };
    let unit = |z: Complex64| -> (Complex64, Complex64) {
        let n = (1.0 + z.norm_sqr()).sqrt();
        if tau_branch {
            (Complex64::new(1.0 / n, 0.0), z / n)
        } else {
            (z / n, Complex64::new(1.0 / n, 0.0))
        }
    };
    Ok([unit(z1), unit(z2)])
}

/// The section value of a quadric over one oriented plane.
pub fn section_at(quadric: &Quadric, plane: &OrientedPlane) -> Result<SectionSample> {
    if quadric.dim() != plane.dim() {
        return Err(Error::DimensionMismatch(
            "quadric and plane live in different ambient spaces".into(),
        ));
    }
    let uc = complexify(plane.u());
    let vc = complexify(plane.v());
    let c0 = quadric.polarize(&uc, &uc)?;
    let c1 = quadric.polarize(&uc, &vc)?;
    let c2 = quadric.polarize(&vc, &vc)?;
    let roots = binary_quadratic_roots(c0, c1, c2)?;
    let mut upper: Option<(Complex64, Complex64)> = None;
    let mut upper_count = 0usize;
    for &(alpha, beta) in roots.iter() {
        let orient = (alpha.conj() * beta).im; // |α|² + |β|² = 1
        if orient.abs() <= tol::EPS_ROOT {
            return Err(Error::HasRealPoints(format!(
                "fiber root on the real circle: |Im(conj(α)β)| = {:.3e}",
                orient.abs()
            )));
        }
        if orient > 0.0 {
            upper_count += 1;
            upper = Some((alpha, beta));
        }
    }
    if upper_count != 1 {
        return Err(Error::FiberMultiplicity { upper: upper_count });
    }
    let (alpha, beta) = upper.expect("exactly one upper root");
    let coords = CVector::from_fn(plane.dim(), |i, _| {
        alpha * plane.u()[i] + beta * plane.v()[i]
    });
    let point = ProjectivePoint::new(coords)?;
    Ok(SectionSample {
        plane: plane.clone(),
        point,
        tau: beta / alpha,
    })
}

/// Apply [`section_at`] at `count` random planes. Deterministic per seed.
pub fn section_sample(quadric: &Quadric, count: usize, seed: u64) -> Result<Vec<SectionSample>> {
    let n = quadric.ambient_n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let plane = random_plane_with(n, &mut rng);
        out.push(section_at(quadric, &plane)?);
    }
    Ok(out)
}

/// Relative on-quadric residual |zᵀAz| / (‖A‖‖z‖²) of a sample.
pub fn on_quadric_residual(quadric: &Quadric, sample: &SectionSample) -> f64 {
    let z = sample.point.coords();
    let val = quadric
        .evaluate(z)
        .expect("sample and quadric dimensions agree");
    let norm_a = crate::linalg::frobenius(quadric.matrix());
    val.norm() / (norm_a * z.norm_squared())
}

fn complexify(x: &RVector) -> CVector {
    CVector::from_fn(x.len(), |i, _| Complex64::new(x[i], 0.0))
}

/// A smooth orthonormal frame field over a chart neighbourhood of an
/// anchor plane: the anchor frame is projected onto nearby planes and
/// re-orthonormalised, then rotated by `twist_rate` times a scalar chart
/// function. Used by the test sections, whose fiber coordinates need a
/// frame choice that does not rotate with the evaluation point.
///
/// The twist matters for the perturbed sections: the anti-holomorphic
/// defect of τ ↦ τ + ε·conj(τ) is proportional to the gauge's rotation
/// covector, and the plain projected gauge has rays through the anchor
/// where that covector vanishes (the perturbation is then first-order
/// invisible). A twist rate of order 1 keeps the defect bounded below
/// across the chart.
#[derive(Debug, Clone)]
pub struct FrameField {
    anchor: OrientedPlane,
    complement: crate::linalg::RMatrix,
    twist_rate: f64,
}

impl FrameField {
    pub fn new(anchor: OrientedPlane) -> Self {
        Self::with_twist(anchor, 0.0)
    }

    /// Field whose frames are additionally rotated by
    /// `rate · s(plane)`, s a chart scalar vanishing at the anchor.
    pub fn with_twist(anchor: OrientedPlane, rate: f64) -> Self {
        let complement = crate::linalg::complement_basis(anchor.u(), anchor.v());
        Self {
            anchor,
            complement,
            twist_rate: rate,
        }
    }

    pub fn anchor(&self) -> &OrientedPlane {
        &self.anchor
    }

    /// Positively-oriented orthonormal frame of `plane` obtained by
    /// projecting the anchor frame (plus the twist). Fails when the plane
    /// is too far from the anchor for the projection to stay
    /// nondegenerate.
    pub fn frame_at(&self, plane: &OrientedPlane) -> Result<(RVector, RVector)> {
        let p = plane.projector();
        let pu = &p * self.anchor.u();
        let pv = &p * self.anchor.v();
        if pu.norm() < 0.2 {
            return Err(Error::FiberMismatch(
                "plane outside the frame field's chart".into(),
            ));
        }
        let (u, v) = crate::linalg::orthonormalize_pair(&pu, &pv).ok_or_else(|| {
            Error::FiberMismatch("frame field degenerates at this plane".into())
        })?;
        let candidate = OrientedPlane::from_frame(&u, &v)?;
        let v = if candidate.orientation_sign(plane) > 0.0 {
            v
        } else {
            -v
        };
        if self.twist_rate == 0.0 {
            return Ok((u, v));
        }
        // chart scalar: first/last complement components of the projected
        // frame; vanishes at the anchor, gradient O(1) over the chart
        let c_first: RVector = self.complement.column(0).into_owned();
        let c_last: RVector = self
            .complement
            .column(self.complement.ncols() - 1)
            .into_owned();
        let s = u.dot(&c_first) + v.dot(&c_last);
        let theta = self.twist_rate * s;
        let (sin, cos) = theta.sin_cos();
        Ok((&u * cos + &v * sin, &u * (-sin) + &v * cos))
    }

    /// Fiber coordinate of a point relative to this field's frame at its
    /// plane.
    pub fn tau_at(&self, plane: &OrientedPlane, point: &ProjectivePoint) -> Result<Complex64> {
        let (u, v) = self.frame_at(plane)?;
        let gauge = OrientedPlane::from_frame(&u, &v)?;
        fiber_coordinate(&gauge, point)
    }
}

/// The section induced by a quadric.
#[derive(Debug, Clone)]
pub struct QuadricSection {
    quadric: Quadric,
}

impl QuadricSection {
    pub fn new(quadric: Quadric) -> Self {
        Self { quadric }
    }

    pub fn quadric(&self) -> &Quadric {
        &self.quadric
    }
}

impl SectionMap for QuadricSection {
    fn at(&self, plane: &OrientedPlane) -> Result<ProjectivePoint> {
        Ok(section_at(&self.quadric, plane)?.point)
    }
}

/// Anti-holomorphic deformation of a quadric section: in the frames of a
/// fixed [`FrameField`], the fiber coordinate τ is replaced by
/// τ + ε·conj(τ). For ε in (0, 1) the value stays inside the fiber.
#[derive(Debug, Clone)]
pub struct PerturbedSection {
    quadric: Quadric,
    epsilon: f64,
    frames: FrameField,
}

impl PerturbedSection {
    pub fn new(quadric: Quadric, epsilon: f64, frames: FrameField) -> Self {
        Self {
            quadric,
            epsilon,
            frames,
        }
    }
}

impl SectionMap for PerturbedSection {
    fn at(&self, plane: &OrientedPlane) -> Result<ProjectivePoint> {
        let base = section_at(&self.quadric, plane)?;
        let (u, v) = self.frames.frame_at(plane)?;
        let tau = self.frames.tau_at(plane, &base.point)?;
        let t = tau + self.epsilon * tau.conj();
        let coords = CVector::from_fn(plane.dim(), |i, _| {
            Complex64::new(u[i], 0.0) + t * v[i]
        });
        ProjectivePoint::new(coords)
    }
}

/// The constant-τ section over a frame field's chart: plane ↦ [u + τ v]
/// in the field's frames.
#[derive(Debug, Clone)]
pub struct ConstantTauSection {
    tau: Complex64,
    frames: FrameField,
}

impl ConstantTauSection {
    pub fn new(tau: Complex64, frames: FrameField) -> Result<Self> {
        if tau.im <= 0.0 {
            return Err(Error::FiberMismatch(
                "constant τ must lie in the open upper half-plane".into(),
            ));
        }
        Ok(Self { tau, frames })
    }
}

impl SectionMap for ConstantTauSection {
    fn at(&self, plane: &OrientedPlane) -> Result<ProjectivePoint> {
        let (u, v) = self.frames.frame_at(plane)?;
        let coords = CVector::from_fn(plane.dim(), |i, _| {
            Complex64::new(u[i], 0.0) + self.tau * v[i]
        });
        ProjectivePoint::new(coords)
    }
}

/// Consistency check used across the test suites: the sample's τ agrees
/// with the fiber coordinate of its point over its plane.
pub fn sample_is_consistent(sample: &SectionSample) -> bool {
    match fiber_coordinate(&sample.plane, &sample.point) {
        Ok(tau) => (tau - sample.tau).norm() < 1e-10 * (1.0 + sample.tau.norm()),
        Err(_) => false,
    }
}
