//! Homogeneous coordinates on ℂP^{n+1}, the real-point locus, the twistor
//! projection ρ₀ and fiber coordinates.
//!
//! A point [z] with Re z, Im z linearly dependent lies on the standard
//! embedding of ℝP^{n+1}; everywhere else ρ₀([z]) is the 2-plane
//! span{Re z, Im z}, oriented by declaring (Re z, Im z) a positive basis.
//! The fiber over an oriented plane is coordinatised by the open upper
//! half-plane: p = [u + τ v] with Im τ > 0 in the plane's orthonormal
//! frame (u, v).

use crate::error::Error;
use crate::linalg::{orthonormalize_pair, CVector, RMatrix, RVector};
use crate::tol;
use crate::Result;
use num_complex::Complex64;

/// A point of ℂP^{n+1}: a nonzero homogeneous coordinate vector in ℂ^{n+2},
/// up to complex scale.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: CVector,
    ambient_n: usize,
}

impl ProjectivePoint {
    /// Build from homogeneous coordinates. The vector must be nonzero and
    /// of length ≥ 2 (so that n = len − 2 ≥ 0).
    pub fn new(coords: CVector) -> Result<Self> {
        let d = coords.len();
        if d < 2 {
            return Err(Error::DimensionMismatch(format!(
                "projective point needs at least 2 homogeneous coordinates, got {d}"
            )));
        }
        let norm = coords.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DimensionMismatch(
                "homogeneous coordinates must be nonzero and finite".into(),
            ));
        }
        Ok(Self {
            coords,
            ambient_n: d - 2,
        })
    }

    pub fn from_real(re: &RVector, im: &RVector) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch(
                "real and imaginary parts differ in length".into(),
            ));
        }
        Self::new(CVector::from_fn(re.len(), |i, _| {
            Complex64::new(re[i], im[i])
        }))
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the largest-modulus entry, ties broken by lowest index.
    pub fn pivot(&self) -> usize {
        let mut best = 0usize;
        let mut best_val = self.coords[0].norm();
        for i in 1..self.coords.len() {
            let v = self.coords[i].norm();
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        best
    }

    /// Canonical representative: largest-modulus entry rescaled to 1.
    pub fn canonical(&self) -> CVector {
        let p = self.pivot();
        let scale = self.coords[p];
        self.coords.map(|z| z / scale)
    }

    /// Scale-invariant equality on canonical representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        (a - b).norm() <= tol * (self.dim() as f64).sqrt()
    }

    /// True when Re z and Im z are linearly dependent, decided by the ratio
    /// of the second to the first singular value of the 2×(n+2) matrix with
    /// rows Re z, Im z.
    pub fn is_real(&self) -> bool {
        is_real_point(self)
    }
}

/// An oriented 2-plane in ℝ^{n+2}: an ordered orthonormal frame (u, v)
/// modulo positive rotation — a point of G₂⁺(ℝ^{n+2}).
#[derive(Debug, Clone)]
pub struct OrientedPlane {
    u: RVector,
    v: RVector,
    ambient_n: usize,
}

impl OrientedPlane {
    /// Build from an ordered spanning pair, orthonormalising while
    /// preserving the orientation of the pair.
    pub fn from_frame(p: &RVector, q: &RVector) -> Result<Self> {
        let d = p.len();
        if q.len() != d || d < 3 {
            return Err(Error::DimensionMismatch(format!(
                "plane frame needs two vectors of equal length >= 3, got {d} and {}",
                q.len()
            )));
        }
        let (u, v) = orthonormalize_pair(p, q).ok_or_else(|| {
            Error::DimensionMismatch("frame vectors are linearly dependent".into())
        })?;
        Ok(Self {
            u,
            v,
            ambient_n: d - 2,
        })
    }

    pub fn u(&self) -> &RVector {
        &self.u
    }

    pub fn v(&self) -> &RVector {
        &self.v
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// Orthogonal projector uuᵀ + vvᵀ onto the plane.
    pub fn projector(&self) -> RMatrix {
        &self.u * self.u.transpose() + &self.v * self.v.transpose()
    }

    /// Contains the line ℝℓ?
    pub fn contains_line(&self, line: &RVector, tol: f64) -> bool {
        let p = self.projector() * line;
        (p - line).norm() <= tol * line.norm()
    }

    /// The same underlying plane with reversed orientation (frame swapped).
    pub fn reversed(&self) -> Self {
        Self {
            u: self.v.clone(),
            v: self.u.clone(),
            ambient_n: self.ambient_n,
        }
    }

    /// Equality as points of G₂⁺: projector equality plus matching
    /// orientation sign of the 2×2 change-of-frame determinant.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        if (self.projector() - other.projector()).norm() > tol * 2.0f64.sqrt() {
            return false;
        }
        self.orientation_sign(other) > 0.0
    }

    /// Sign of det [[u·u', u·v'], [v·u', v·v']]; positive iff the frames
    /// induce the same orientation on the common plane.
    pub fn orientation_sign(&self, other: &Self) -> f64 {
        let a = self.u.dot(&other.u);
        let b = self.u.dot(&other.v);
        let c = self.v.dot(&other.u);
        let d = self.v.dot(&other.v);
        (a * d - b * c).signum()
    }

    /// Rotate the frame within its SO(2) class so the first vector becomes
    /// the unit vector ±ℓ (ℓ must lie in the plane). The rotated frame
    /// represents the same oriented plane.
    pub fn frame_through(&self, line: &RVector) -> Result<(RVector, RVector)> {
        let c = self.u.dot(line);
        let s = self.v.dot(line);
        let r = (c * c + s * s).sqrt();
        if r < 1e-12 * line.norm() {
            return Err(Error::FiberMismatch(
                "line is orthogonal to the plane".into(),
            ));
        }
        let (c, s) = (c / r, s / r);
        let first = &self.u * c + &self.v * s;
        let second = &self.u * (-s) + &self.v * c;
        Ok((first, second))
    }
}

/// True iff [z] lies on ℝP^{n+1}: the second singular value of the real
/// 2×(n+2) matrix with rows Re z, Im z is below `EPS_RANK` relative to the
/// first.
pub fn is_real_point(p: &ProjectivePoint) -> bool {
    let d = p.dim();
    let mut m = RMatrix::zeros(2, d);
    for i in 0..d {
        m[(0, i)] = p.coords()[i].re;
        m[(1, i)] = p.coords()[i].im;
    }
    let svd = m.svd(false, false);
    let s0 = svd.singular_values[0];
    let s1 = svd.singular_values[1];
    s1 <= tol::EPS_RANK * s0
}

/// The twistor projection ρ₀ : [z] ↦ span⁺{Re z, Im z}.
///
/// Invariant under rescaling z by any nonzero complex number: rescaling by
/// e^{iθ} rotates (Re z, Im z) within its SO(2) class.
pub fn rho0(p: &ProjectivePoint) -> Result<OrientedPlane> {
    if is_real_point(p) {
        return Err(Error::RealPoint);
    }
    let re = p.coords().map(|z| z.re);
    let im = p.coords().map(|z| z.im);
    OrientedPlane::from_frame(&re, &im)
}

/// The group-level map λ : g ↦ [g₁ + i g₂] on invertible real matrices,
/// where g₁, g₂ are the first two columns of g.
///
/// Satisfies ρ₀(λ(g)) = span⁺{g₁, g₂}.
pub fn lambda_group(g: &RMatrix) -> Result<ProjectivePoint> {
    let (r, c) = g.shape();
    if r != c || r < 3 {
        return Err(Error::DimensionMismatch(format!(
            "lambda needs a square matrix of size >= 3, got {r}x{c}"
        )));
    }
    let det = g.determinant();
    let scale = g.norm() / (r as f64).sqrt();
    if det.abs() <= f64::EPSILON.sqrt() * scale.powi(r as i32) {
        return Err(Error::SingularMatrix { det: det.abs() });
    }
    let g1: RVector = g.column(0).into_owned();
    let g2: RVector = g.column(1).into_owned();
    ProjectivePoint::from_real(&g1, &g2)
}

/// Fiber coordinate of p over its plane: the unique τ with p = [u + τ v]
/// in the plane's stored frame. Im τ > 0 exactly when ρ₀(p) equals the
/// plane with matching orientation.
pub fn fiber_coordinate(plane: &OrientedPlane, p: &ProjectivePoint) -> Result<Complex64> {
    if plane.dim() != p.dim() {
        return Err(Error::DimensionMismatch(
            "plane and point live in different ambient spaces".into(),
        ));
    }
    let z = p.coords();
    let alpha = frame_component(plane.u(), z);
    let beta = frame_component(plane.v(), z);
    // z must lie in the complex span of (u, v)
    let mut resid = z.clone();
    for i in 0..z.len() {
        resid[i] -= alpha * plane.u()[i] + beta * plane.v()[i];
    }
    if resid.norm() > 1e-9 * z.norm() {
        return Err(Error::FiberMismatch(format!(
            "point is off the complexified plane by {:.3e} (relative)",
            resid.norm() / z.norm()
        )));
    }
    // Im(conj(alpha) beta) > 0 <=> (Re z, Im z) positively oriented in (u, v)
    let orient = (alpha.conj() * beta).im;
    if orient <= tol::EPS_ROOT * (alpha.norm_sqr() + beta.norm_sqr()) {
        return Err(Error::FiberMismatch(
            "point projects to the plane with opposite or degenerate orientation".into(),
        ));
    }
    Ok(beta / alpha)
}

fn frame_component(e: &RVector, z: &CVector) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..z.len() {
        acc += z[i] * e[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    fn cpoint(entries: &[(f64, f64)]) -> ProjectivePoint {
        ProjectivePoint::new(CVector::from_iterator(
            entries.len(),
            entries.iter().map(|&(re, im)| Complex64::new(re, im)),
        ))
        .unwrap()
    }

    #[test]
    fn real_point_detection() {
        assert!(cpoint(&[(1.0, 0.0), (2.0, 0.0), (0.0, 0.0)]).is_real());
        assert!(!cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]).is_real());
        // Im = Re
        assert!(cpoint(&[(1.0, 1.0), (2.0, 2.0), (0.0, 0.0)]).is_real());
    }

    #[test]
    fn rho0_standard_plane() {
        let p = cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        let plane = rho0(&p).unwrap();
        assert!((plane.u() - dvector![1.0, 0.0, 0.0]).norm() < 1e-14);
        assert!((plane.v() - dvector![0.0, 1.0, 0.0]).norm() < 1e-14);
    }

    #[test]
    fn rho0_orientation_reversal() {
        // [i, 1, 0] spans the same plane as [1, i, 0] with opposite orientation
        let p = cpoint(&[(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)]);
        let q = cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        let pp = rho0(&p).unwrap();
        let pq = rho0(&q).unwrap();
        assert!((pp.projector() - pq.projector()).norm() < 1e-14);
        assert!(pp.orientation_sign(&pq) < 0.0);
        assert!(!pp.approx_eq(&pq, 1e-10));
        assert!(pp.approx_eq(&pq.reversed(), 1e-10));
    }

    #[test]
    fn rho0_scale_invariance() {
        let p = cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.3, -0.2)]);
        let c = Complex64::new(-0.7, 2.1);
        let q = ProjectivePoint::new(p.coords().map(|z| z * c)).unwrap();
        assert!(rho0(&p).unwrap().approx_eq(&rho0(&q).unwrap(), 1e-12));
        assert!(p.approx_eq(&q, 1e-12));
    }

    #[test]
    fn rho0_rejects_real_points() {
        let p = cpoint(&[(1.0, 2.0), (2.0, 4.0), (0.5, 1.0)]);
        assert!(matches!(rho0(&p), Err(Error::RealPoint)));
    }

    #[test]
    fn lambda_identity_and_rotation() {
        let id = RMatrix::identity(4, 4);
        let p = lambda_group(&id).unwrap();
        // [e1 + i e2]
        assert!(p.approx_eq(
            &cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]),
            1e-14
        ));
        // rotation in the (1,2) plane gives the same projective point
        let th = 0.83f64;
        let mut rot = RMatrix::identity(4, 4);
        rot[(0, 0)] = th.cos();
        rot[(0, 1)] = -th.sin();
        rot[(1, 0)] = th.sin();
        rot[(1, 1)] = th.cos();
        let q = lambda_group(&rot).unwrap();
        assert!(p.approx_eq(&q, 1e-12));
    }

    #[test]
    fn lambda_rejects_singular() {
        let mut g = RMatrix::identity(4, 4);
        g[(3, 3)] = 0.0;
        assert!(matches!(lambda_group(&g), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn fiber_coordinate_reads_off_tau() {
        let plane = OrientedPlane::from_frame(
            &dvector![1.0, 0.0, 0.0],
            &dvector![0.0, 1.0, 0.0],
        )
        .unwrap();
        let p = cpoint(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        let tau = fiber_coordinate(&plane, &p).unwrap();
        assert!((tau - Complex64::new(0.0, 1.0)).norm() < 1e-14);

        let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let q = cpoint(&[(1.0, 0.0), (t.re, t.im), (0.0, 0.0)]);
        let tau = fiber_coordinate(&plane, &q).unwrap();
        assert!((tau - t).norm() < 1e-14);
    }

    #[test]
    fn fiber_coordinate_rejects_mismatch() {
        let plane = OrientedPlane::from_frame(
            &dvector![1.0, 0.0, 0.0],
            &dvector![0.0, 1.0, 0.0],
        )
        .unwrap();
        // off the complexified plane
        let p = cpoint(&[(1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert!(fiber_coordinate(&plane, &p).is_err());
        // wrong orientation: tau in the lower half-plane
        let q = cpoint(&[(1.0, 0.0), (0.0, -1.0), (0.0, 0.0)]);
        assert!(fiber_coordinate(&plane, &q).is_err());
    }
}
