//! Charts and sampling on G₂⁺(ℝ^{n+2}); β-surfaces and α-surfaces of the
//! flat model.
//!
//! Tangent vectors at a plane Π are represented as n×2 real matrices: the
//! coefficients, in a fixed orthonormal complement basis, of the
//! velocities of the two frame vectors — coordinates of Hom(Π, Π^⊥). In
//! this representation the β-plane condition "the map kills the line ℓ"
//! is a column statement, which is what the surface tests check.
//!
//! In the flat model a β-surface is the family of oriented planes
//! containing a fixed line ℝℓ, and an α-surface is the 2-sphere of
//! oriented planes inside a fixed 3-space.

use crate::error::Error;
use crate::linalg::{complement_basis, RMatrix, RVector};
use crate::projective::OrientedPlane;
use crate::Result;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A one-parameter chart curve through a base plane: the frame is
/// displaced into the orthogonal complement along a fixed direction and
/// re-orthonormalised.
#[derive(Debug, Clone)]
pub struct PlaneChart {
    base: OrientedPlane,
    /// Orthonormal basis of the complement, shared by a chart family.
    complement: RMatrix,
    /// n×2 coefficient matrix: column j displaces frame vector j.
    direction: RMatrix,
    /// Injectivity bound: the map is defined and injective for |t| < scale.
    scale: f64,
}

impl PlaneChart {
    pub fn new(
        base: OrientedPlane,
        complement: RMatrix,
        direction: RMatrix,
        scale: f64,
    ) -> Result<Self> {
        let n = base.ambient_n();
        if complement.shape() != (n + 2, n) || direction.shape() != (n, 2) {
            return Err(Error::DimensionMismatch(format!(
                "chart needs a ({}x{n}) complement and ({n}x2) direction",
                n + 2
            )));
        }
        Ok(Self {
            base,
            complement,
            direction,
            scale,
        })
    }

    pub fn base(&self) -> &OrientedPlane {
        &self.base
    }

    pub fn complement(&self) -> &RMatrix {
        &self.complement
    }

    pub fn direction(&self) -> &RMatrix {
        &self.direction
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The 2n basis charts at a plane: directions E_{ij}, i < n, j < 2,
    /// sharing one complement basis.
    pub fn basis_family(base: &OrientedPlane) -> Vec<PlaneChart> {
        let n = base.ambient_n();
        let complement = complement_basis(base.u(), base.v());
        let mut charts = Vec::with_capacity(2 * n);
        for j in 0..2 {
            for i in 0..n {
                let mut dir = RMatrix::zeros(n, 2);
                dir[(i, j)] = 1.0;
                charts.push(PlaneChart {
                    base: base.clone(),
                    complement: complement.clone(),
                    direction: dir,
                    scale: 1.0,
                });
            }
        }
        charts
    }

    /// Chart map: orientation-preserving orthonormalisation of the
    /// displaced frame. `chart_point(0)` is the base plane.
    pub fn point(&self, t: f64) -> Result<OrientedPlane> {
        if t.abs() >= self.scale {
            return Err(Error::StepTooLarge {
                t,
                scale: self.scale,
            });
        }
        let du = &self.complement * self.direction.column(0).into_owned();
        let dv = &self.complement * self.direction.column(1).into_owned();
        OrientedPlane::from_frame(&(self.base.u() + du * t), &(self.base.v() + dv * t))
    }
}

/// Free function mirror of [`PlaneChart::point`].
pub fn chart_point(chart: &PlaneChart, t: f64) -> Result<OrientedPlane> {
    chart.point(t)
}

/// Draw an oriented plane by orthonormalising two standard-normal vectors.
/// Deterministic per seed.
pub fn random_plane(n: usize, seed: u64) -> OrientedPlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_plane_with(n, &mut rng)
}

/// As [`random_plane`], drawing from a caller-owned generator.
pub fn random_plane_with(n: usize, rng: &mut ChaCha8Rng) -> OrientedPlane {
    loop {
        let p = RVector::from_fn(n + 2, |_, _| rng.sample::<f64, _>(StandardNormal));
        let q = RVector::from_fn(n + 2, |_, _| rng.sample::<f64, _>(StandardNormal));
        if let Ok(plane) = OrientedPlane::from_frame(&p, &q) {
            return plane;
        }
    }
}

/// Numerical tangent of a plane curve at t = 0, as the n×2 matrix
/// M = Cᵀ Ṗ [u v] (C the complement basis, P the projector family).
/// Central differences with one Richardson pass; gauge-invariant in the
/// frames of the curve.
pub fn curve_tangent<F>(
    base: &OrientedPlane,
    complement: &RMatrix,
    curve: F,
    step: f64,
) -> Result<RMatrix>
where
    F: Fn(f64) -> Result<OrientedPlane>,
{
    let pdot = |h: f64| -> Result<RMatrix> {
        let plus = curve(h)?.projector();
        let minus = curve(-h)?.projector();
        Ok((plus - minus) / (2.0 * h))
    };
    let d1 = pdot(step)?;
    let d2 = pdot(2.0 * step)?;
    let pdot = (d1 * 4.0 - d2) / 3.0;
    let mut frame = RMatrix::zeros(base.dim(), 2);
    frame.set_column(0, base.u());
    frame.set_column(1, base.v());
    Ok(complement.transpose() * pdot * frame)
}

/// The β-surface of all oriented planes containing a fixed line ℝℓ.
#[derive(Debug, Clone)]
pub struct BetaSurface {
    /// Unit vector spanning the line, up to sign.
    line: RVector,
}

impl BetaSurface {
    pub fn new(line: RVector) -> Result<Self> {
        let n = line.norm();
        if n < 1e-300 {
            return Err(Error::ZeroCovector);
        }
        Ok(Self { line: line / n })
    }

    pub fn line(&self) -> &RVector {
        &self.line
    }

    pub fn contains(&self, plane: &OrientedPlane, tol: f64) -> bool {
        plane.contains_line(&self.line, tol)
    }

    /// Sample planes span{ℓ, m} for random unit m ⊥ ℓ, in both
    /// orientations. Deterministic per seed.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<OrientedPlane> {
        let d = self.line.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let mut m = RVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
            let c = self.line.dot(&m);
            m -= &self.line * c;
            if m.norm() < 1e-8 {
                continue;
            }
            let flip: bool = rng.random();
            let plane = if flip {
                OrientedPlane::from_frame(&m, &self.line)
            } else {
                OrientedPlane::from_frame(&self.line, &m)
            };
            if let Ok(p) = plane {
                out.push(p);
            }
        }
        out
    }

    /// Finite-difference tangent maps of the surface at a member, one per
    /// complement direction, together with the worst relative norm of the
    /// ℓ-column (which must vanish: tangent spaces are β-planes).
    pub fn tangent_maps(
        &self,
        member: &OrientedPlane,
        step: f64,
    ) -> Result<(Vec<RMatrix>, f64)> {
        let (l, m) = member.frame_through(&self.line)?;
        let gauge = OrientedPlane::from_frame(&l, &m)?;
        let complement = complement_basis(&l, &m);
        let n = member.ambient_n();
        let mut maps = Vec::with_capacity(n);
        let mut worst = 0.0f64;
        for j in 0..n {
            let cj: RVector = complement.column(j).into_owned();
            let tangent = curve_tangent(
                &gauge,
                &complement,
                |t| OrientedPlane::from_frame(&l, &(&m + &cj * t)),
                step,
            )?;
            let l_col = tangent.column(0).norm();
            let total = tangent.norm().max(1e-300);
            worst = worst.max(l_col / total);
            maps.push(tangent);
        }
        Ok((maps, worst))
    }
}

/// The β-surface through a plane tangent to the β-plane annihilating the
/// covector w = (w₁, w₂) on the plane's frame: planes containing
/// ℓ = ker(w) ∩ Π.
pub fn beta_surface_through(plane: &OrientedPlane, w: (f64, f64)) -> Result<BetaSurface> {
    let norm = (w.0 * w.0 + w.1 * w.1).sqrt();
    if norm < 1e-300 {
        return Err(Error::ZeroCovector);
    }
    // kernel of a·w₁ + b·w₂ inside the frame
    let line = plane.u() * (w.1 / norm) + plane.v() * (-w.0 / norm);
    BetaSurface::new(line)
}

/// The α-surface of oriented planes inside the 3-space spanned by a plane
/// and one extra direction: a copy of G₂⁺(ℝ³) ≅ S².
#[derive(Debug, Clone)]
pub struct AlphaSurface {
    /// Orthonormal (n+2)×3 basis of the 3-space.
    basis: RMatrix,
}

impl AlphaSurface {
    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    /// Plane with unit normal q inside the 3-space (right-handed in the
    /// basis coordinates).
    pub fn member_from_normal(&self, q: &[f64; 3]) -> Result<OrientedPlane> {
        let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        if norm < 1e-300 {
            return Err(Error::ZeroCovector);
        }
        let q = [q[0] / norm, q[1] / norm, q[2] / norm];
        // unit a ⊥ q from the least-aligned coordinate axis
        let mut e = [0.0f64; 3];
        let least = (0..3)
            .min_by(|&i, &j| q[i].abs().partial_cmp(&q[j].abs()).unwrap())
            .unwrap();
        e[least] = 1.0;
        let a = cross(&q, &e);
        let an = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let a = [a[0] / an, a[1] / an, a[2] / an];
        let b = cross(&q, &a);
        // a × b = q for this construction
        let to_ambient = |c: &[f64; 3]| -> RVector {
            self.basis.column(0) * c[0] + self.basis.column(1) * c[1] + self.basis.column(2) * c[2]
        };
        OrientedPlane::from_frame(&to_ambient(&a), &to_ambient(&b))
    }

    /// Sample the 2-parameter family. Deterministic per seed.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<OrientedPlane> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let q = [
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            ];
            if let Ok(p) = self.member_from_normal(&q) {
                out.push(p);
            }
        }
        out
    }

    /// Projector residual of a plane against the 3-space.
    pub fn containment_residual(&self, plane: &OrientedPlane) -> f64 {
        let pv = &self.basis * self.basis.transpose();
        let pp = plane.projector();
        let d = plane.dim();
        ((RMatrix::identity(d, d) - pv) * pp).norm()
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// The α-surface through a plane determined by one direction w₃ ∉ Π:
/// all oriented planes inside span(Π, w₃).
pub fn alpha_surface_through(plane: &OrientedPlane, w3: &RVector) -> Result<AlphaSurface> {
    if w3.len() != plane.dim() {
        return Err(Error::DimensionMismatch(
            "direction has wrong ambient dimension".into(),
        ));
    }
    let mut w = w3.clone();
    let proj = plane.projector() * &w;
    w -= proj;
    if w.norm() < 1e-8 * w3.norm() {
        return Err(Error::VectorInPlane);
    }
    w /= w.norm();
    let d = plane.dim();
    let mut basis = RMatrix::zeros(d, 3);
    basis.set_column(0, plane.u());
    basis.set_column(1, plane.v());
    basis.set_column(2, &w);
    Ok(AlphaSurface { basis })
}

/// Rank of the span of finite-difference tangents at a plane along its
/// 2n basis charts — the dimension audit for G₂⁺.
pub fn chart_tangent_rank(plane: &OrientedPlane, step: f64) -> Result<usize> {
    let charts = PlaneChart::basis_family(plane);
    let n = plane.ambient_n();
    let mut stacked = RMatrix::zeros(2 * n, charts.len());
    for (k, chart) in charts.iter().enumerate() {
        let t = curve_tangent(chart.base(), chart.complement(), |h| chart.point(h), step)?;
        for i in 0..n {
            stacked[(i, k)] = t[(i, 0)];
            stacked[(i + n, k)] = t[(i, 1)];
        }
    }
    Ok(matrix_rank(&stacked, 1e-6))
}

pub(crate) fn matrix_rank(m: &RMatrix, rel_tol: f64) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * smax)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn random_plane_is_orthonormal_and_seeded() {
        let p = random_plane(3, 42);
        assert!((p.u().norm() - 1.0).abs() < 1e-14);
        assert!((p.v().norm() - 1.0).abs() < 1e-14);
        assert!(p.u().dot(p.v()).abs() < 1e-14);
        let q = random_plane(3, 42);
        assert!(p.approx_eq(&q, 1e-14));
        let r = random_plane(3, 43);
        assert!(!p.approx_eq(&r, 1e-6));
    }

    #[test]
    fn chart_point_at_zero_is_base() {
        let base = random_plane(2, 7);
        let charts = PlaneChart::basis_family(&base);
        assert_eq!(charts.len(), 4);
        for c in &charts {
            assert!(c.point(0.0).unwrap().approx_eq(&base, 1e-14));
        }
    }

    #[test]
    fn chart_step_bound() {
        let base = random_plane(1, 3);
        let chart = &PlaneChart::basis_family(&base)[0];
        assert!(matches!(
            chart.point(1.5),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn chart_first_order_consistency() {
        // tangent of the chart curve equals the direction matrix, and the
        // finite-difference quotient converges at the expected rate
        let base = random_plane(3, 11);
        let charts = PlaneChart::basis_family(&base);
        for chart in charts.iter().take(3) {
            let t = curve_tangent(chart.base(), chart.complement(), |h| chart.point(h), 1e-5)
                .unwrap();
            assert!((t - chart.direction()).norm() < 1e-9);
            // Richardson ratio: error drops ~16x when the step halves
            let err = |h: f64| {
                let tt =
                    curve_tangent(chart.base(), chart.complement(), |s| chart.point(s), h)
                        .unwrap();
                (tt - chart.direction()).norm()
            };
            let e1 = err(1e-2);
            let e2 = err(5e-3);
            assert!(e2 < e1 * 0.2, "no convergence: {e1} -> {e2}");
        }
    }

    #[test]
    fn displaced_frames_stay_orthonormal() {
        let base = random_plane(2, 5);
        let chart = &PlaneChart::basis_family(&base)[1];
        let p = chart.point(0.4).unwrap();
        assert!((p.u().norm() - 1.0).abs() < 1e-14);
        assert!(p.u().dot(p.v()).abs() < 1e-14);
    }

    #[test]
    fn beta_surface_kernel_line() {
        let plane = OrientedPlane::from_frame(
            &dvector![1.0, 0.0, 0.0, 0.0, 0.0],
            &dvector![0.0, 1.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        // kernel of the second coordinate functional is e1
        let s = beta_surface_through(&plane, (0.0, 1.0)).unwrap();
        assert!((s.line() - dvector![1.0, 0.0, 0.0, 0.0, 0.0]).norm() < 1e-14);
        assert!(s.contains(&plane, 1e-12));
    }

    #[test]
    fn beta_surface_members_contain_line() {
        let plane = random_plane(3, 19);
        let s = beta_surface_through(&plane, (0.3, -1.2)).unwrap();
        for member in s.sample(20, 77) {
            assert!(s.contains(&member, 1e-12));
        }
    }

    #[test]
    fn beta_tangents_kill_the_line() {
        let plane = random_plane(3, 23);
        let s = beta_surface_through(&plane, (1.0, 0.4)).unwrap();
        for member in s.sample(5, 13) {
            let (maps, worst) = s.tangent_maps(&member, 1e-5).unwrap();
            assert_eq!(maps.len(), 3);
            assert!(worst < 1e-8, "beta-plane residual {worst}");
        }
    }

    #[test]
    fn beta_surface_dimension_is_n() {
        let n = 3;
        let plane = random_plane(n, 29);
        let s = beta_surface_through(&plane, (0.5, 0.5)).unwrap();
        let member = &s.sample(1, 3)[0];
        let (maps, _) = s.tangent_maps(member, 1e-5).unwrap();
        let mut stacked = RMatrix::zeros(2 * n, maps.len());
        for (k, m) in maps.iter().enumerate() {
            for i in 0..n {
                stacked[(i, k)] = m[(i, 0)];
                stacked[(i + n, k)] = m[(i, 1)];
            }
        }
        assert_eq!(matrix_rank(&stacked, 1e-6), n);
    }

    #[test]
    fn beta_surfaces_with_same_line_coincide() {
        // two surfaces through different planes sharing the kernel line
        let l = dvector![0.0, 0.0, 1.0, 0.0, 0.0];
        let p1 = OrientedPlane::from_frame(&l, &dvector![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let p2 = OrientedPlane::from_frame(&l, &dvector![0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        let s1 = beta_surface_through(&p1, (0.0, 2.0)).unwrap();
        let s2 = beta_surface_through(&p2, (0.0, -1.0)).unwrap();
        for member in s1.sample(10, 5) {
            assert!(s2.contains(&member, 1e-10));
        }
    }

    #[test]
    fn alpha_surface_members_lie_in_3_space() {
        let plane = random_plane(3, 31);
        let w3 = dvector![0.0, 1.0, 2.0, 3.0, -1.0];
        let s = alpha_surface_through(&plane, &w3).unwrap();
        assert!(s.containment_residual(&plane) < 1e-12);
        for member in s.sample(15, 21) {
            assert!(s.containment_residual(&member) < 1e-12);
        }
    }

    #[test]
    fn alpha_surface_rejects_in_plane_direction() {
        let plane = random_plane(2, 37);
        let w3 = plane.u() * 0.7 - plane.v() * 0.1;
        assert!(matches!(
            alpha_surface_through(&plane, &w3),
            Err(Error::VectorInPlane)
        ));
    }

    #[test]
    fn alpha_surface_dimension_is_two() {
        let plane = random_plane(3, 41);
        let w3 = dvector![1.0, -1.0, 0.5, 2.0, 0.0];
        let s = alpha_surface_through(&plane, &w3).unwrap();
        // tangents along sphere directions at the base member
        let member = s.member_from_normal(&[0.1, 0.2, 0.97]).unwrap();
        let complement = complement_basis(member.u(), member.v());
        let normal0 = [0.1, 0.2, 0.97];
        let mut stacked = RMatrix::zeros(2 * 3, 3);
        for (k, dq) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
            .iter()
            .enumerate()
        {
            let t = curve_tangent(
                &member,
                &complement,
                |h| {
                    s.member_from_normal(&[
                        normal0[0] + h * dq[0],
                        normal0[1] + h * dq[1],
                        normal0[2] + h * dq[2],
                    ])
                },
                1e-5,
            )
            .unwrap();
            for i in 0..3 {
                stacked[(i, k)] = t[(i, 0)];
                stacked[(i + 3, k)] = t[(i, 1)];
            }
        }
        // 3 normal directions, but the family is 2-dimensional
        assert_eq!(matrix_rank(&stacked, 1e-6), 2);
    }

    #[test]
    fn grassmannian_dimension_audit() {
        for n in [1usize, 2, 3] {
            let plane = random_plane(n, 100 + n as u64);
            assert_eq!(chart_tangent_rank(&plane, 1e-5).unwrap(), 2 * n);
        }
    }
}
