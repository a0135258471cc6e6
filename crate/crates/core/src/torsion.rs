//! Torsion test for section-induced reductions.
//!
//! A section σ of the disk bundle lifts, near a base plane, to a curve of
//! group elements g(t) whose first two columns frame the moving plane
//! positively with g₁ + i g₂ proportional to σ(plane(t)); the remaining
//! columns orthonormalise a constant complement. Any such covering lift
//! works. Evaluating the flat adapted forms on the lift velocities
//! X_a = g⁻¹ġ along the 2n chart directions and solving
//!
//! ```text
//! ξ(X_a) = x_k ζ^k(X_a) + y_k ζ̄^k(X_a)
//! ```
//!
//! gives the expansion coefficients of ξ on the reduction. The |y_k|
//! vanish exactly when the induced almost complex structure is integrable
//! — for quadric sections they sit at the finite-difference floor, for
//! anti-holomorphic perturbations they are O(ε).

use crate::error::Error;
use crate::flat::{flat_forms, TracelessMatrix};
use crate::grassmann::PlaneChart;
use crate::linalg::{
    complex_singular_values, orthonormalize_against, orthonormalize_pair, solve_complex, CMatrix,
    CVector, RMatrix, RVector,
};
use crate::projective::OrientedPlane;
use crate::quadric::Quadric;
use crate::section::{QuadricSection, SectionMap};
use crate::tol;
use crate::Result;

/// Result of the torsion expansion at one plane.
#[derive(Debug, Clone)]
pub struct TorsionReport {
    pub plane: OrientedPlane,
    /// |x_k|: ζ-coefficients of ξ on the lift.
    pub x_magnitudes: Vec<f64>,
    /// |y_k|: ζ̄-coefficients; all ≈ 0 for torsion-free (holomorphic)
    /// reductions.
    pub ybar_magnitudes: Vec<f64>,
    /// Condition number of the ζ-value matrix of the solve.
    pub condition: f64,
    pub step: f64,
}

impl TorsionReport {
    pub fn max_ybar(&self) -> f64 {
        self.ybar_magnitudes.iter().copied().fold(0.0, f64::max)
    }
}

/// Group element framing `plane` with the section value: columns are
/// (Re z̃, Im z̃, projected complement), z̃ the pivot-normalised section
/// value. The complement columns are the fixed matrix `complement`
/// projected off the plane and orthonormalised in order.
fn adapted_frame(
    section: &dyn SectionMap,
    plane: &OrientedPlane,
    pivot: usize,
    complement: &RMatrix,
) -> Result<RMatrix> {
    let point = section.at(plane)?;
    let z = point.coords();
    let scale = z[pivot];
    if scale.norm() < 1e-12 * z.norm() {
        return Err(Error::FiberMismatch(
            "section value left the lift's pivot gauge".into(),
        ));
    }
    let d = z.len();
    let mut g1 = RVector::zeros(d);
    let mut g2 = RVector::zeros(d);
    for i in 0..d {
        let w = z[i] / scale;
        g1[i] = w.re;
        g2[i] = w.im;
    }
    let (u, v) = orthonormalize_pair(&g1, &g2)
        .ok_or_else(|| Error::FiberMismatch("section value degenerated to a real point".into()))?;
    let e = orthonormalize_against(&[u, v], complement)
        .ok_or_else(|| Error::FiberMismatch("complement projection degenerated".into()))?;
    let n = d - 2;
    let mut g = RMatrix::zeros(d, d);
    g.set_column(0, &g1);
    g.set_column(1, &g2);
    for j in 0..n {
        g.set_column(2 + j, &e.column(j).into_owned());
    }
    Ok(g)
}

/// Lift velocity X = 𝔰𝔩-part of g(0)⁻¹ ġ(0) along one chart direction,
/// by central differences with one Richardson pass.
fn lift_velocity(
    section: &dyn SectionMap,
    chart: &PlaneChart,
    pivot: usize,
    complement: &RMatrix,
    g0_inv: &RMatrix,
    step: f64,
) -> Result<TracelessMatrix> {
    let gdot = |h: f64| -> Result<RMatrix> {
        let plus = adapted_frame(section, &chart.point(h)?, pivot, complement)?;
        let minus = adapted_frame(section, &chart.point(-h)?, pivot, complement)?;
        Ok((plus - minus) / (2.0 * h))
    };
    let d1 = gdot(step)?;
    let d2 = gdot(2.0 * step)?;
    let gdot = (d1 * 4.0 - d2) / 3.0;
    TracelessMatrix::project(g0_inv * gdot)
}

/// Expand ξ in (ζ, ζ̄) on the velocities of an adapted lift of `section`
/// near `plane` and report the coefficient magnitudes.
pub fn torsion_test(
    section: &dyn SectionMap,
    plane: &OrientedPlane,
    step: f64,
) -> Result<TorsionReport> {
    let n = plane.ambient_n();
    let center = section.at(plane)?;
    let pivot = center.pivot();
    let complement = crate::linalg::complement_basis(plane.u(), plane.v());
    let g0 = adapted_frame(section, plane, pivot, &complement)?;
    let g0_inv = g0
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::FiberMismatch("adapted frame is singular".into()))?;
    let charts = PlaneChart::basis_family(plane);
    let mut rows = CMatrix::zeros(2 * n, 2 * n);
    let mut rhs = CVector::zeros(2 * n);
    for (a, chart) in charts.iter().enumerate() {
        let x = lift_velocity(section, chart, pivot, &complement, &g0_inv, step)?;
        let f = flat_forms(&x);
        for k in 0..n {
            rows[(a, k)] = f.zeta[k];
            rows[(a, n + k)] = f.zeta[k].conj();
        }
        rhs[a] = f.xi;
    }
    let sv = complex_singular_values(&rows);
    let smin = sv.last().copied().unwrap_or(0.0);
    let cond = if smin > 0.0 { sv[0] / smin } else { f64::INFINITY };
    if !cond.is_finite() || cond > tol::MAX_EXPANSION_COND {
        return Err(Error::IllConditionedExpansion { cond });
    }
    let sol = solve_complex(&rows, &rhs)
        .ok_or(Error::IllConditionedExpansion { cond: f64::INFINITY })?;
    let x_magnitudes: Vec<f64> = (0..n).map(|k| sol[k].norm()).collect();
    let ybar_magnitudes: Vec<f64> = (0..n).map(|k| sol[n + k].norm()).collect();
    Ok(TorsionReport {
        plane: plane.clone(),
        x_magnitudes,
        ybar_magnitudes,
        condition: cond,
        step,
    })
}

/// [`torsion_test`] for the section induced by a quadric.
pub fn reduction_torsion_test(
    quadric: &Quadric,
    plane: &OrientedPlane,
    step: f64,
) -> Result<TorsionReport> {
    let section = QuadricSection::new(quadric.clone());
    torsion_test(&section, plane, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::random_plane;
    use crate::quadric::random_real_point_free;
    use crate::section::{FrameField, PerturbedSection};

    #[test]
    fn unit_quadric_reduction_is_torsion_free() {
        let q = Quadric::identity(1);
        for seed in 0..5u64 {
            let plane = random_plane(1, 600 + seed);
            let r = reduction_torsion_test(&q, &plane, tol::FD_STEP).unwrap();
            assert!(r.max_ybar() < 1e-6, "ybar {}", r.max_ybar());
            assert!(r.condition < 1e3);
        }
    }

    #[test]
    fn random_quadric_reductions_are_torsion_free() {
        for n in [1usize, 2, 3] {
            let q = random_real_point_free(n, 700 + n as u64);
            let plane = random_plane(n, 800 + n as u64);
            let r = reduction_torsion_test(&q, &plane, tol::FD_STEP).unwrap();
            assert!(r.max_ybar() < 1e-5, "n = {n}: ybar {}", r.max_ybar());
        }
    }

    #[test]
    fn perturbed_section_has_torsion() {
        let n = 1;
        let q = random_real_point_free(n, 31);
        let anchor = random_plane(n, 32);
        let section = PerturbedSection::new(q, 1e-2, FrameField::new(anchor.clone()));
        // evaluate away from the anchor, inside the frame field's chart
        let chart = &PlaneChart::basis_family(&anchor)[0];
        let plane = chart.point(0.35).unwrap();
        let r = torsion_test(&section, &plane, tol::FD_STEP).unwrap();
        assert!(r.max_ybar() > 1e-4, "ybar {}", r.max_ybar());
    }
}
