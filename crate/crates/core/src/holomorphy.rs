//! Numerical holomorphy test for section images.
//!
//! A section image is a 2n-dimensional submanifold of ℂP^{n+1}. In an
//! affine chart centred at a section value, its tangent space T is the
//! real span of 2n finite-difference velocity vectors; the image is a
//! complex submanifold at the sample exactly when T is invariant under
//! multiplication by i. The reported residual is ‖(Id − P_T)·J·P_T‖₂,
//! which vanishes iff T is J-invariant. An equivalent rank formulation
//! (the wedge criterion): the complex span of the velocities must have
//! complex dimension n, i.e. the (n+1)×2n complex velocity matrix drops
//! rank — exposed as [`wedge_rank_residual`] and used to cross-check the
//! projector route.

use crate::error::Error;
use crate::grassmann::{random_plane_with, PlaneChart};
use crate::linalg::{complex_singular_values, j_matrix, stack_complex, CMatrix, CVector, RMatrix};
use crate::projective::{OrientedPlane, ProjectivePoint};
use crate::quadric::Quadric;
use crate::section::{QuadricSection, SectionMap};
use crate::Result;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one holomorphy test.
#[derive(Debug, Clone)]
pub struct HolomorphyReport {
    pub plane: OrientedPlane,
    /// ‖(Id − P_T)·J·P_T‖₂ in the affine chart; ≈ 0 iff the image is a
    /// complex submanifold at the sample.
    pub residual: f64,
    pub step: f64,
    /// Real dimension of the numerically spanned tangent space (2n for
    /// valid reports).
    pub tangent_rank: usize,
}

/// Aggregate of a sweep.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub max_residual: f64,
    pub mean_residual: f64,
    pub reports: Vec<HolomorphyReport>,
}

/// Chart coordinates of a point: drop the pivot coordinate of the
/// pivot-normalised representative. The pivot is fixed by the caller so
/// that nearby points share a chart.
fn chart_coords(p: &ProjectivePoint, pivot: usize) -> Result<CVector> {
    let z = p.coords();
    let scale = z[pivot];
    if scale.norm() < 1e-12 * z.norm() {
        return Err(Error::FiberMismatch(
            "section value left the affine chart".into(),
        ));
    }
    let d = z.len();
    Ok(CVector::from_fn(d - 1, |i, _| {
        let j = if i < pivot { i } else { i + 1 };
        z[j] / scale
    }))
}

/// Velocity vectors of the section image at `plane`, in chart coordinates:
/// central differences with one Richardson pass along the 2n basis charts.
pub fn section_tangents(
    section: &dyn SectionMap,
    plane: &OrientedPlane,
    step: f64,
) -> Result<Vec<CVector>> {
    let center = section.at(plane)?;
    let pivot = center.pivot();
    let charts = PlaneChart::basis_family(plane);
    let mut tangents = Vec::with_capacity(charts.len());
    for chart in &charts {
        let diff = |h: f64| -> Result<CVector> {
            let plus = chart_coords(&section.at(&chart.point(h)?)?, pivot)?;
            let minus = chart_coords(&section.at(&chart.point(-h)?)?, pivot)?;
            Ok((plus - minus) / Complex64::new(2.0 * h, 0.0))
        };
        let d1 = diff(step)?;
        let d2 = diff(2.0 * step)?;
        tangents.push((d1 * Complex64::new(4.0, 0.0) - d2) / Complex64::new(3.0, 0.0));
    }
    Ok(tangents)
}

/// J-invariance residual of a section image at one plane.
pub fn holomorphy_residual(
    section: &dyn SectionMap,
    plane: &OrientedPlane,
    step: f64,
) -> Result<HolomorphyReport> {
    let tangents = section_tangents(section, plane, step)?;
    let n = plane.ambient_n();
    let dim = 2 * (n + 1);
    let mut m = RMatrix::zeros(dim, tangents.len());
    for (k, t) in tangents.iter().enumerate() {
        m.set_column(k, &stack_complex(t));
    }
    let svd = m.svd(true, false);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-6 * smax)
        .count();
    if rank < 2 * n {
        return Err(Error::RankDeficientTangent {
            rank,
            expected: 2 * n,
        });
    }
    let u = svd.u.expect("requested U");
    let basis = u.columns(0, 2 * n).into_owned();
    let j = j_matrix(n + 1);
    let jb = &j * &basis;
    let residual_m = &jb - &basis * (basis.transpose() * &jb);
    let residual = residual_m.svd(false, false).singular_values.max();
    Ok(HolomorphyReport {
        plane: plane.clone(),
        residual,
        step,
        tangent_rank: rank,
    })
}

/// Wedge-criterion residual on the same velocity data: the smallest over
/// largest singular value of the complex (n+1)×2n velocity matrix. Zero
/// iff the velocities span a complex n-dimensional subspace.
pub fn wedge_rank_residual(
    section: &dyn SectionMap,
    plane: &OrientedPlane,
    step: f64,
) -> Result<f64> {
    let tangents = section_tangents(section, plane, step)?;
    let n = plane.ambient_n();
    let mut c = CMatrix::zeros(n + 1, tangents.len());
    for (k, t) in tangents.iter().enumerate() {
        c.set_column(k, t);
    }
    let sv = complex_singular_values(&c);
    Ok(sv[n] / sv[0])
}

/// Sweep a section over a list of planes.
pub fn sweep_over_planes(
    section: &dyn SectionMap,
    planes: &[OrientedPlane],
    step: f64,
) -> Result<SweepSummary> {
    let mut reports = Vec::with_capacity(planes.len());
    for plane in planes {
        reports.push(holomorphy_residual(section, plane, step)?);
    }
    let max_residual = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
    let mean_residual =
        reports.iter().map(|r| r.residual).sum::<f64>() / reports.len().max(1) as f64;
    Ok(SweepSummary {
        max_residual,
        mean_residual,
        reports,
    })
}

/// Sweep the quadric-induced section over random planes. Deterministic
/// per seed.
pub fn holomorphy_sweep(
    quadric: &Quadric,
    count: usize,
    seed: u64,
    step: f64,
) -> Result<SweepSummary> {
    let n = quadric.ambient_n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes: Vec<OrientedPlane> = (0..count).map(|_| random_plane_with(n, &mut rng)).collect();
    let section = QuadricSection::new(quadric.clone());
    sweep_over_planes(&section, &planes, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::random_plane;
    use crate::quadric::random_real_point_free;
    use crate::section::{ConstantTauSection, FrameField};
    use crate::tol;

    #[test]
    fn unit_quadric_sections_are_holomorphic() {
        let q = Quadric::identity(1);
        let section = QuadricSection::new(q);
        for seed in 0..5u64 {
            let plane = random_plane(1, 200 + seed);
            let r = holomorphy_residual(&section, &plane, tol::FD_STEP).unwrap();
            assert_eq!(r.tangent_rank, 2);
            assert!(r.residual < 1e-6, "residual {}", r.residual);
        }
    }

    #[test]
    fn random_quadric_sections_are_holomorphic() {
        for n in [1usize, 2] {
            let q = random_real_point_free(n, 300 + n as u64);
            let section = QuadricSection::new(q);
            for seed in 0..3u64 {
                let plane = random_plane(n, 400 + seed);
                let r = holomorphy_residual(&section, &plane, tol::FD_STEP).unwrap();
                assert_eq!(r.tangent_rank, 2 * n);
                assert!(r.residual < 1e-5, "n = {n}: residual {}", r.residual);
            }
        }
    }

    #[test]
    fn sweep_summary_shapes() {
        let q = Quadric::identity(1);
        let s = holomorphy_sweep(&q, 20, 9, tol::FD_STEP).unwrap();
        assert_eq!(s.reports.len(), 20);
        assert!(s.max_residual < 1e-6);
        assert!(s.mean_residual <= s.max_residual);
    }

    #[test]
    fn constant_tau_section_matches_wedge_formulation() {
        // over a chart, [u + i v] in a projected frame field is the unit
        // quadric section; both residual formulations must agree near zero
        let anchor = random_plane(1, 510);
        let field = FrameField::new(anchor.clone());
        let section =
            ConstantTauSection::new(Complex64::new(0.0, 1.0), field).unwrap();
        let chart = &PlaneChart::basis_family(&anchor)[1];
        let plane = chart.point(0.25).unwrap();
        let r1 = holomorphy_residual(&section, &plane, tol::FD_STEP)
            .unwrap()
            .residual;
        let r2 = wedge_rank_residual(&section, &plane, tol::FD_STEP).unwrap();
        assert!(r1 < 1e-6 && r2 < 1e-6);
        assert!((r1 - r2).abs() < 1e-8, "projector {r1} vs wedge {r2}");
    }
}
