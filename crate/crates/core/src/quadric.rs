//! Complex quadrics Q ⊂ ℂP^{n+1} given by symmetric matrices up to scale.
//!
//! Writing A = S + iT with S, T real symmetric, Q misses ℝP^{n+1} exactly
//! when the pencil {cos t·S + sin t·T} contains a positive-definite member
//! (a classical Calabi-type theorem, valid in ambient dimension ≥ 3). The
//! definite member also drives the phase normal form: factor it as LLᵀ,
//! push the companion member into the L-inner product, diagonalise
//! orthogonally, and read the phases off the resulting unit-modulus
//! diagonal. The phase list (0 = p₁ ≤ … < π) is the congruence invariant;
//! the basis B with BᵀAB = s·diag(e^{ip_k}) is a witness.

use crate::error::Error;
use crate::linalg::{frobenius, symmetrize, CMatrix, RMatrix, RVector};
use crate::tol;
use crate::Result;
use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A smooth-or-not complex quadric: symmetric (n+2)×(n+2) matrix up to
/// nonzero complex scale. Symmetrised exactly on construction.
#[derive(Debug, Clone)]
pub struct Quadric {
    matrix: CMatrix,
    ambient_n: usize,
}

/// Result of the phase normal form: a real basis B, a global complex
/// scale s and phases 0 = p₁ ≤ … < π with BᵀAB = s·diag(e^{ip_k}).
#[derive(Debug, Clone)]
pub struct PencilNormalForm {
    pub basis: RMatrix,
    pub scale: Complex64,
    pub phases: Vec<f64>,
}

impl Quadric {
    /// Build from any square complex matrix of size ≥ 2; the matrix is
    /// symmetrised exactly.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || r < 2 {
            return Err(Error::DimensionMismatch(format!(
                "quadric matrix must be square of size >= 2, got {r}x{c}"
            )));
        }
        if frobenius(&matrix) == 0.0 {
            return Err(Error::DimensionMismatch(
                "quadric matrix must be nonzero".into(),
            ));
        }
        Ok(Self {
            matrix: symmetrize(&matrix),
            ambient_n: r - 2,
        })
    }

    /// The unit quadric z₁² + … + z_{n+2}² = 0.
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: CMatrix::identity(n + 2, n + 2),
            ambient_n: n,
        }
    }

    /// diag(e^{i p_1}, …, e^{i p_d}).
    pub fn diagonal_phases(phases: &[f64]) -> Result<Self> {
        if phases.len() < 2 {
            return Err(Error::DimensionMismatch(
                "need at least 2 phases for a quadric".into(),
            ));
        }
        let d = phases.len();
        let mut m = CMatrix::zeros(d, d);
        for (k, &p) in phases.iter().enumerate() {
            m[(k, k)] = Complex64::from_polar(1.0, p);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// zᵀAz.
    pub fn evaluate(&self, z: &DVector<Complex64>) -> Result<Complex64> {
        self.polarize(z, z)
    }

    /// The symmetric bilinear form uᵀAv.
    pub fn polarize(
        &self,
        u: &DVector<Complex64>,
        v: &DVector<Complex64>,
    ) -> Result<Complex64> {
        let d = self.dim();
        if u.len() != d || v.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "quadric has dimension {d}, vectors have {} and {}",
                u.len(),
                v.len()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..d {
                row += self.matrix[(i, j)] * v[j];
            }
            acc += u[i] * row;
        }
        Ok(acc)
    }

    /// zᵀAz for a real vector.
    pub fn evaluate_real(&self, x: &RVector) -> Result<Complex64> {
        let z = DVector::from_fn(x.len(), |i, _| Complex64::new(x[i], 0.0));
        self.evaluate(&z)
    }

    /// Scale-invariant smoothness test: |det A| > ε_det · ‖A‖_F^{n+2}.
    pub fn is_smooth(&self) -> bool {
        self.relative_det() > tol::EPS_DET
    }

    fn relative_det(&self) -> f64 {
        let norm = frobenius(&self.matrix);
        let det = self.matrix.clone().lu().determinant().norm();
        det / norm.powi(self.dim() as i32)
    }

    fn require_smooth(&self) -> Result<()> {
        let rel = self.relative_det();
        if rel <= tol::EPS_DET {
            return Err(Error::DegenerateQuadric { rel_det: rel });
        }
        Ok(())
    }

    /// Real and imaginary parts of A/‖A‖_F.
    fn normalized_pencil(&self) -> (RMatrix, RMatrix) {
        let norm = frobenius(&self.matrix);
        let s = self.matrix.map(|z| z.re / norm);
        let t = self.matrix.map(|z| z.im / norm);
        (s, t)
    }

    /// Decide whether the quadric meets ℝP^{n+1}.
    ///
    /// Returns false (no real points) iff some cos t·S + sin t·T is
    /// positive definite, located by a 720-point scan over [0, 2π) with
    /// golden-section refinement. Requires a smooth quadric and ambient
    /// dimension ≥ 3 (the pencil criterion fails in dimension 2).
    pub fn has_real_points(&self) -> Result<bool> {
        if self.dim() < 3 {
            return Err(Error::AmbientTooSmall { dim: self.dim() });
        }
        self.require_smooth()?;
        let (s, t) = self.normalized_pencil();
        let (_, best) = best_definite_member(&s, &t);
        Ok(best <= tol::EPS_DEF)
    }

    /// Phase normal form of a smooth real-point-free quadric.
    pub fn normal_form(&self) -> Result<PencilNormalForm> {
        if self.dim() < 3 {
            return Err(Error::AmbientTooSmall { dim: self.dim() });
        }
        self.require_smooth()?;
        let norm = frobenius(&self.matrix);
        let (s, t) = self.normalized_pencil();
        let (t_star, best) = best_definite_member(&s, &t);
        if best <= tol::EPS_DEF {
            return Err(Error::HasRealPoints(
                "no positive-definite pencil member exists".into(),
            ));
        }
        // definite member P and its companion N with A/‖A‖ = e^{it*}(P + iN)
        let (ct, st) = (t_star.cos(), t_star.sin());
        let p = &s * ct + &t * st;
        let n = &s * (-st) + &t * ct;
        let chol = p
            .clone()
            .cholesky()
            .ok_or_else(|| Error::HasRealPoints("pencil member lost definiteness".into()))?;
        let l = chol.l();
        // M = L⁻¹ N L⁻ᵀ, symmetric in exact arithmetic
        let k = l.solve_lower_triangular(&n).expect("L invertible");
        let m = l
            .solve_lower_triangular(&k.transpose())
            .expect("L invertible");
        let m = (&m + &m.transpose()) * 0.5;
        let eig = m.symmetric_eigen();
        // B₀ = L⁻ᵀ V reduces (P, N) to (I, D) simultaneously
        let b0 = l
            .transpose()
            .solve_upper_triangular(&eig.eigenvectors)
            .expect("L invertible");
        let d = self.dim();
        let mut b = b0;
        let mut theta = Vec::with_capacity(d);
        for kk in 0..d {
            let dk = eig.eigenvalues[kk];
            let col_scale = (1.0 + dk * dk).powf(-0.25);
            for i in 0..d {
                b[(i, kk)] *= col_scale;
            }
            theta.push(t_star + dk.atan());
        }
        let theta_min = theta.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut phases: Vec<f64> = theta.iter().map(|th| th - theta_min).collect();
        // p_k < π is an open condition; wrap roundoff hits of π back to 0
        for p in phases.iter_mut() {
            if *p >= std::f64::consts::PI - tol::PHASE_WRAP {
                *p = 0.0;
            }
        }
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| phases[i].partial_cmp(&phases[j]).unwrap());
        let sorted_phases: Vec<f64> = order.iter().map(|&i| phases[i]).collect();
        let mut sorted_b = RMatrix::zeros(d, d);
        for (dst, &src) in order.iter().enumerate() {
            sorted_b.set_column(dst, &b.column(src));
        }
        let scale = Complex64::from_polar(norm, theta_min);
        Ok(PencilNormalForm {
            basis: sorted_b,
            scale,
            phases: sorted_phases,
        })
    }

    /// The dual quadric, represented by A⁻¹ (scale-equivalent to the
    /// adjugate). For diag(e^{ip_k}) the dual is diag(e^{−ip_k}); dual of a
    /// real-point-free quadric is real-point-free.
    pub fn dual(&self) -> Result<Quadric> {
        self.require_smooth()?;
        let inv = self
            .matrix
            .clone()
            .lu()
            .try_inverse()
            .ok_or(Error::DegenerateQuadric { rel_det: 0.0 })?;
        Quadric::new(inv)
    }

    /// Restriction BᵀAB to the column span of a real (n+2)×k basis, k ≥ 2.
    pub fn restrict(&self, basis: &RMatrix) -> Result<Quadric> {
        let (rows, k) = basis.shape();
        if rows != self.dim() || k < 2 || k > rows {
            return Err(Error::DimensionMismatch(format!(
                "restriction basis must be {}xk with 2 <= k <= {}, got {rows}x{k}",
                self.dim(),
                self.dim()
            )));
        }
        let svd = basis.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin <= 1e-10 * smax {
            return Err(Error::RankDeficientBasis { ratio: smin / smax });
        }
        let bc = basis.map(|x| Complex64::new(x, 0.0));
        Quadric::new(bc.transpose() * &self.matrix * &bc)
    }

    /// Projective equality: matrices agree after rescaling each by its
    /// largest-modulus entry.
    pub fn approx_eq(&self, other: &Quadric, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = pivot_normalized(&self.matrix);
        let b = pivot_normalized(&other.matrix);
        (a - b).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() <= tol * self.dim() as f64
    }
}

fn pivot_normalized(m: &CMatrix) -> CMatrix {
    let mut pivot = Complex64::new(0.0, 0.0);
    let mut best = -1.0;
    for z in m.iter() {
        if z.norm() > best {
            best = z.norm();
            pivot = *z;
        }
    }
    m.map(|z| z / pivot)
}

/// Smallest eigenvalue of cos t·S + sin t·T.
fn lambda_min(s: &RMatrix, t: &RMatrix, angle: f64) -> f64 {
    let m = s * angle.cos() + t * angle.sin();
    m.symmetric_eigen().eigenvalues.min()
}

/// Maximise λ_min(cos t·S + sin t·T) over t ∈ [0, 2π): 720-point grid
/// followed by golden-section refinement of the best bracket.
fn best_definite_member(s: &RMatrix, t: &RMatrix) -> (f64, f64) {
    const GRID: usize = 720;
    let step = 2.0 * std::f64::consts::PI / GRID as f64;
    let mut best_i = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..GRID {
        let val = lambda_min(s, t, i as f64 * step);
        if val > best_val {
            best_val = val;
            best_i = i;
        }
    }
    let center = best_i as f64 * step;
    let (mut a, mut b) = (center - step, center + step);
    // golden-section maximisation
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = lambda_min(s, t, c);
    let mut fd = lambda_min(s, t, d);
    for _ in 0..60 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = lambda_min(s, t, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = lambda_min(s, t, d);
        }
    }
    let t_star = 0.5 * (a + b);
    (t_star, lambda_min(s, t, t_star).max(best_val))
}

impl PencilNormalForm {
    /// ‖BᵀAB − s·diag(e^{ip_k})‖_F / ‖A‖_F for the source quadric.
    pub fn residual(&self, q: &Quadric) -> f64 {
        let d = q.dim();
        let bc = self.basis.map(|x| Complex64::new(x, 0.0));
        let mut target = CMatrix::zeros(d, d);
        for (k, &p) in self.phases.iter().enumerate() {
            target[(k, k)] = self.scale * Complex64::from_polar(1.0, p);
        }
        let lhs = bc.transpose() * q.matrix() * &bc;
        frobenius(&(lhs - target)) / frobenius(q.matrix())
    }
}

/// Draw a random smooth quadric without real points: phases p₁ = 0,
/// p₂,…,p_{n+2} uniform in [0, π − δ), conjugated by a random real
/// congruence re-drawn until well-conditioned. Deterministic per seed.
pub fn random_real_point_free(n: usize, seed: u64) -> Quadric {
    random_real_point_free_with_phases(n, seed).0
}

/// Margin kept below π when drawing phases.
pub const PHASE_MARGIN: f64 = 0.5;

/// As [`random_real_point_free`], also returning the planted phases in
/// ascending order.
pub fn random_real_point_free_with_phases(n: usize, seed: u64) -> (Quadric, Vec<f64>) {
    let d = n + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phases = vec![0.0f64];
    for _ in 1..d {
        phases.push(rng.random::<f64>() * (std::f64::consts::PI - PHASE_MARGIN));
    }
    phases.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let diag = Quadric::diagonal_phases(&phases).expect("d >= 2");
    let g = random_well_conditioned(d, &mut rng);
    let gc = g.map(|x| Complex64::new(x, 0.0));
    let q = Quadric::new(gc.transpose() * diag.matrix() * &gc).expect("congruence keeps size");
    (q, phases)
}

/// Draw a quadric that does contain real points: a congruence of
/// diag(1, −1, e^{ip₃}, …), which vanishes on the real vector
/// G⁻¹(e₁ + e₂). Deterministic per seed.
pub fn random_with_real_points(n: usize, seed: u64) -> Quadric {
    let d = n + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = CMatrix::zeros(d, d);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m[(1, 1)] = Complex64::new(-1.0, 0.0);
    for k in 2..d {
        let p = rng.random::<f64>() * (std::f64::consts::PI - PHASE_MARGIN);
        m[(k, k)] = Complex64::from_polar(1.0, p);
    }
    let g = random_well_conditioned(d, &mut rng);
    let gc = g.map(|x| Complex64::new(x, 0.0));
    Quadric::new(gc.transpose() * m * &gc).expect("congruence keeps size")
}

/// Standard-normal matrix re-drawn until its condition number is ≤ 10.
pub fn random_well_conditioned(d: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    loop {
        let g = RMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let svd = g.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin > 0.0 && smax / smin <= 10.0 {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;
    use std::f64::consts::PI;

    fn cvec(entries: &[(f64, f64)]) -> DVector<Complex64> {
        DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&(re, im)| Complex64::new(re, im)),
        )
    }

    #[test]
    fn evaluate_unit_quadric() {
        let q = Quadric::identity(1);
        let z = cvec(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        assert!(q.evaluate(&z).unwrap().norm() < 1e-15);
        let x = cvec(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert!((q.evaluate(&x).unwrap() - Complex64::new(14.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluate_direct_sum() {
        let q = Quadric::diagonal_phases(&[0.0, PI / 2.0]).unwrap();
        let z = cvec(&[(1.0, 0.0), (1.0, 0.0)]);
        assert!((q.evaluate(&z).unwrap() - Complex64::new(1.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn polarize_matches_evaluate_and_is_symmetric() {
        let q = Quadric::new(CMatrix::from_fn(4, 4, |i, j| {
            Complex64::new((i * j) as f64 + 1.0, i as f64 - j as f64)
        }))
        .unwrap();
        let u = cvec(&[(1.0, 0.5), (0.0, -1.0), (2.0, 0.0), (0.3, 0.3)]);
        let v = cvec(&[(0.0, 1.0), (1.0, 0.0), (-1.0, 2.0), (0.0, 0.0)]);
        let uv = q.polarize(&u, &v).unwrap();
        let vu = q.polarize(&v, &u).unwrap();
        assert!((uv - vu).norm() < 1e-12);
        assert!((q.polarize(&u, &u).unwrap() - q.evaluate(&u).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn smoothness() {
        assert!(Quadric::identity(1).is_smooth());
        let mut m = CMatrix::identity(3, 3);
        m[(2, 2)] = Complex64::new(0.0, 0.0);
        assert!(!Quadric::new(m).unwrap().is_smooth());
        // random congruence of the identity stays smooth
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_well_conditioned(4, &mut rng);
        let gc = g.map(|x| Complex64::new(x, 0.0));
        let q = Quadric::new(gc.transpose() * CMatrix::identity(4, 4) * &gc).unwrap();
        assert!(q.is_smooth());
    }

    #[test]
    fn real_points_decision() {
        // x^T x > 0: no real points
        assert!(!Quadric::identity(1).has_real_points().unwrap());
        // signature (+,-,+): x = (1,1,0) is a real zero
        let q = Quadric::new(CMatrix::from_diagonal(&cvec(&[
            (1.0, 0.0),
            (-1.0, 0.0),
            (1.0, 0.0),
        ])))
        .unwrap();
        assert!(q.has_real_points().unwrap());
        // diag(1, e^{i pi/3}, e^{i pi/2}): phases within [0, π) ⇒ no real points
        let q = Quadric::diagonal_phases(&[0.0, PI / 3.0, PI / 2.0]).unwrap();
        assert!(!q.has_real_points().unwrap());
    }

    #[test]
    fn real_points_scale_invariance() {
        let q = Quadric::diagonal_phases(&[0.0, 0.9, 2.2]).unwrap();
        let c = Complex64::new(-2.3, 1.7);
        let qc = Quadric::new(q.matrix() * c).unwrap();
        assert_eq!(
            q.has_real_points().unwrap(),
            qc.has_real_points().unwrap()
        );
        let f = q.normal_form().unwrap();
        let fc = qc.normal_form().unwrap();
        for (a, b) in f.phases.iter().zip(fc.phases.iter()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn ambient_too_small() {
        let q = Quadric::diagonal_phases(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            q.has_real_points(),
            Err(Error::AmbientTooSmall { .. })
        ));
    }

    #[test]
    fn normal_form_identity_and_diagonal() {
        let f = Quadric::identity(1).normal_form().unwrap();
        assert!(f.phases.iter().all(|p| p.abs() < 1e-10));
        assert!(f.residual(&Quadric::identity(1)) < 1e-10);

        let phases = [0.0, 0.7, 1.3, 2.4];
        let q = Quadric::diagonal_phases(&phases).unwrap();
        let f = q.normal_form().unwrap();
        for (a, b) in f.phases.iter().zip(phases.iter()) {
            assert!((a - b).abs() < 1e-9, "phase {a} vs planted {b}");
        }
        assert!(f.residual(&q) < 1e-9);
    }

    #[test]
    fn normal_form_recovers_planted_phases_under_congruence() {
        for seed in 0..20u64 {
            let n = 1 + (seed % 3) as usize;
            let (q, planted) = random_real_point_free_with_phases(n, 1000 + seed);
            let f = q.normal_form().unwrap();
            assert!(f.residual(&q) < 1e-8, "residual {}", f.residual(&q));
            for (a, b) in f.phases.iter().zip(planted.iter()) {
                assert!((a - b).abs() < 1e-8, "phase {a} vs planted {b}");
            }
        }
    }

    #[test]
    fn normal_form_rejects_real_points() {
        let q = Quadric::new(CMatrix::from_diagonal(&cvec(&[
            (1.0, 0.0),
            (-1.0, 0.0),
            (1.0, 0.0),
        ])))
        .unwrap();
        assert!(matches!(q.normal_form(), Err(Error::HasRealPoints(_))));
    }

    #[test]
    fn dual_of_diagonal_conjugates_phases() {
        let q = Quadric::diagonal_phases(&[0.0, 0.8, 1.9]).unwrap();
        let dual = q.dual().unwrap();
        let expected = Quadric::diagonal_phases(&[0.0, -0.8, -1.9]).unwrap();
        assert!(dual.approx_eq(&expected, 1e-12));
        // involution up to scale
        assert!(dual.dual().unwrap().approx_eq(&q, 1e-12));
    }

    #[test]
    fn dual_preserves_real_point_freeness() {
        for seed in 0..10u64 {
            let q = random_real_point_free(2, 40 + seed);
            let d = q.dual().unwrap();
            assert!(d.is_smooth());
            assert!(!d.has_real_points().unwrap());
        }
    }

    #[test]
    fn restrict_coordinate_subspace() {
        let q = Quadric::diagonal_phases(&[0.0, 1.1, 2.0]).unwrap();
        let mut b = RMatrix::zeros(3, 2);
        b[(0, 0)] = 1.0;
        b[(2, 1)] = 1.0;
        let r = q.restrict(&b).unwrap();
        let expected = Quadric::diagonal_phases(&[0.0, 2.0]).unwrap();
        assert!(r.approx_eq(&expected, 1e-12));

        let id = Quadric::identity(1);
        let mut b2 = RMatrix::zeros(3, 2);
        b2[(0, 0)] = 1.0;
        b2[(1, 1)] = 1.0;
        assert!(id
            .restrict(&b2)
            .unwrap()
            .approx_eq(&Quadric::diagonal_phases(&[0.0, 0.0]).unwrap(), 1e-12));
    }

    #[test]
    fn restrict_rejects_rank_deficient_basis() {
        let q = Quadric::identity(2);
        let mut b = RMatrix::zeros(4, 2);
        b.set_column(0, &dvector![1.0, 1.0, 0.0, 0.0]);
        b.set_column(1, &dvector![2.0, 2.0, 0.0, 0.0]);
        assert!(matches!(
            q.restrict(&b),
            Err(Error::RankDeficientBasis { .. })
        ));
    }

    #[test]
    fn restriction_stays_real_point_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in 0..10u64 {
            let q = random_real_point_free(3, 700 + seed);
            // random 3-dimensional subspace of R^5
            let b = RMatrix::from_fn(5, 3, |_, _| rng.sample::<f64, _>(StandardNormal));
            let r = q.restrict(&b).unwrap();
            assert!(r.is_smooth());
            assert!(!r.has_real_points().unwrap());
        }
    }

    #[test]
    fn random_ensemble_is_smooth_and_real_point_free() {
        for seed in 0..10u64 {
            let q = random_real_point_free(2, seed);
            assert!(q.is_smooth());
            assert!(!q.has_real_points().unwrap());
        }
        for seed in 0..10u64 {
            let q = random_with_real_points(2, seed);
            assert!(q.is_smooth());
            assert!(q.has_real_points().unwrap());
        }
    }
}
