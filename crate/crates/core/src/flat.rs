//! Exact verification of the flat model's structure equations, curvature
//! forms, Bianchi identity and gauge transformation laws.
//!
//! All identities are checked on left-invariant data at the Lie-algebra
//! level of 𝔰𝔩(n+2, ℝ): for a left-invariant 1-form μ,
//! dμ(X, Y) = −μ([X, Y]), which turns every differential identity into
//! finite-dimensional linear algebra with residuals at roundoff.
//!
//! Conventions. A tangent vector X splits into blocks
//! X = [[α (2×2), β (2×n)], [η (n×2), γ (n×n)]], and the adapted forms are
//!
//! ```text
//! ω = α²₁            2ξ = (α¹₂ + α²₁) + i(α²₂ − α¹₁)
//! φ = γ − Iₙ α²₂     ζ = i(η₁ + i η₂)     (η₁, η₂ the columns of η)
//! ```
//!
//! Wedge products carry no 1/2 factor: (μ∧ν)(X,Y) = μ(X)ν(Y) − μ(Y)ν(X),
//! and for a 2-form A, (A∧ν)(X,Y,Z) = A(X,Y)ν(Z) − A(X,Z)ν(Y) + A(Y,Z)ν(X).
//! The same convention is applied on both sides of every identity, so the
//! residuals are convention-independent.

use crate::error::Error;
use crate::linalg::{CMatrix, CVector, RMatrix};
use crate::Result;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// An element of 𝔰𝔩(n+2, ℝ): a real (n+2)×(n+2) matrix with trace 0.
#[derive(Debug, Clone)]
pub struct TracelessMatrix {
    entries: RMatrix,
}

impl TracelessMatrix {
    /// Accept a matrix that is already traceless (relative to its norm).
    pub fn new(entries: RMatrix) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r < 3 {
            return Err(Error::DimensionMismatch(format!(
                "traceless matrix must be square of size >= 3, got {r}x{c}"
            )));
        }
        let tr = entries.trace();
        if tr.abs() > 1e-12 * entries.norm().max(1.0) {
            return Err(Error::DimensionMismatch(format!(
                "matrix has trace {tr:.3e}; project it first"
            )));
        }
        Ok(Self { entries })
    }

    /// Project an arbitrary square matrix onto 𝔰𝔩 by removing the trace.
    pub fn project(mut entries: RMatrix) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r < 3 {
            return Err(Error::DimensionMismatch(format!(
                "traceless matrix must be square of size >= 3, got {r}x{c}"
            )));
        }
        let shift = entries.trace() / r as f64;
        for i in 0..r {
            entries[(i, i)] -= shift;
        }
        Ok(Self { entries })
    }

    /// Standard-normal element, trace-projected. Deterministic per rng state.
    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let d = n + 2;
        let m = RMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
        Self::project(m).expect("projection cannot fail on square input")
    }

    /// Random element with vanishing β-block: a tangent vector of the flat
    /// model's total space (the block-lower-triangular subgroup covering
    /// the bundle). The curvature identities are exact on this subalgebra;
    /// β-directions are the gauge directions quotiented out of the bundle
    /// and contribute a β∧η Maurer–Cartan term to dω, dξ, dφ.
    pub fn random_flat_model(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let d = n + 2;
        let mut m = RMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
        for r in 0..2 {
            for c in 2..d {
                m[(r, c)] = 0.0;
            }
        }
        Self::project(m).expect("projection cannot fail on square input")
    }

    /// Basis element E_{ij} − (trace part); for i ≠ j simply E_{ij}.
    pub fn elementary(d: usize, i: usize, j: usize) -> Self {
        let mut m = RMatrix::zeros(d, d);
        m[(i, j)] = 1.0;
        Self::project(m).expect("square input")
    }

    pub fn entries(&self) -> &RMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ambient_n(&self) -> usize {
        self.dim() - 2
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Lie bracket [X, Y] = XY − YX.
    pub fn bracket(&self, other: &TracelessMatrix) -> TracelessMatrix {
        TracelessMatrix {
            entries: &self.entries * &other.entries - &other.entries * &self.entries,
        }
    }
}

/// The 2/n block split of a Lie-algebra element.
#[derive(Debug, Clone)]
pub struct MCBlocks {
    pub alpha: RMatrix,
    pub beta: RMatrix,
    pub eta: RMatrix,
    pub gamma: RMatrix,
}

/// Partition X into [[α, β], [η, γ]] with the stated sizes; Tr α + Tr γ = 0
/// carries over from tracelessness.
pub fn mc_blocks(x: &TracelessMatrix, n: usize) -> Result<MCBlocks> {
    if x.dim() != n + 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected size {}, got {}",
            n + 2,
            x.dim()
        )));
    }
    let m = x.entries();
    Ok(MCBlocks {
        alpha: m.view((0, 0), (2, 2)).into_owned(),
        beta: m.view((0, 2), (2, n)).into_owned(),
        eta: m.view((2, 0), (n, 2)).into_owned(),
        gamma: m.view((2, 2), (n, n)).into_owned(),
    })
}

impl MCBlocks {
    /// Inverse of [`mc_blocks`].
    pub fn reassemble(&self) -> Result<TracelessMatrix> {
        let n = self.gamma.nrows();
        let mut m = RMatrix::zeros(n + 2, n + 2);
        m.view_mut((0, 0), (2, 2)).copy_from(&self.alpha);
        m.view_mut((0, 2), (2, n)).copy_from(&self.beta);
        m.view_mut((2, 0), (n, 2)).copy_from(&self.eta);
        m.view_mut((2, 2), (n, n)).copy_from(&self.gamma);
        TracelessMatrix::new(m)
    }
}

/// Values of the adapted 1-forms (ω, ξ, φ, ζ) on one tangent vector.
#[derive(Debug, Clone)]
pub struct AdaptedFormValues {
    pub omega: f64,
    pub xi: Complex64,
    pub phi: RMatrix,
    pub zeta: CVector,
}

/// Evaluator of the adapted forms; the CLI's mutation hook swaps in a
/// deliberately corrupted variant to prove the harness detects breakage.
pub trait FormEvaluator: Sync {
    fn forms(&self, x: &TracelessMatrix) -> AdaptedFormValues;
}

/// The flat model's forms (see the module docs for the formulas).
#[derive(Debug, Clone, Copy, Default)]
pub struct FlatForms;

impl FormEvaluator for FlatForms {
    fn forms(&self, x: &TracelessMatrix) -> AdaptedFormValues {
        flat_forms(x)
    }
}

/// ξ with a flipped sign in its α¹₂-term — a wrong formula used to verify
/// that the identity checks actually fail on corrupted input.
#[derive(Debug, Clone, Copy, Default)]
pub struct BrokenXiForms;

impl FormEvaluator for BrokenXiForms {
    fn forms(&self, x: &TracelessMatrix) -> AdaptedFormValues {
        let mut f = flat_forms(x);
        let m = x.entries();
        // 2ξ' = (α¹₂ − α²₁) + i(α²₂ − α¹₁)
        f.xi = Complex64::new(
            0.5 * (m[(0, 1)] - m[(1, 0)]),
            0.5 * (m[(1, 1)] - m[(0, 0)]),
        );
        f
    }
}

/// Evaluate (ω, ξ, φ, ζ) on a tangent vector.
pub fn flat_forms(x: &TracelessMatrix) -> AdaptedFormValues {
    let n = x.ambient_n();
    let m = x.entries();
    let omega = m[(1, 0)];
    let xi = Complex64::new(
        0.5 * (m[(0, 1)] + m[(1, 0)]),
        0.5 * (m[(1, 1)] - m[(0, 0)]),
    );
    let mut phi = m.view((2, 2), (n, n)).into_owned();
    let a22 = m[(1, 1)];
    for i in 0..n {
        phi[(i, i)] -= a22;
    }
    let zeta = CVector::from_fn(n, |i, _| {
        // i(η^i₁ + i η^i₂)
        Complex64::new(-m[(2 + i, 1)], m[(2 + i, 0)])
    });
    AdaptedFormValues {
        omega,
        xi,
        phi,
        zeta,
    }
}

/// d of a left-invariant form on (X, Y): −form([X, Y]).
pub fn d_left_invariant<V, F>(form: F, x: &TracelessMatrix, y: &TracelessMatrix) -> V
where
    V: std::ops::Neg<Output = V>,
    F: Fn(&TracelessMatrix) -> V,
{
    -form(&x.bracket(y))
}

/// The complex matrix i(ω − ξ)Iₙ + φ at one tangent vector.
fn connection_matrix(f: &AdaptedFormValues) -> CMatrix {
    let n = f.phi.nrows();
    let diag = Complex64::new(0.0, 1.0) * (Complex64::new(f.omega, 0.0) - f.xi);
    CMatrix::from_fn(n, n, |i, j| {
        let mut v = Complex64::new(f.phi[(i, j)], 0.0);
        if i == j {
            v += diag;
        }
        v
    })
}

/// Residual of the structure equation
/// dζ + (i(ω − ξ)Iₙ + φ)∧ζ + iξIₙ∧ζ̄ on (X, Y); zero in the flat model
/// (the torsion τ vanishes).
pub fn verify_structure_equation(x: &TracelessMatrix, y: &TracelessMatrix) -> CVector {
    verify_structure_equation_with(&FlatForms, x, y)
}

/// As [`verify_structure_equation`], with a caller-chosen evaluator.
pub fn verify_structure_equation_with(
    eval: &dyn FormEvaluator,
    x: &TracelessMatrix,
    y: &TracelessMatrix,
) -> CVector {
    let fx = eval.forms(x);
    let fy = eval.forms(y);
    let fb = eval.forms(&x.bracket(y));
    let dzeta = -&fb.zeta;
    let cx = connection_matrix(&fx);
    let cy = connection_matrix(&fy);
    let wedge_conn = &cx * &fy.zeta - &cy * &fx.zeta;
    let i = Complex64::new(0.0, 1.0);
    let wedge_conj = (fy.zeta.map(|z| z.conj()) * fx.xi - fx.zeta.map(|z| z.conj()) * fy.xi) * i;
    dzeta + wedge_conn + wedge_conj
}

/// Values of the curvature forms
///
/// ```text
/// Ω = dω + ω∧i(ξ − ξ̄)    Ξ = dξ + ξ∧i(ξ̄ − 2ω)
/// Φ = dφ + φ∧φ − ω∧(ξ + ξ̄)Iₙ
/// ```
///
/// on (X, Y). All three vanish on flat-model tangents (vanishing β-block,
/// see [`TracelessMatrix::random_flat_model`]); β-components inject the
/// β∧η term of the ambient Maurer–Cartan equation, which lives in the
/// gauge directions the bundle quotient removes.
pub fn verify_curvature_zero(
    x: &TracelessMatrix,
    y: &TracelessMatrix,
) -> (f64, Complex64, RMatrix) {
    verify_curvature_zero_with(&FlatForms, x, y)
}

/// As [`verify_curvature_zero`], with a caller-chosen evaluator.
pub fn verify_curvature_zero_with(
    eval: &dyn FormEvaluator,
    x: &TracelessMatrix,
    y: &TracelessMatrix,
) -> (f64, Complex64, RMatrix) {
    let fx = eval.forms(x);
    let fy = eval.forms(y);
    let fb = eval.forms(&x.bracket(y));
    // Ω = dω + ω ∧ i(ξ − ξ̄);  i(ξ − ξ̄) = −2 Im ξ
    let big_omega = -fb.omega + fx.omega * (-2.0 * fy.xi.im) - fy.omega * (-2.0 * fx.xi.im);
    // Ξ = dξ + ξ ∧ i(ξ̄ − 2ω)
    let i = Complex64::new(0.0, 1.0);
    let gx = i * (fx.xi.conj() - 2.0 * Complex64::new(fx.omega, 0.0));
    let gy = i * (fy.xi.conj() - 2.0 * Complex64::new(fy.omega, 0.0));
    let big_xi = -fb.xi + fx.xi * gy - fy.xi * gx;
    // Φ = dφ + φ ∧ φ − ω ∧ (ξ + ξ̄) Iₙ;  ξ + ξ̄ = 2 Re ξ
    let n = fx.phi.nrows();
    let scalar = fx.omega * (2.0 * fy.xi.re) - fy.omega * (2.0 * fx.xi.re);
    let mut big_phi = -&fb.phi + &fx.phi * &fy.phi - &fy.phi * &fx.phi;
    for i in 0..n {
        big_phi[(i, i)] -= scalar;
    }
    (big_omega, big_xi, big_phi)
}

/// Residual of the Bianchi identity
/// dτ − (i(Ω − Ξ)Iₙ + Φ)∧ζ − iΞIₙ∧ζ̄ on (X, Y, Z). With τ = 0 and flat
/// curvature every term vanishes; the value exercises the 3-form
/// plumbing.
pub fn verify_bianchi(
    x: &TracelessMatrix,
    y: &TracelessMatrix,
    z: &TracelessMatrix,
) -> CVector {
    let n = x.ambient_n();
    let i = Complex64::new(0.0, 1.0);
    // A(U, V) = i(Ω − Ξ)(U, V) Iₙ + Φ(U, V) as a complex matrix
    let curv = |u: &TracelessMatrix, v: &TracelessMatrix| -> CMatrix {
        let (om, xi, phi) = verify_curvature_zero(u, v);
        CMatrix::from_fn(n, n, |r, c| {
            let mut val = Complex64::new(phi[(r, c)], 0.0);
            if r == c {
                val += i * (Complex64::new(om, 0.0) - xi);
            }
            val
        })
    };
    let xi2 = |u: &TracelessMatrix, v: &TracelessMatrix| -> Complex64 {
        verify_curvature_zero(u, v).1
    };
    let zeta = |u: &TracelessMatrix| flat_forms(u).zeta;
    // (A ∧ ζ)(X,Y,Z) = A(X,Y)ζ(Z) − A(X,Z)ζ(Y) + A(Y,Z)ζ(X)
    let term1 = curv(x, y) * zeta(z) - curv(x, z) * zeta(y) + curv(y, z) * zeta(x);
    let zbar = |u: &TracelessMatrix| flat_forms(u).zeta.map(|w| w.conj());
    let term2 = (zbar(z) * xi2(x, y) - zbar(y) * xi2(x, z) + zbar(x) * xi2(y, z)) * i;
    // dτ = 0 in the flat model
    -(term1 + term2)
}

/// Residual norms of the gauge transformation law under the unipotent
/// element h with block b (right translation, computed through the
/// adjoint action X ↦ h⁻¹Xh).
#[derive(Debug, Clone)]
pub struct GaugeResiduals {
    pub omega: f64,
    pub xi: f64,
    pub phi: f64,
    pub zeta: f64,
}

impl GaugeResiduals {
    pub fn max(&self) -> f64 {
        self.omega.max(self.xi).max(self.phi).max(self.zeta)
    }
}

/// Check the right-translation pullback formulas of the adapted forms:
/// with a_k = −i(b_{1k} − i b_{2k}),
///
/// ```text
/// ω ↦ ω + Re(a_k) Im(ζ^k)          ξ ↦ ξ + (1/2i) ā_k ζ^k
/// φⁱ_l ↦ φⁱ_l + Re(a_l ζⁱ) + δⁱ_l Re(a_k) Re(ζ^k)
/// ζ ↦ ζ                            (η is basic for the quotient)
/// ```
pub fn gauge_action_check(b: &RMatrix, x: &TracelessMatrix) -> Result<GaugeResiduals> {
    let n = x.ambient_n();
    if b.shape() != (2, n) {
        return Err(Error::DimensionMismatch(format!(
            "gauge block must be 2x{n}, got {}x{}",
            b.nrows(),
            b.ncols()
        )));
    }
    let d = n + 2;
    let mut h = RMatrix::identity(d, d);
    let mut h_inv = RMatrix::identity(d, d);
    for r in 0..2 {
        for c in 0..n {
            h[(r, 2 + c)] = b[(r, c)];
            h_inv[(r, 2 + c)] = -b[(r, c)];
        }
    }
    let pulled = TracelessMatrix::new(&h_inv * x.entries() * &h)?;
    let f = flat_forms(x);
    let fp = flat_forms(&pulled);
    let a: Vec<Complex64> = (0..n)
        .map(|k| -Complex64::new(0.0, 1.0) * Complex64::new(b[(0, k)], -b[(1, k)]))
        .collect();
    // ω
    let mut omega_shift = 0.0;
    for k in 0..n {
        omega_shift += a[k].re * f.zeta[k].im;
    }
    let r_omega = (fp.omega - f.omega - omega_shift).abs();
    // ξ
    let half_over_i = Complex64::new(0.0, -0.5); // 1/(2i)
    let mut xi_shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        xi_shift += half_over_i * a[k].conj() * f.zeta[k];
    }
    let r_xi = (fp.xi - f.xi - xi_shift).norm();
    // φ
    let mut phi_shift = RMatrix::zeros(n, n);
    let trace_like: f64 = (0..n).map(|k| a[k].re * f.zeta[k].re).sum();
    for i in 0..n {
        for l in 0..n {
            phi_shift[(i, l)] = (a[l] * f.zeta[i]).re;
            if i == l {
                phi_shift[(i, l)] += trace_like;
            }
        }
    }
    let r_phi = (&fp.phi - &f.phi - phi_shift).norm();
    // ζ is basic
    let r_zeta = (&fp.zeta - &f.zeta).norm();
    Ok(GaugeResiduals {
        omega: r_omega,
        xi: r_xi,
        phi: r_phi,
        zeta: r_zeta,
    })
}

/// One trial's worth of random inputs for the identity checks: generic
/// pairs/triples for the structure equation, Bianchi, gauge and shift
/// identities, flat-model pairs for the curvature forms.
#[derive(Debug, Clone)]
pub struct IdentityTrialInputs {
    pub x: TracelessMatrix,
    pub y: TracelessMatrix,
    pub z: TracelessMatrix,
    pub flat_x: TracelessMatrix,
    pub flat_y: TracelessMatrix,
    pub gauge_block: RMatrix,
    pub shift: Vec<Complex64>,
}

/// Deterministic input ensemble for the identity checks.
pub fn random_identity_inputs(n: usize, trials: usize, seed: u64) -> Vec<IdentityTrialInputs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    (0..trials)
        .map(|_| IdentityTrialInputs {
            x: TracelessMatrix::random(n, &mut rng),
            y: TracelessMatrix::random(n, &mut rng),
            z: TracelessMatrix::random(n, &mut rng),
            flat_x: TracelessMatrix::random_flat_model(n, &mut rng),
            flat_y: TracelessMatrix::random_flat_model(n, &mut rng),
            gauge_block: RMatrix::from_fn(2, n, |_, _| rng.sample::<f64, _>(StandardNormal)),
            shift: (0..n)
                .map(|_| {
                    Complex64::new(
                        rng.sample::<f64, _>(StandardNormal),
                        rng.sample::<f64, _>(StandardNormal),
                    )
                })
                .collect(),
        })
        .collect()
}

/// Residual of the structure equation for the shifted forms
///
/// ```text
/// ω′ = ω + Re(a_k) Im(ζ^k)         ξ′ = ξ + (1/2i) ā_k ζ^k
/// φ′ⁱ_l = φⁱ_l + Re(a_l ζⁱ) + δⁱ_l Re(a_k) Re(ζ^k)
/// ```
///
/// with constant coefficients a ∈ ℂⁿ: the shift leaves the (zero) torsion
/// unchanged, so dζ + (i(ω′ − ξ′)Iₙ + φ′)∧ζ + iξ′Iₙ∧ζ̄ still vanishes.
/// The ξ-difference is the (1,0)-combination λ_k ζ^k with λ_k = ā_k/2i.
pub fn verify_adtors_same_torsion(
    a: &[Complex64],
    x: &TracelessMatrix,
    y: &TracelessMatrix,
) -> Result<CVector> {
    let n = x.ambient_n();
    if a.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need {n} coefficients, got {}",
            a.len()
        )));
    }
    let shifted = |v: &TracelessMatrix| -> AdaptedFormValues {
        let mut f = flat_forms(v);
        let half_over_i = Complex64::new(0.0, -0.5);
        let mut om = f.omega;
        let mut xi = f.xi;
        let trace_like: f64 = (0..n).map(|k| a[k].re * f.zeta[k].re).sum();
        for k in 0..n {
            om += a[k].re * f.zeta[k].im;
            xi += half_over_i * a[k].conj() * f.zeta[k];
        }
        for i in 0..n {
            for l in 0..n {
                f.phi[(i, l)] += (a[l] * f.zeta[i]).re;
                if i == l {
                    f.phi[(i, l)] += trace_like;
                }
            }
        }
        f.omega = om;
        f.xi = xi;
        f
    };
    let fx = shifted(x);
    let fy = shifted(y);
    let dzeta = -flat_forms(&x.bracket(y)).zeta;
    let cx = connection_matrix(&fx);
    let cy = connection_matrix(&fy);
    let i = Complex64::new(0.0, 1.0);
    let wedge_conn = &cx * &fy.zeta - &cy * &fx.zeta;
    let wedge_conj = (fy.zeta.map(|z| z.conj()) * fx.xi - fx.zeta.map(|z| z.conj()) * fy.xi) * i;
    Ok(dzeta + wedge_conn + wedge_conj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn mc_blocks_round_trip() {
        let mut r = rng(1);
        let x = TracelessMatrix::random(3, &mut r);
        let blocks = mc_blocks(&x, 3).unwrap();
        assert!((blocks.alpha.trace() + blocks.gamma.trace()).abs() < 1e-12);
        let back = blocks.reassemble().unwrap();
        assert!((back.entries() - x.entries()).norm() < 1e-15);
        // E21 lands in the alpha block
        let e21 = TracelessMatrix::elementary(5, 1, 0);
        let b = mc_blocks(&e21, 3).unwrap();
        assert_eq!(b.alpha[(1, 0)], 1.0);
        assert!(b.beta.norm() == 0.0 && b.eta.norm() == 0.0 && b.gamma.norm() == 0.0);
    }

    #[test]
    fn flat_forms_on_basis_elements() {
        // X = E21: ω = 1, ξ = 1/2
        let x = TracelessMatrix::elementary(3, 1, 0);
        let f = flat_forms(&x);
        assert_eq!(f.omega, 1.0);
        assert!((f.xi - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        // eta column 1 = e_k gives ζ = i e_k
        let x = TracelessMatrix::elementary(4, 2, 0);
        let f = flat_forms(&x);
        assert!((f.zeta[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(f.zeta[1].norm() < 1e-15);
        // diagonal traceless in gamma: ξ = 0, ω = 0
        let mut m = RMatrix::zeros(4, 4);
        m[(2, 2)] = 1.0;
        m[(3, 3)] = -1.0;
        let x = TracelessMatrix::new(m).unwrap();
        let f = flat_forms(&x);
        assert_eq!(f.omega, 0.0);
        assert_eq!(f.xi, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn d_left_invariant_properties() {
        let mut r = rng(2);
        let fixed = TracelessMatrix::random(2, &mut r);
        let trace_form = |v: &TracelessMatrix| (v.entries() * fixed.entries()).trace();
        // commuting inputs give zero
        let x = TracelessMatrix::elementary(4, 2, 0);
        let d = d_left_invariant(trace_form, &x, &x);
        assert_eq!(d, 0.0);
        // antisymmetry
        let y = TracelessMatrix::random(2, &mut r);
        let z = TracelessMatrix::random(2, &mut r);
        let dyz = d_left_invariant(trace_form, &y, &z);
        let dzy = d_left_invariant(trace_form, &z, &y);
        assert!((dyz + dzy).abs() < 1e-12);
    }

    #[test]
    fn d_squared_vanishes_by_jacobi() {
        let mut r = rng(3);
        for _ in 0..20 {
            let x = TracelessMatrix::random(2, &mut r);
            let y = TracelessMatrix::random(2, &mut r);
            let z = TracelessMatrix::random(2, &mut r);
            let mu = |v: &TracelessMatrix| flat_forms(v).xi;
            // d(dμ)(X,Y,Z) = μ([[X,Y],Z]) − μ([[X,Z],Y]) + μ([[Y,Z],X])
            let dd = mu(&x.bracket(&y).bracket(&z)) - mu(&x.bracket(&z).bracket(&y))
                + mu(&y.bracket(&z).bracket(&x));
            let scale = x.norm() * y.norm() * z.norm();
            assert!(dd.norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn structure_equation_exact_on_random_pairs() {
        for n in [1usize, 2, 3, 5] {
            let mut r = rng(100 + n as u64);
            for _ in 0..50 {
                let x = TracelessMatrix::random(n, &mut r);
                let y = TracelessMatrix::random(n, &mut r);
                let res = verify_structure_equation(&x, &y);
                let scale = (x.norm() * y.norm()).max(1.0);
                assert!(res.norm() < 1e-12 * scale, "n = {n}: {}", res.norm());
            }
        }
    }

    #[test]
    fn structure_equation_alternating() {
        let mut r = rng(7);
        let x = TracelessMatrix::random(3, &mut r);
        assert!(verify_structure_equation(&x, &x).norm() < 1e-14);
    }

    #[test]
    fn curvature_forms_vanish_on_flat_model_tangents() {
        for n in [1usize, 2, 3] {
            let mut r = rng(200 + n as u64);
            for _ in 0..50 {
                let x = TracelessMatrix::random_flat_model(n, &mut r);
                let y = TracelessMatrix::random_flat_model(n, &mut r);
                let (om, xi, phi) = verify_curvature_zero(&x, &y);
                let scale = (x.norm() * y.norm()).max(1.0);
                assert!(om.abs() < 1e-12 * scale);
                assert!(xi.norm() < 1e-12 * scale);
                assert!(phi.norm() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn curvature_sees_the_gauge_directions() {
        // a β∧η pair: the ambient Maurer–Cartan term is visible and O(1)
        let x = TracelessMatrix::elementary(3, 1, 2); // β-block
        let y = TracelessMatrix::elementary(3, 2, 0); // η-block
        let (om, _, _) = verify_curvature_zero(&x, &y);
        assert!(om.abs() > 0.5);
    }

    #[test]
    fn bianchi_vanishes_and_is_antisymmetric() {
        let mut r = rng(11);
        for _ in 0..20 {
            let x = TracelessMatrix::random(2, &mut r);
            let y = TracelessMatrix::random(2, &mut r);
            let z = TracelessMatrix::random(2, &mut r);
            let scale = (x.norm() * y.norm() * z.norm()).max(1.0);
            assert!(verify_bianchi(&x, &y, &z).norm() < 1e-12 * scale);
            // degenerate triple
            assert!(verify_bianchi(&x, &x, &z).norm() < 1e-12 * scale);
            // permutation antisymmetry of the evaluator
            let pxyz = verify_bianchi(&x, &y, &z);
            let pyxz = verify_bianchi(&y, &x, &z);
            assert!((pxyz + pyxz).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn gauge_action_formulas_are_exact() {
        for n in [1usize, 2, 3] {
            let mut r = rng(300 + n as u64);
            for _ in 0..30 {
                let b = RMatrix::from_fn(2, n, |_, _| r.sample::<f64, _>(StandardNormal));
                let x = TracelessMatrix::random(n, &mut r);
                let res = gauge_action_check(&b, &x).unwrap();
                let scale = (b.norm() * x.norm()).max(1.0);
                assert!(res.max() < 1e-13 * scale, "n = {n}: {:?}", res);
            }
        }
    }

    #[test]
    fn gauge_action_zero_block_is_identity() {
        let mut r = rng(13);
        let x = TracelessMatrix::random(2, &mut r);
        let b = RMatrix::zeros(2, 2);
        let res = gauge_action_check(&b, &x).unwrap();
        assert_eq!(res.max(), 0.0);
    }

    #[test]
    fn adtors_shift_preserves_zero_torsion() {
        for n in [1usize, 2, 3] {
            let mut r = rng(400 + n as u64);
            for _ in 0..30 {
                let a: Vec<Complex64> = (0..n)
                    .map(|_| {
                        Complex64::new(
                            r.sample::<f64, _>(StandardNormal),
                            r.sample::<f64, _>(StandardNormal),
                        )
                    })
                    .collect();
                let x = TracelessMatrix::random(n, &mut r);
                let y = TracelessMatrix::random(n, &mut r);
                let res = verify_adtors_same_torsion(&a, &x, &y).unwrap();
                let amp = a.iter().map(|v| v.norm()).fold(1.0, f64::max);
                let scale = (x.norm() * y.norm() * amp).max(1.0);
                assert!(res.norm() < 1e-12 * scale, "n = {n}: {}", res.norm());
            }
        }
    }

    #[test]
    fn adtors_zero_shift_is_identity() {
        let mut r = rng(17);
        let x = TracelessMatrix::random(2, &mut r);
        let y = TracelessMatrix::random(2, &mut r);
        let a = vec![Complex64::new(0.0, 0.0); 2];
        let res = verify_adtors_same_torsion(&a, &x, &y).unwrap();
        let base = verify_structure_equation(&x, &y);
        assert!((res - base).norm() < 1e-15);
    }

    #[test]
    fn adtors_xi_difference_is_one_zero_combination() {
        // Expand the ξ-shift in (ζ, ζ̄) over the η-block basis vectors: the
        // ζ̄-coefficients must vanish and the ζ-coefficients equal ā_k/2i.
        let n = 2;
        let mut r = rng(19);
        let a: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    r.sample::<f64, _>(StandardNormal),
                    r.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        let half_over_i = Complex64::new(0.0, -0.5);
        // 2n basis vectors spanning the η block
        let mut rows = CMatrix::zeros(2 * n, 2 * n);
        let mut rhs = CVector::zeros(2 * n);
        let mut idx = 0;
        for col in 0..2 {
            for i in 0..n {
                let x = TracelessMatrix::elementary(n + 2, 2 + i, col);
                let f = flat_forms(&x);
                let mut shift = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    shift += half_over_i * a[k].conj() * f.zeta[k];
                }
                for k in 0..n {
                    rows[(idx, k)] = f.zeta[k];
                    rows[(idx, n + k)] = f.zeta[k].conj();
                }
                rhs[idx] = shift;
                idx += 1;
            }
        }
        let sol = crate::linalg::solve_complex(&rows, &rhs).unwrap();
        for k in 0..n {
            let lambda_expected = half_over_i * a[k].conj();
            assert!((sol[k] - lambda_expected).norm() < 1e-12);
            assert!(sol[n + k].norm() < 1e-12, "zeta-bar coefficient nonzero");
        }
    }

    #[test]
    fn broken_xi_breaks_the_structure_equation() {
        let mut r = rng(23);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let x = TracelessMatrix::random(2, &mut r);
            let y = TracelessMatrix::random(2, &mut r);
            let res = verify_structure_equation_with(&BrokenXiForms, &x, &y);
            worst = worst.max(res.norm() / (x.norm() * y.norm()).max(1.0));
        }
        assert!(worst > 1e-2, "mutation not detected: {worst}");
    }
}
