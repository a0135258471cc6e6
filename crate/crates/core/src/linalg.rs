//! Small dense linear-algebra helpers shared across modules.
//!
//! All matrices here are tiny ((n+2) ≤ 10 in practice); everything is
//! heap-allocated `nalgebra` dynamic matrices for simplicity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;
pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Exact symmetrisation (M + Mᵀ)/2.
pub fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.transpose()) * Complex64::new(0.5, 0.0)
}

pub fn real_part(m: &CMatrix) -> RMatrix {
    m.map(|z| z.re)
}

pub fn imag_part(m: &CMatrix) -> RMatrix {
    m.map(|z| z.im)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Embed a complex m×k matrix as the real 2m×2k matrix [[Re, −Im], [Im, Re]].
/// Singular values of the embedding are those of the original, doubled in
/// multiplicity.
pub fn real_embedding(c: &CMatrix) -> RMatrix {
    let (m, k) = c.shape();
    let mut out = RMatrix::zeros(2 * m, 2 * k);
    for i in 0..m {
        for j in 0..k {
            let z = c[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + k)] = -z.im;
            out[(i + m, j)] = z.im;
            out[(i + m, j + k)] = z.re;
        }
    }
    out
}

/// Singular values of a complex matrix, descending.
pub fn complex_singular_values(c: &CMatrix) -> Vec<f64> {
    let (m, k) = c.shape();
    let svd = real_embedding(c).svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // keep one of each doubled value
    sv.into_iter().step_by(2).take(m.min(k)).collect()
}

/// Solve the square complex system M x = b by LU with partial pivoting.
pub fn solve_complex(m: &CMatrix, b: &CVector) -> Option<CVector> {
    m.clone().lu().solve(b)
}

/// Stack a complex vector as (Re w; Im w) ∈ ℝ^{2m}.
pub fn stack_complex(w: &CVector) -> RVector {
    let m = w.len();
    let mut out = RVector::zeros(2 * m);
    for i in 0..m {
        out[i] = w[i].re;
        out[i + m] = w[i].im;
    }
    out
}

/// Multiplication by i on the stacked representation: (x; y) ↦ (−y; x).
pub fn j_matrix(m: usize) -> RMatrix {
    let mut j = RMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(i, i + m)] = -1.0;
        j[(i + m, i)] = 1.0;
    }
    j
}

/// Orientation-preserving modified Gram–Schmidt on an ordered pair.
/// Returns None when the pair is numerically dependent.
pub fn orthonormalize_pair(p: &RVector, q: &RVector) -> Option<(RVector, RVector)> {
    let nu = p.norm();
    if nu < 1e-300 {
        return None;
    }
    let u = p / nu;
    let r = q - &u * u.dot(q);
    let nr = r.norm();
    if nr < 1e-12 * q.norm().max(1.0) {
        return None;
    }
    Some((u, r / nr))
}

/// Modified Gram–Schmidt of the columns of `m` against `fixed` and each
/// other, in order. Returns None if a column degenerates.
pub fn orthonormalize_against(fixed: &[RVector], m: &RMatrix) -> Option<RMatrix> {
    let (dim, k) = m.shape();
    let mut out = RMatrix::zeros(dim, k);
    let mut basis: Vec<RVector> = fixed.to_vec();
    for j in 0..k {
        let mut col: RVector = m.column(j).into_owned();
        for b in &basis {
            let c = b.dot(&col);
            col -= b * c;
        }
        let n = col.norm();
        if n < 1e-10 {
            return None;
        }
        col /= n;
        out.set_column(j, &col);
        basis.push(col);
    }
    Some(out)
}

/// Orthonormal basis of the orthogonal complement of span{u, v} in ℝ^d,
/// built deterministically from the standard basis.
pub fn complement_basis(u: &RVector, v: &RVector) -> RMatrix {
    let d = u.len();
    let mut cols: Vec<RVector> = Vec::with_capacity(d - 2);
    let mut basis = vec![u.clone(), v.clone()];
    for j in 0..d {
        if cols.len() == d - 2 {
            break;
        }
        let mut e = RVector::zeros(d);
        e[j] = 1.0;
        for b in &basis {
            let c = b.dot(&e);
            e -= b * c;
        }
        let n = e.norm();
        if n > 1e-6 {
            e /= n;
            basis.push(e.clone());
            cols.push(e);
        }
    }
    let mut out = RMatrix::zeros(d, d - 2);
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Round to `sig` significant decimal digits. Used when freezing floats
/// into reports.
pub fn round_sig(x: f64, sig: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(sig as i32 - 1 - mag);
    (x * factor).round() / factor
}
