//! JSON representations of quadrics, planes and points.
//!
//! Quadric file format:
//!
//! ```json
//! { "n": 1, "matrix": [[[1.0, 0.0], [0.0, 0.0], ...], ...] }
//! ```
//!
//! Complex entries are `[re, im]` pairs; planes are two real arrays;
//! points are arrays of `[re, im]` pairs.

use crate::error::Error;
use crate::linalg::{CMatrix, RVector};
use crate::projective::{OrientedPlane, ProjectivePoint};
use crate::quadric::Quadric;
use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// On-disk form of a quadric.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricFile {
    pub n: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl QuadricFile {
    pub fn from_quadric(q: &Quadric) -> Self {
        let d = q.dim();
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let z = q.matrix()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self {
            n: q.ambient_n(),
            matrix,
        }
    }

    pub fn to_quadric(&self) -> Result<Quadric> {
        let d = self.n + 2;
        if self.matrix.len() != d || self.matrix.iter().any(|row| row.len() != d) {
            return Err(Error::Parse(format!(
                "matrix must be {d}x{d} for n = {}",
                self.n
            )));
        }
        let m = CMatrix::from_fn(d, d, |i, j| {
            Complex64::new(self.matrix[i][j][0], self.matrix[i][j][1])
        });
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix entries must be finite".into()));
        }
        Quadric::new(m)
    }
}

/// Parse a quadric from JSON text.
pub fn quadric_from_json(text: &str) -> Result<Quadric> {
    let file: QuadricFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_quadric()
}

/// Serialise a quadric to JSON text.
pub fn quadric_to_json(q: &Quadric) -> String {
    serde_json::to_string_pretty(&QuadricFile::from_quadric(q)).expect("serialisable")
}

/// On-disk form of an oriented plane: two real frame arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneRepr {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl PlaneRepr {
    pub fn from_plane(p: &OrientedPlane) -> Self {
        Self {
            u: p.u().iter().copied().collect(),
            v: p.v().iter().copied().collect(),
        }
    }

    pub fn to_plane(&self) -> Result<OrientedPlane> {
        OrientedPlane::from_frame(
            &RVector::from_vec(self.u.clone()),
            &RVector::from_vec(self.v.clone()),
        )
    }
}

/// On-disk form of a projective point: [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRepr(pub Vec<[f64; 2]>);

impl PointRepr {
    pub fn from_point(p: &ProjectivePoint) -> Self {
        Self(p.coords().iter().map(|z| [z.re, z.im]).collect())
    }

    pub fn to_point(&self) -> Result<ProjectivePoint> {
        ProjectivePoint::new(crate::linalg::CVector::from_iterator(
            self.0.len(),
            self.0.iter().map(|&[re, im]| Complex64::new(re, im)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::random_real_point_free;

    #[test]
    fn quadric_json_round_trip() {
        let q = random_real_point_free(2, 5);
        let text = quadric_to_json(&q);
        let back = quadric_from_json(&text).unwrap();
        assert!(q.approx_eq(&back, 1e-14));
    }

    #[test]
    fn quadric_json_rejects_bad_shapes() {
        assert!(quadric_from_json("{\"n\": 1, \"matrix\": [[[1,0]]]}").is_err());
        assert!(quadric_from_json("not json").is_err());
    }

    #[test]
    fn plane_round_trip() {
        let p = crate::grassmann::random_plane(2, 9);
        let r = PlaneRepr::from_plane(&p);
        assert!(r.to_plane().unwrap().approx_eq(&p, 1e-14));
    }
}
