//! Self-describing JSON report types. Every report carries a
//! schema_version so downstream diffing can pin formats.

use serde::Serialize;
use std::path::{Path, PathBuf};
use twistor_core::io::PlaneRepr;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct QuadricCheckReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub smooth: bool,
    pub has_real_points: Option<bool>,
    /// Phases in radians, 12 significant digits, ascending.
    pub phases: Option<Vec<f64>>,
    pub normal_form_residual: Option<f64>,
    pub basis: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize)]
pub struct SectionSampleEntry {
    pub plane: PlaneRepr,
    pub point: Vec<[f64; 2]>,
    pub tau: [f64; 2],
    pub on_quadric_residual: f64,
}

#[derive(Serialize)]
pub struct SectionSampleReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub seed: u64,
    pub count: usize,
    pub max_on_quadric_residual: f64,
    pub samples: Vec<SectionSampleEntry>,
}

#[derive(Serialize)]
pub struct SweepPointEntry {
    pub plane: PlaneRepr,
    pub holomorphy: f64,
    pub torsion: f64,
}

#[derive(Serialize)]
pub struct HolomorphyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub perturbation: f64,
    pub max_holomorphy: f64,
    pub max_torsion: f64,
    /// Both criteria land on the same side of the thresholds at every
    /// sample.
    pub criteria_agree: bool,
    pub points: Vec<SweepPointEntry>,
}

#[derive(Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub n: usize,
    pub trials: usize,
    pub max_residual: f64,
}

#[derive(Serialize)]
pub struct FlatVerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub seed: u64,
    pub tolerance: f64,
    pub passed: bool,
    pub identities: Vec<IdentityReport>,
}

/// Write a JSON report file into the output directory, if one is set.
pub fn write_json<T: Serialize>(
    dir: Option<&Path>,
    name: &str,
    value: &T,
) -> std::io::Result<Option<PathBuf>> {
    let Some(dir) = dir else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value).expect("report serialises");
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(Some(path))
}

/// Write raw text (CSV, SVG) into the output directory, if set.
pub fn write_text(
    dir: Option<&Path>,
    name: &str,
    text: &str,
) -> std::io::Result<Option<PathBuf>> {
    let Some(dir) = dir else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(Some(path))
}
