//! `twistor` — quadric analysis and flat twistor verification tool.
//!
//! Subcommands:
//!
//! * `quadric-check <file>` — smoothness, real-point verdict, phase
//!   normal form of a quadric file.
//! * `section-sample <file>` — sample the induced section of the disk
//!   bundle; JSON/CSV output and an optional SVG scatter of τ.
//! * `holomorphy <file>` — paired holomorphy/torsion sweep, optionally
//!   with an anti-holomorphic ε-perturbation.
//! * `flat-verify` — exact structure-equation, curvature, Bianchi, gauge
//!   and same-torsion-shift identity checks.
//!
//! Exit codes: 0 success, 1 parse/config error, 2 degenerate input,
//! 3 correspondence violation, 4 identity failure.

mod commands;
mod config;
mod report;
mod svg;

use clap::{Parser, Subcommand};
use config::{CommonOpts, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

pub(crate) const EXIT_PARSE: u8 = 1;
pub(crate) const EXIT_DEGENERATE: u8 = 2;
pub(crate) const EXIT_CORRESPONDENCE: u8 = 3;
pub(crate) const EXIT_IDENTITY: u8 = 4;

#[derive(Parser)]
#[command(name = "twistor", version, about = "flat twistor correspondence numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a quadric file: smoothness, real points, phase normal form.
    QuadricCheck {
        /// Quadric JSON file ({"n": ..., "matrix": [[[re, im], ...], ...]}).
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sample the section induced by a real-point-free quadric.
    SectionSample {
        file: PathBuf,
        /// Write an SVG scatter of the fiber coordinates here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Holomorphy residuals and torsion coefficients over shared planes.
    Holomorphy {
        file: PathBuf,
        /// Size of the anti-holomorphic perturbation (0 disables it).
        #[arg(long)]
        perturb: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify the flat model's differential identities exactly.
    FlatVerify {
        /// Comma-separated list of n values to verify.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,5")]
        n_list: Vec<usize>,
        /// Corrupt the ξ formula; the run must then fail with exit 4.
        #[arg(long, hide = true)]
        break_xi: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::QuadricCheck { file, common } => with_config(common, |cfg| {
            commands::quadric_check(&file, &cfg)
        }),
        Command::SectionSample { file, svg, common } => with_config(common, |cfg| {
            commands::section_sample_cmd(&file, svg.as_deref(), &cfg)
        }),
        Command::Holomorphy {
            file,
            perturb,
            common,
        } => with_config(common, |cfg| {
            commands::holomorphy(&file, perturb.unwrap_or(0.0), &cfg)
        }),
        Command::FlatVerify {
            n_list,
            break_xi,
            common,
        } => with_config(common, |cfg| {
            commands::flat_verify(&n_list, break_xi, &cfg)
        }),
    };
    ExitCode::from(code)
}

fn with_config(common: CommonOpts, run: impl FnOnce(RunConfig) -> u8) -> u8 {
    match RunConfig::from_opts(common) {
        Ok(cfg) => run(cfg),
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_PARSE
        }
    }
}
