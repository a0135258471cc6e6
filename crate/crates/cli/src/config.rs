//! Run configuration: seed, sizes, tolerances and output routing.

use clap::Args;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Flags shared by every subcommand.
#[derive(Args, Debug)]
pub struct CommonOpts {
    /// Expected ambient index n; commands that read a quadric file verify
    /// it against the file.
    #[arg(long)]
    pub n: Option<usize>,

    /// Seed for all random draws; identical configs give byte-identical
    /// reports.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Number of trials / samples / planes.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Tolerance override, repeatable: --tol name=value.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tolerances: Vec<String>,

    /// Output directory for report files (default: stdout only).
    /// The TWISTOR_OUT environment variable overrides this.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Report format for tabular outputs.
    #[arg(long, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Validated configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_opts(opts: CommonOpts) -> Result<Self, String> {
        if opts.n == Some(0) {
            return Err("--n must be positive".into());
        }
        if opts.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        let mut tolerances = default_tolerances();
        for raw in &opts.tolerances {
            let (name, value) = raw
                .split_once('=')
                .ok_or_else(|| format!("bad --tol '{raw}': expected NAME=VALUE"))?;
            let value: f64 = value
                .parse()
                .map_err(|_| format!("bad --tol value in '{raw}'"))?;
            if !value.is_finite() || value <= 0.0 {
                return Err(format!("tolerance '{name}' must be positive and finite"));
            }
            if !tolerances.contains_key(name) {
                return Err(format!(
                    "unknown tolerance '{name}' (known: {})",
                    tolerances
                        .keys()
                        .cloned()
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            tolerances.insert(name.to_string(), value);
        }
        // environment override for the output directory only
        let output_dir = match std::env::var_os("TWISTOR_OUT") {
            Some(dir) => Some(PathBuf::from(dir)),
            None => opts.out,
        };
        Ok(Self {
            n: opts.n,
            seed: opts.seed,
            trials: opts.trials,
            tolerances,
            output_dir,
            format: opts.format,
        })
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

fn default_tolerances() -> BTreeMap<String, f64> {
    use twistor_core::tol;
    BTreeMap::from([
        ("step".to_string(), tol::FD_STEP),
        ("on_quadric".to_string(), tol::EPS_ON_QUADRIC),
        ("holomorphic".to_string(), tol::TOL_HOLOMORPHIC),
        ("perturbed".to_string(), tol::TOL_PERTURBED),
        ("identity".to_string(), tol::TOL_FLAT_IDENTITY),
        ("normal_form".to_string(), tol::TOL_NORMAL_FORM),
    ])
}
