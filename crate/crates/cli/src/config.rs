//! Experiment configuration: defaults, flat JSON config files, flag
//! overrides, validation, and the resolved-config sidecar format.
//!
//! Precedence is defaults ← file ← flags. File keys match the flag names
//! without the leading dashes; unknown keys are errors, never ignored.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use kicked_top::measures::LogBase;
use serde::{Deserialize, Serialize};

/// Shared command-line flags; every value is optional so file and default
/// resolution can fill the gaps.
#[derive(Args, Clone, Debug, Default)]
pub struct RunArgs {
    /// Flat JSON config file; explicit flags override file values.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Twice the spin quantum number (equals the number of qubits N = 2j).
    #[arg(long)]
    pub j2: Option<u32>,

    /// Twist strength κ.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,

    /// Rotation angle p of the kick.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,

    /// Initial polar angle θ ∈ [0, π].
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,

    /// Initial azimuthal angle φ.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,

    /// Number of kicks to evolve.
    #[arg(long)]
    pub kicks: Option<usize>,

    /// Kicks entering time averages (kick 0 is always excluded).
    #[arg(long = "avg-kicks")]
    pub avg_kicks: Option<usize>,

    /// θ resolution of initial-condition lattices.
    #[arg(long = "grid-theta")]
    pub grid_theta: Option<usize>,

    /// φ resolution of initial-condition lattices.
    #[arg(long = "grid-phi")]
    pub grid_phi: Option<usize>,

    /// Fixed θ of the phi-slice experiment.
    #[arg(long = "slice-theta", allow_negative_numbers = true)]
    pub slice_theta: Option<f64>,

    /// θ resolution of the discord measurement search.
    #[arg(long = "opt-grid-theta")]
    pub opt_grid_theta: Option<usize>,

    /// φ resolution of the discord measurement search.
    #[arg(long = "opt-grid-phi")]
    pub opt_grid_phi: Option<usize>,

    /// Logarithm base for entropic quantities: "2" or "e".
    #[arg(long = "log-base")]
    pub log_base: Option<String>,

    /// Worker threads for sweeps: 0 = one per core, 1 = sequential.
    #[arg(long)]
    pub workers: Option<usize>,

    /// Seed for the random-state test utilities.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output CSV path; the resolved-config sidecar lands next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The flat JSON document: keys are exactly the flag names without leading
/// dashes, plus the `command` the file was resolved for.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kicks: Option<usize>,
    #[serde(rename = "avg-kicks", skip_serializing_if = "Option::is_none")]
    pub avg_kicks: Option<usize>,
    #[serde(rename = "grid-theta", skip_serializing_if = "Option::is_none")]
    pub grid_theta: Option<usize>,
    #[serde(rename = "grid-phi", skip_serializing_if = "Option::is_none")]
    pub grid_phi: Option<usize>,
    #[serde(rename = "slice-theta", skip_serializing_if = "Option::is_none")]
    pub slice_theta: Option<f64>,
    #[serde(rename = "opt-grid-theta", skip_serializing_if = "Option::is_none")]
    pub opt_grid_theta: Option<usize>,
    #[serde(rename = "opt-grid-phi", skip_serializing_if = "Option::is_none")]
    pub opt_grid_phi: Option<usize>,
    #[serde(rename = "log-base", skip_serializing_if = "Option::is_none")]
    pub log_base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// A configuration error; always exits with code 1.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Fully resolved run parameters; every field has a definite value.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub command: String,
    pub j2: u32,
    pub kappa: f64,
    pub p: f64,
    pub theta: f64,
    pub phi: f64,
    pub kicks: usize,
    pub avg_kicks: usize,
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub slice_theta: f64,
    pub opt_grid_theta: usize,
    pub opt_grid_phi: usize,
    pub log_base: LogBase,
    pub workers: usize,
    pub seed: u64,
    pub out: PathBuf,
}

impl ExperimentConfig {
    /// Resolves defaults ← file ← flags for `command` and validates the
    /// result.
    pub fn resolve(command: &str, args: &RunArgs) -> Result<Self, ConfigError> {
        let file = match &args.config {
            Some(path) => load_config_file(path)?,
            None => ConfigFile::default(),
        };
        if let Some(recorded) = &file.command {
            if recorded != command {
                return Err(ConfigError(format!(
                    "config file was resolved for `{recorded}` but this run is `{command}`"
                )));
            }
        }

        let log_base_text = args
            .log_base
            .clone()
            .or_else(|| file.log_base.clone())
            .unwrap_or_else(|| "2".to_string());
        let log_base = log_base_text
            .parse::<LogBase>()
            .map_err(|e| ConfigError(format!("log-base: {e}")))?;

        let out = args
            .out
            .clone()
            .or_else(|| file.out.clone())
            .ok_or_else(|| ConfigError("out: an output path is required (--out)".into()))?;

        let config = Self {
            command: command.to_string(),
            j2: args.j2.or(file.j2).unwrap_or(8),
            kappa: args.kappa.or(file.kappa).unwrap_or(3.0),
            p: args.p.or(file.p).unwrap_or(FRAC_PI_2),
            theta: args.theta.or(file.theta).unwrap_or(2.25),
            phi: args.phi.or(file.phi).unwrap_or(0.63),
            kicks: args.kicks.or(file.kicks).unwrap_or(100),
            avg_kicks: args.avg_kicks.or(file.avg_kicks).unwrap_or(200),
            grid_theta: args.grid_theta.or(file.grid_theta).unwrap_or(64),
            grid_phi: args.grid_phi.or(file.grid_phi).unwrap_or(64),
            slice_theta: args.slice_theta.or(file.slice_theta).unwrap_or(2.25),
            opt_grid_theta: args.opt_grid_theta.or(file.opt_grid_theta).unwrap_or(64),
            opt_grid_phi: args.opt_grid_phi.or(file.opt_grid_phi).unwrap_or(128),
            log_base,
            workers: args.workers.or(file.workers).unwrap_or(0),
            seed: args.seed.or(file.seed).unwrap_or(7),
            out,
        };
        config.validate()?;
        Ok(config)
    }

    /// Per-key domain checks; each failure names the offending key.
    fn validate(&self) -> Result<(), ConfigError> {
        let fail = |key: &str, why: String| Err(ConfigError(format!("{key}: {why}")));
        if self.j2 < 2 {
            return fail("j2", format!("{} is below the two-qubit minimum of 2", self.j2));
        }
        if !self.kappa.is_finite() || self.kappa < 0.0 {
            return fail("kappa", format!("{} must be finite and >= 0", self.kappa));
        }
        if !self.p.is_finite() {
            return fail("p", format!("{} must be finite", self.p));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return fail("theta", format!("{} outside the chart range [0, pi]", self.theta));
        }
        if !self.phi.is_finite() {
            return fail("phi", format!("{} must be finite", self.phi));
        }
        if !(0.0..=PI).contains(&self.slice_theta) {
            return fail(
                "slice-theta",
                format!("{} outside the chart range [0, pi]", self.slice_theta),
            );
        }
        if self.avg_kicks == 0 {
            return fail("avg-kicks", "time averages need at least one kick".into());
        }
        if self.grid_theta == 0 {
            return fail("grid-theta", "lattice needs at least one point".into());
        }
        if self.grid_phi == 0 {
            return fail("grid-phi", "lattice needs at least one point".into());
        }
        if self.opt_grid_theta == 0
            || self.opt_grid_phi == 0
            || self.opt_grid_theta * self.opt_grid_phi < 3
        {
            return fail(
                "opt-grid-theta/opt-grid-phi",
                format!(
                    "{}x{} grid cannot seed the measurement search (needs >= 3 points)",
                    self.opt_grid_theta, self.opt_grid_phi
                ),
            );
        }
        Ok(())
    }

    /// The sidecar document: every field resolved, keyed like the file
    /// format, including the command it belongs to.
    pub fn as_file(&self) -> ConfigFile {
        ConfigFile {
            command: Some(self.command.clone()),
            j2: Some(self.j2),
            kappa: Some(self.kappa),
            p: Some(self.p),
            theta: Some(self.theta),
            phi: Some(self.phi),
            kicks: Some(self.kicks),
            avg_kicks: Some(self.avg_kicks),
            grid_theta: Some(self.grid_theta),
            grid_phi: Some(self.grid_phi),
            slice_theta: Some(self.slice_theta),
            opt_grid_theta: Some(self.opt_grid_theta),
            opt_grid_phi: Some(self.opt_grid_phi),
            log_base: Some(self.log_base.to_string()),
            workers: Some(self.workers),
            seed: Some(self.seed),
            out: Some(self.out.clone()),
        }
    }

    /// Path of the resolved-config sidecar for this run's output.
    pub fn sidecar_path(&self) -> PathBuf {
        sidecar_path_for(&self.out)
    }
}

/// `<out>.config.json`, next to the output it describes.
pub fn sidecar_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".config.json");
    out.with_file_name(name)
}

fn load_config_file(path: &Path) -> Result<ConfigFile, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("config: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("config: {}: {e}", path.display())))
}
