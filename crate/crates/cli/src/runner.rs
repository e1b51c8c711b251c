//! Experiment execution and output emission.
//!
//! Every run writes its CSV, then the resolved-config sidecar next to it.
//! Floats are printed with 17 significant digits (`{:.16e}`), so files
//! round-trip exactly and byte-level diffing is meaningful.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use kicked_top::experiments::{
    classical_map, phi_lattice, theta_lattice, CompareSummary, CorrelationRun, TimeSeriesRecord,
};
use kicked_top::measures::OptimizerParams;
use kicked_top::spin::{KickedTopParams, SphericalPoint, Spin};
use kicked_top::TopError;

use crate::config::{ConfigError, ExperimentConfig, RunArgs};

/// Run failure, split by exit code: configuration problems exit 1, numeric
/// contract violations exit 2, I/O problems exit 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numeric contract violation: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<TopError> for CliError {
    fn from(e: TopError) -> Self {
        match e {
            // Bad inputs reachable from user-supplied values.
            TopError::InvalidParameter(_) | TopError::SizeLimit { .. } => {
                CliError::Config(e.to_string())
            }
            // Physics or internal contracts drifted mid-run.
            TopError::DimensionMismatch { .. }
            | TopError::NormDrift { .. }
            | TopError::InvalidState(_)
            | TopError::NumericContract { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Dispatches one subcommand: resolve config, run, emit CSV + sidecar.
pub fn run(command: &str, args: &RunArgs) -> Result<(), CliError> {
    let config = ExperimentConfig::resolve(command, args)?;
    match command {
        "classical-map" => run_classical_map(&config),
        "time-series" => run_time_series(&config),
        "avg-map" => run_avg_map(&config),
        "phi-slice" => run_phi_slice(&config),
        "compare" => run_compare(&config),
        other => Err(CliError::Config(format!("unknown subcommand `{other}`"))),
    }
}

fn correlation_run(config: &ExperimentConfig) -> Result<CorrelationRun, CliError> {
    let spin = Spin::from_twice_j(config.j2)?;
    let params = KickedTopParams::new(spin, config.kappa, config.p)?;
    let optimizer = OptimizerParams {
        grid_theta: config.opt_grid_theta,
        grid_phi: config.opt_grid_phi,
        ..OptimizerParams::default()
    };
    Ok(CorrelationRun::new(&params, optimizer, config.log_base)?)
}

fn start_point(config: &ExperimentConfig) -> Result<SphericalPoint, CliError> {
    Ok(SphericalPoint::new(config.theta, config.phi)?)
}

fn run_time_series(config: &ExperimentConfig) -> Result<(), CliError> {
    let run = correlation_run(config)?;
    let series = run.time_series(start_point(config)?, config.kicks)?;
    write_time_series_csv(&config.out, &series)?;
    write_sidecar(config)
}

fn run_avg_map(config: &ExperimentConfig) -> Result<(), CliError> {
    let run = correlation_run(config)?;
    let thetas = theta_lattice(config.grid_theta, config.theta);
    let phis = phi_lattice(config.grid_phi, config.phi);
    let rows = run.avg_discord_map(&thetas, &phis, config.avg_kicks, config.workers)?;

    let mut out = csv_writer(&config.out)?;
    emit(&config.out, &mut out, "theta,phi,avg_discord\n")?;
    for row in &rows {
        emit(
            &config.out,
            &mut out,
            &format!(
                "{:.16e},{:.16e},{:.16e}\n",
                row.theta, row.phi, row.avg_discord
            ),
        )?;
    }
    finish(&config.out, out)?;
    write_sidecar(config)
}

fn run_phi_slice(config: &ExperimentConfig) -> Result<(), CliError> {
    let run = correlation_run(config)?;
    let phis = phi_lattice(config.grid_phi, config.phi);
    let rows = run.phi_slice(config.slice_theta, &phis, config.avg_kicks, config.workers)?;

    let mut out = csv_writer(&config.out)?;
    emit(&config.out, &mut out, "phi,avg_discord\n")?;
    for row in &rows {
        emit(
            &config.out,
            &mut out,
            &format!("{:.16e},{:.16e}\n", row.phi, row.avg_discord),
        )?;
    }
    finish(&config.out, out)?;
    write_sidecar(config)
}

fn run_compare(config: &ExperimentConfig) -> Result<(), CliError> {
    let run = correlation_run(config)?;
    let (series, summary) = run.compare(start_point(config)?, config.kicks)?;
    write_time_series_csv(&config.out, &series)?;
    write_summary(config, &summary)?;
    println!(
        "corr(discord, entropy) = {:.16e}",
        summary.corr_discord_entropy
    );
    println!(
        "corr(discord, concurrence) = {:.16e}",
        summary.corr_discord_concurrence
    );
    write_sidecar(config)
}

fn run_classical_map(config: &ExperimentConfig) -> Result<(), CliError> {
    let thetas = theta_lattice(config.grid_theta, config.theta);
    let phis = phi_lattice(config.grid_phi, config.phi);
    let rows = classical_map(
        &thetas,
        &phis,
        config.kappa,
        config.p,
        config.kicks,
        config.workers,
    )?;

    let mut out = csv_writer(&config.out)?;
    emit(&config.out, &mut out, "trajectory_id,kick,theta,phi\n")?;
    for row in &rows {
        emit(
            &config.out,
            &mut out,
            &format!(
                "{},{},{:.16e},{:.16e}\n",
                row.trajectory_id, row.kick, row.theta, row.phi
            ),
        )?;
    }
    finish(&config.out, out)?;
    write_sidecar(config)
}

fn write_time_series_csv(path: &Path, series: &[TimeSeriesRecord]) -> Result<(), CliError> {
    let mut out = csv_writer(path)?;
    emit(
        path,
        &mut out,
        "kick,discord,concurrence,entropy,mutual_information\n",
    )?;
    for row in series {
        emit(
            path,
            &mut out,
            &format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                row.kick, row.discord, row.concurrence, row.entropy, row.mutual_information
            ),
        )?;
    }
    finish(path, out)
}

/// `<out>.summary.json` with the comparison statistics.
fn write_summary(config: &ExperimentConfig, summary: &CompareSummary) -> Result<(), CliError> {
    let mut name = config
        .out
        .file_name()
        .unwrap_or_default()
        .to_os_string();
    name.push(".summary.json");
    let path = config.out.with_file_name(name);
    let body = format!(
        "{{\n  \"corr_discord_entropy\": {:.16e},\n  \"corr_discord_concurrence\": {:.16e}\n}}\n",
        summary.corr_discord_entropy, summary.corr_discord_concurrence
    );
    std::fs::write(&path, body).map_err(|e| io_error(&path, e))
}

/// The reproducibility sidecar: the fully resolved config as a flat JSON file.
fn write_sidecar(config: &ExperimentConfig) -> Result<(), CliError> {
    let path = config.sidecar_path();
    let mut body = serde_json::to_string_pretty(&config.as_file())
        .map_err(|e| CliError::Io(format!("serializing sidecar: {e}")))?;
    body.push('\n');
    std::fs::write(&path, body).map_err(|e| io_error(&path, e))
}

fn csv_writer(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_error(path, e))
}

fn emit(path: &Path, out: &mut BufWriter<File>, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| io_error(path, e))
}

fn finish(path: &Path, mut out: BufWriter<File>) -> Result<(), CliError> {
    out.flush().map_err(|e| io_error(path, e))
}
