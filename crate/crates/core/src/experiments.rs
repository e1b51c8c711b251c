//! The top-level experiments: correlation time series from spin coherent
//! states, time-averaged discord maps and slices over initial conditions,
//! discord/entanglement comparisons, and the classical stroboscopic map.
//!
//! Everything here is deterministic: sweeps run through
//! [`crate::sweep::indexed_map`], so worker counts can change wall-clock time
//! but never a single emitted value or row.

use std::f64::consts::PI;

use crate::classical::stroboscopic_scan;
use crate::error::{Result, TopError};
use crate::measures::{
    concurrence, quantum_discord, two_qubit_entropy, LogBase, OptimizerParams,
};
use crate::reduction::two_qubit_rdm;
use crate::spin::{
    evolve, floquet_operator, spin_coherent_state, CollectiveOps, DickeState, KickedTopParams,
    SphericalPoint,
};
use crate::sweep::indexed_map;
use crate::CMatrix;

/// The four correlation measures evaluated after each kick.
#[derive(Clone, Copy, Debug)]
pub struct MeasureSet {
    pub discord: f64,
    pub concurrence: f64,
    pub entropy: f64,
    pub mutual_information: f64,
}

/// One row of a correlation time series; `kick = 0` is the initial state.
#[derive(Clone, Copy, Debug)]
pub struct TimeSeriesRecord {
    pub kick: usize,
    pub discord: f64,
    pub concurrence: f64,
    pub entropy: f64,
    pub mutual_information: f64,
}

/// One row of the time-averaged discord map over initial conditions.
#[derive(Clone, Copy, Debug)]
pub struct AvgMapRecord {
    pub theta: f64,
    pub phi: f64,
    pub avg_discord: f64,
}

/// One row of the fixed-θ discord slice.
#[derive(Clone, Copy, Debug)]
pub struct PhiSliceRecord {
    pub phi: f64,
    pub avg_discord: f64,
}

/// One row of the classical stroboscopic point cloud.
#[derive(Clone, Copy, Debug)]
pub struct ClassicalMapRecord {
    pub trajectory_id: usize,
    pub kick: usize,
    pub theta: f64,
    pub phi: f64,
}

/// Summary statistics of a comparison run, over kicks `1…n`.
#[derive(Clone, Copy, Debug)]
pub struct CompareSummary {
    pub corr_discord_entropy: f64,
    pub corr_discord_concurrence: f64,
}

/// A configured kicked top ready to run correlation experiments: collective
/// operators, the Floquet unitary, and the measure settings.
pub struct CorrelationRun {
    ops: CollectiveOps,
    floquet: CMatrix,
    optimizer: OptimizerParams,
    log_base: LogBase,
}

impl CorrelationRun {
    pub fn new(
        params: &KickedTopParams,
        optimizer: OptimizerParams,
        log_base: LogBase,
    ) -> Result<Self> {
        let ops = CollectiveOps::new(params.spin);
        let floquet = floquet_operator(&ops, params)?;
        Ok(Self {
            ops,
            floquet,
            optimizer,
            log_base,
        })
    }

    pub fn ops(&self) -> &CollectiveOps {
        &self.ops
    }

    /// All four measures of one evolved state, with failures tagged by kick.
    fn measures_for_state(&self, state: &DickeState, kick: usize) -> Result<MeasureSet> {
        let tag = |e: TopError| e.in_context(format!("kick {kick}"));
        let rdm = two_qubit_rdm(&self.ops, state).map_err(tag)?;
        rdm.require_symmetric_sector().map_err(tag)?;
        let discord = quantum_discord(&rdm, &self.optimizer, self.log_base).map_err(tag)?;
        Ok(MeasureSet {
            discord: discord.discord,
            concurrence: concurrence(&rdm).map_err(tag)?,
            entropy: two_qubit_entropy(&rdm, self.log_base).map_err(tag)?,
            mutual_information: discord.mutual_information,
        })
    }

    /// Evolves a coherent state at `start` for `n_kicks` and measures every
    /// state including the initial one: `n_kicks + 1` records, kick-contiguous
    /// from 0.
    pub fn time_series(
        &self,
        start: SphericalPoint,
        n_kicks: usize,
    ) -> Result<Vec<TimeSeriesRecord>> {
        let initial = spin_coherent_state(&self.ops, start);
        let states = evolve(&initial, &self.floquet, n_kicks)?;
        states
            .iter()
            .enumerate()
            .map(|(kick, state)| {
                let m = self.measures_for_state(state, kick)?;
                Ok(TimeSeriesRecord {
                    kick,
                    discord: m.discord,
                    concurrence: m.concurrence,
                    entropy: m.entropy,
                    mutual_information: m.mutual_information,
                })
            })
            .collect()
    }

    /// Mean discord over kicks `1…avg_kicks` (the pre-evolution state is
    /// excluded from time averages).
    pub fn avg_discord(&self, start: SphericalPoint, avg_kicks: usize) -> Result<f64> {
        if avg_kicks == 0 {
            return Err(TopError::InvalidParameter(
                "time average needs at least one kick".into(),
            ));
        }
        let initial = spin_coherent_state(&self.ops, start);
        let states = evolve(&initial, &self.floquet, avg_kicks)?;
        let mut total = 0.0;
        for (kick, state) in states.iter().enumerate().skip(1) {
            let tag = |e: TopError| e.in_context(format!("kick {kick}"));
            let rdm = two_qubit_rdm(&self.ops, state).map_err(tag)?;
            rdm.require_symmetric_sector().map_err(tag)?;
            total += quantum_discord(&rdm, &self.optimizer, self.log_base)
                .map_err(tag)?
                .discord;
        }
        Ok(total / avg_kicks as f64)
    }

    /// Time-averaged discord on the `thetas × phis` lattice, θ-major, each
    /// grid point an independent work item.
    pub fn avg_discord_map(
        &self,
        thetas: &[f64],
        phis: &[f64],
        avg_kicks: usize,
        workers: usize,
    ) -> Result<Vec<AvgMapRecord>> {
        let mut points = Vec::with_capacity(thetas.len() * phis.len());
        for &theta in thetas {
            for &phi in phis {
                points.push((theta, phi));
            }
        }
        indexed_map(points, workers, |_, (theta, phi)| {
            let start = SphericalPoint::new(theta, phi)?;
            let avg = self
                .avg_discord(start, avg_kicks)
                .map_err(|e| e.in_context(format!("grid point ({theta}, {phi})")))?;
            Ok(AvgMapRecord {
                theta,
                phi,
                avg_discord: avg,
            })
        })
    }

    /// Fixed-θ slice of the time-averaged discord across `phis`.
    pub fn phi_slice(
        &self,
        slice_theta: f64,
        phis: &[f64],
        avg_kicks: usize,
        workers: usize,
    ) -> Result<Vec<PhiSliceRecord>> {
        let rows = self.avg_discord_map(&[slice_theta], phis, avg_kicks, workers)?;
        Ok(rows
            .into_iter()
            .map(|row| PhiSliceRecord {
                phi: row.phi,
                avg_discord: row.avg_discord,
            })
            .collect())
    }

    /// Time series plus the discord/entropy and discord/concurrence Pearson
    /// correlations over kicks `1…n_kicks`.
    pub fn compare(
        &self,
        start: SphericalPoint,
        n_kicks: usize,
    ) -> Result<(Vec<TimeSeriesRecord>, CompareSummary)> {
        let series = self.time_series(start, n_kicks)?;
        let evolved = &series[1..];
        let discord: Vec<f64> = evolved.iter().map(|r| r.discord).collect();
        let entropy: Vec<f64> = evolved.iter().map(|r| r.entropy).collect();
        let concurrence: Vec<f64> = evolved.iter().map(|r| r.concurrence).collect();
        let summary = CompareSummary {
            corr_discord_entropy: pearson(&discord, &entropy)?,
            corr_discord_concurrence: pearson(&discord, &concurrence)?,
        };
        Ok((series, summary))
    }
}

/// Classical stroboscopic map over a `thetas × phis` lattice of initial
/// conditions (θ-major), each trajectory an independent work item; rows are
/// ordered by trajectory, then kick.
pub fn classical_map(
    thetas: &[f64],
    phis: &[f64],
    kappa: f64,
    p: f64,
    n_kicks: usize,
    workers: usize,
) -> Result<Vec<ClassicalMapRecord>> {
    let mut points = Vec::with_capacity(thetas.len() * phis.len());
    for &theta in thetas {
        for &phi in phis {
            points.push(SphericalPoint::new(theta, phi)?);
        }
    }
    let trajectories = indexed_map(points, workers, |_, point| {
        Ok(stroboscopic_scan(&[point], kappa, p, n_kicks).remove(0))
    })?;
    let mut rows = Vec::with_capacity(trajectories.len() * (n_kicks + 1));
    for (trajectory_id, trajectory) in trajectories.into_iter().enumerate() {
        for (kick, point) in trajectory.into_iter().enumerate() {
            rows.push(ClassicalMapRecord {
                trajectory_id,
                kick,
                theta: point.theta(),
                phi: point.phi(),
            });
        }
    }
    Ok(rows)
}

/// `count` points spanning `[lo, hi]` inclusive; a single-point lattice
/// collapses to `fallback` (the configured coordinate) instead.
pub fn lattice(count: usize, lo: f64, hi: f64, fallback: f64) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![fallback],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Uniform θ-lattice over `[0, π]` for maps and initial grids.
pub fn theta_lattice(count: usize, fallback: f64) -> Vec<f64> {
    lattice(count, 0.0, PI, fallback)
}

/// Uniform φ-lattice over `[−π, π]`.
pub fn phi_lattice(count: usize, fallback: f64) -> Vec<f64> {
    lattice(count, -PI, PI, fallback)
}

/// Pearson correlation coefficient of two equal-length samples.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(TopError::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(TopError::InvalidParameter(
            "Pearson correlation needs at least two samples".into(),
        ));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x).powi(2);
        var_y += (y - mean_y).powi(2);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(TopError::InvalidParameter(
            "Pearson correlation undefined for a zero-variance sample".into(),
        ));
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Normalized autocorrelation of `xs` at `lag` (mean-removed); `lag = 0`
/// gives 1 for any non-constant series.
pub fn autocorrelation(xs: &[f64], lag: usize) -> Result<f64> {
    if lag >= xs.len() {
        return Err(TopError::InvalidParameter(format!(
            "autocorrelation lag {lag} out of range for {} samples",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let denominator: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    if denominator == 0.0 {
        return Err(TopError::InvalidParameter(
            "autocorrelation undefined for a constant series".into(),
        ));
    }
    let numerator: f64 = xs
        .windows(lag + 1)
        .map(|w| (w[0] - mean) * (w[lag] - mean))
        .sum();
    Ok(numerator / denominator)
}
