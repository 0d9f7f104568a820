//! Monte Carlo study of the EIPLD maximum-likelihood estimators.
//!
//! Replication `r` at sample size `n` draws its sample from the seed
//! `seed_for(master, n, r)`, so any cell can be reproduced on its own and
//! results do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::competitors::Family;
use crate::distribution::Params;
use crate::error::{Error, Result};
use crate::estimation::{fit_mle, Dataset, FitConfig, FitResult};

/// Largest tolerated share of failed fits at any sample size.
pub const MAX_FAILURE_RATE: f64 = 0.2;

pub const PARAM_NAMES: [&str; 3] = ["alpha", "beta", "theta"];

/// Default truths for the study.
pub fn default_truths() -> [Params; 2] {
    [
        Params::new(2.0, 3.0, 1.5).expect("valid"),
        Params::new(1.5, 1.0, 0.5).expect("valid"),
    ]
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `rep` at sample size `size`.
pub fn seed_for(master_seed: u64, size: usize, rep: usize) -> u64 {
    mix(mix(mix(master_seed) ^ size as u64) ^ rep as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub size: usize,
    pub param: &'static str,
    pub mean: f64,
    pub bias: f64,
    /// Sample variance with the `reps − 1` denominator.
    pub variance: f64,
    /// `bias² + variance`.
    pub mse: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub truth: Params,
    pub sizes: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    pub rows: Vec<StudyRow>,
}

impl SimulationReport {
    pub fn row(&self, size: usize, param: &str) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.size == size && r.param == param)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("size\tparam\tmean\tbias\tvariance\tmse\tfailures\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.size, r.param, r.mean, r.bias, r.variance, r.mse, r.failures
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::numeric("to_json", e.to_string()))
    }
}

/// Fits `reps` independent samples of size `size` drawn from `truth`.
/// Results are in replication order.
pub fn replicate(
    truth: &Params,
    size: usize,
    reps: usize,
    master_seed: u64,
    config: &FitConfig,
) -> Vec<Result<FitResult>> {
    (0..reps)
        .into_par_iter()
        .map(|rep| {
            let sample = truth.sample(size, seed_for(master_seed, size, rep))?;
            let data = Dataset::new(sample, format!("sim-n{size}-r{rep}"))?;
            fit_mle(Family::Eipld, &data, config)
        })
        .collect()
}

/// Bias, variance and MSE of each estimator at each sample size.
pub fn run_study(
    truth: &Params,
    sizes: &[usize],
    reps: usize,
    master_seed: u64,
    config: &FitConfig,
) -> Result<SimulationReport> {
    if reps < 2 {
        return Err(Error::domain("run_study", "reps must be >= 2"));
    }
    if sizes.is_empty() {
        return Err(Error::domain("run_study", "sizes must be nonempty"));
    }
    config.validate()?;
    let truth_v = truth.to_array();
    let mut rows = Vec::with_capacity(3 * sizes.len());
    for &size in sizes {
        let fits = replicate(truth, size, reps, master_seed, config);
        let estimates: Vec<Vec<f64>> = fits
            .iter()
            .filter_map(|f| f.as_ref().ok().map(|f| f.estimates.values().to_vec()))
            .collect();
        let failed = reps - estimates.len();
        if failed as f64 > MAX_FAILURE_RATE * reps as f64 || estimates.len() < 2 {
            return Err(Error::TooManyFailures {
                size,
                failed,
                total: reps,
            });
        }
        let m = estimates.len() as f64;
        for (k, name) in PARAM_NAMES.iter().enumerate() {
            let mean = estimates.iter().map(|e| e[k]).sum::<f64>() / m;
            let variance = estimates.iter().map(|e| (e[k] - mean).powi(2)).sum::<f64>() / (m - 1.0);
            let bias = mean - truth_v[k];
            rows.push(StudyRow {
                size,
                param: name,
                mean,
                bias,
                variance,
                mse: bias * bias + variance,
                failures: failed,
            });
        }
    }
    Ok(SimulationReport {
        truth: *truth,
        sizes: sizes.to_vec(),
        replications: reps,
        master_seed,
        rows,
    })
}
