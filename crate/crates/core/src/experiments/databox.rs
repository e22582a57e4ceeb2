use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::sample_positions_stream;
use crate::error::{Result, WalkError};
use crate::estimation::{mle_estimate, EstimateOptions};
use crate::io::{Cell, Table};
use crate::pmf::pmf_full;

/// A fixed budget of walk steps split between walk length `k` and number
/// of walks `n` in several ways.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataBoxConfig {
    pub theta_true: f64,
    pub budget: u64,
    pub allocations: Vec<(usize, usize)>,
    pub replications: usize,
    pub seed: u64,
    pub options: EstimateOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataBoxRow {
    pub k: usize,
    pub n: usize,
    pub replications: usize,
    pub median_abs_error: f64,
    pub mean_abs_error: f64,
    /// Single-walk allocations, whose estimate rests on one observation.
    pub high_variance: bool,
    /// Replications whose estimate was flat or hit the range boundary.
    pub flagged: usize,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

/// `|θ̂ - θ*|` for `replications` independent position samples of size `n`,
/// replication `r` drawing from stream `stream_base + r`. The flag marks
/// estimates reported as flat or on the boundary.
pub fn replicate_errors(
    theta_true: f64,
    k: usize,
    n: usize,
    replications: usize,
    seed: u64,
    stream_base: u64,
    opts: &EstimateOptions,
) -> Result<Vec<(f64, bool)>> {
    let pmf = pmf_full(k, theta_true.cos())?;
    (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let data = sample_positions_stream(&pmf, n, seed, stream_base + r)?;
            let est = mle_estimate(&data, opts)?;
            Ok(((est.theta_hat - theta_true).abs(), est.failure().is_some()))
        })
        .collect()
}

/// Estimation error for every allocation, tabulated without ranking.
pub fn data_box_experiment(config: &DataBoxConfig) -> Result<(Vec<DataBoxRow>, Table)> {
    if config.replications == 0 {
        return Err(WalkError::InvalidArgument("need at least one replication".into()));
    }
    for &(k, n) in &config.allocations {
        if k == 0 || n == 0 || (k as u64).saturating_mul(n as u64) > config.budget {
            return Err(WalkError::InvalidArgument(format!(
                "allocation k={k}, n={n} does not fit the budget {}",
                config.budget
            )));
        }
    }
    let mut rows = Vec::with_capacity(config.allocations.len());
    for (j, &(k, n)) in config.allocations.iter().enumerate() {
        let results = replicate_errors(
            config.theta_true,
            k,
            n,
            config.replications,
            config.seed,
            (j as u64) << 32,
            &config.options,
        )?;
        let mut errors: Vec<f64> = results.iter().map(|r| r.0).collect();
        let mean = errors.iter().sum::<f64>() / errors.len() as f64;
        rows.push(DataBoxRow {
            k,
            n,
            replications: config.replications,
            median_abs_error: median(&mut errors),
            mean_abs_error: mean,
            high_variance: n == 1,
            flagged: results.iter().filter(|r| r.1).count(),
        });
    }
    let mut table = Table::new(
        Some(config.seed),
        &[
            "theta_true",
            "budget",
            "k",
            "n",
            "replications",
            "median_abs_error",
            "mean_abs_error",
            "high_variance",
            "flagged",
        ],
    );
    for row in &rows {
        table.push(vec![
            Cell::from(config.theta_true),
            Cell::from(config.budget),
            Cell::from(row.k),
            Cell::from(row.n),
            Cell::from(row.replications),
            Cell::from(row.median_abs_error),
            Cell::from(row.mean_abs_error),
            Cell::Int(row.high_variance as i64),
            Cell::from(row.flagged),
        ]);
    }
    Ok((rows, table))
}
