use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::TrialDataset;
use super::optimize::{derivatives, linspace};
use crate::error::{Result, WalkError};
use crate::pmf::{pmf_full, pmf_point, return_probability};

/// `count * ln p` with `0 ln 0 = 0` and `-inf` for an observed impossible
/// outcome.
fn weighted_log(count: f64, p: f64) -> f64 {
    if count == 0.0 {
        0.0
    } else if p <= 0.0 {
        f64::NEG_INFINITY
    } else {
        count * p.ln()
    }
}

fn tally(positions: &[i64]) -> BTreeMap<i64, u64> {
    let mut counts = BTreeMap::new();
    for &d in positions {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts
}

/// Log-likelihood of `θ` given the data.
pub fn log_likelihood(data: &TrialDataset, theta: f64) -> Result<f64> {
    data.validate()?;
    match data {
        TrialDataset::Positions { k, positions } => {
            let pmf = pmf_full(*k, theta.cos())?;
            Ok(tally(positions)
                .into_iter()
                .map(|(d, c)| weighted_log(c as f64, pmf.get(d)))
                .sum())
        }
        TrialDataset::ReturnCounts { k, n, n0 } => bernoulli_return_log_likelihood(*n0, *n, *k, theta.cos()),
    }
}

/// `n ln p^(k)(x | θ)`: `n` repetitions that all ended at `x`.
pub fn loop_log_likelihood(x: i64, n: u64, k: usize, theta: f64) -> Result<f64> {
    let p = pmf_point(k, x, theta.cos())?;
    Ok(weighted_log(n as f64, p))
}

/// `Σ_j ln p^(k)(d_j | θ)`; all displacements must be reachable in `k`
/// steps.
pub fn displacement_likelihood(displacements: &[i64], k: usize, theta: f64) -> Result<f64> {
    log_likelihood(
        &TrialDataset::Positions {
            k,
            positions: displacements.to_vec(),
        },
        theta,
    )
}

/// `n0 ln p + (n - n0) ln(1 - p)` with `p = p^(k)(0; λ)`.
pub fn bernoulli_return_log_likelihood(n0: u64, n: u64, k: usize, lambda: f64) -> Result<f64> {
    if n0 > n {
        return Err(WalkError::CountsInvalid { n0, n });
    }
    let p = return_probability(k, lambda)?;
    Ok(weighted_log(n0 as f64, p) + weighted_log((n - n0) as f64, 1.0 - p))
}

/// `Σ_d p(d | θ*) ln p(d | θ)`, the large-sample limit of the
/// per-trial log-likelihood.
pub fn expected_log_likelihood(k: usize, theta_true: f64, theta: f64) -> Result<f64> {
    let truth = pmf_full(k, theta_true.cos())?;
    let model = pmf_full(k, theta.cos())?;
    Ok(truth.iter().map(|(d, w)| weighted_log(w, model.get(d))).sum())
}

/// Probability of moving from `a` to `b` in `k` steps.
pub fn transition_probability(a: i64, b: i64, k: usize, theta: f64) -> Result<f64> {
    pmf_point(k, b - a, theta.cos())
}

/// The log-likelihood sampled on a `θ` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodCurve {
    pub k: usize,
    pub grid: Vec<(f64, f64)>,
    pub argmax_theta: f64,
    pub curvature: f64,
}

pub fn likelihood_curve(data: &TrialDataset, theta_min: f64, theta_max: f64, size: usize) -> Result<LikelihoodCurve> {
    data.validate()?;
    if size == 0 || !(theta_min < theta_max) {
        return Err(WalkError::InvalidArgument("likelihood grid needs size > 0 and a non-empty range".into()));
    }
    let grid = linspace(theta_min, theta_max, size)
        .into_par_iter()
        .map(|t| log_likelihood(data, t).map(|l| (t, l)))
        .collect::<Result<Vec<_>>>()?;
    let (argmax_theta, _) = grid
        .iter()
        .copied()
        .fold((theta_min, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best });
    let (_, curvature) = derivatives(|t| log_likelihood(data, t).unwrap_or(f64::NAN), argmax_theta, 1e-4);
    Ok(LikelihoodCurve {
        k: data.k(),
        grid,
        argmax_theta,
        curvature,
    })
}
