use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::io::{Cell, Table};
use crate::pmf::pmf_full;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffusionMode {
    Quantum,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionPoint {
    pub k: usize,
    pub sigma: f64,
}

/// Standard deviation of the displacement after each `k`: exact moments of
/// the quantum distribution, or `√k` for the unbiased classical walk.
pub fn diffusion_experiment(theta: f64, ks: &[usize], mode: DiffusionMode) -> Result<Vec<DiffusionPoint>> {
    if ks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(WalkError::InvalidArgument("step counts must be strictly increasing".into()));
    }
    ks.iter()
        .map(|&k| {
            let sigma = match mode {
                DiffusionMode::Quantum => pmf_full(k, theta.cos())?.std_dev(),
                DiffusionMode::Classical => (k as f64).sqrt(),
            };
            Ok(DiffusionPoint { k, sigma })
        })
        .collect()
}

/// Quantum and classical spreads side by side.
pub fn diffusion_table(theta: f64, ks: &[usize], seed: Option<u64>) -> Result<Table> {
    let quantum = diffusion_experiment(theta, ks, DiffusionMode::Quantum)?;
    let classical = diffusion_experiment(theta, ks, DiffusionMode::Classical)?;
    let mut table = Table::new(seed, &["theta", "k", "sigma_quantum", "sigma_classical"]);
    for (q, c) in quantum.iter().zip(&classical) {
        table.push(vec![Cell::from(theta), Cell::from(q.k), Cell::from(q.sigma), Cell::from(c.sigma)]);
    }
    Ok(table)
}

/// Least-squares slope of `ln σ` against `ln k`.
pub fn loglog_slope(points: &[DiffusionPoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.k > 0 && p.sigma > 0.0)
        .map(|p| ((p.k as f64).ln(), p.sigma.ln()))
        .collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}
