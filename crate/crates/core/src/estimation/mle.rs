use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::TrialDataset;
use super::likelihood::{expected_log_likelihood, log_likelihood};
use super::optimize::{derivatives, golden_section_max, linspace};
use crate::error::{Result, WalkError};
use crate::io::Stamp;
use crate::pmf::pmf_point;

/// Grid values closer than this to the grid maximum start a candidate.
const CANDIDATE_WINDOW: f64 = 1e-6;
/// Grids whose spread is below this are reported as flat.
const FLAT_SPREAD: f64 = 1e-14;
const DIFF_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateOptions {
    pub theta_min: f64,
    pub theta_max: f64,
    pub grid_size: usize,
    pub refine_tolerance: f64,
}

impl Default for EstimateOptions {
    /// `θ ∈ [0, π/2]`, on which `λ = cos θ` sweeps `[0, 1]` once.
    fn default() -> Self {
        Self {
            theta_min: 0.0,
            theta_max: FRAC_PI_2,
            grid_size: 401,
            refine_tolerance: 1e-10,
        }
    }
}

impl EstimateOptions {
    /// `θ ∈ [-π, π]`.
    pub fn full_range() -> Self {
        Self {
            theta_min: -PI,
            theta_max: PI,
            grid_size: 1601,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.theta_min < self.theta_max) || !self.theta_min.is_finite() || !self.theta_max.is_finite() {
            return Err(WalkError::InvalidArgument("theta range must be finite and non-empty".into()));
        }
        if self.grid_size < 3 {
            return Err(WalkError::InvalidArgument("grid needs at least 3 points".into()));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(WalkError::InvalidArgument("refine tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// A refined local maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub theta: f64,
    pub lambda: f64,
    pub loglik: f64,
}

/// Outcome of [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub theta_hat: f64,
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
    pub candidates: Vec<Candidate>,
    pub flat: bool,
    pub boundary: bool,
}

/// Grid scan over the `θ` range, golden-section refinement of every local
/// grid maximum within `1e-6` of the best grid value, and a
/// finite-difference curvature at the winner. Ties go to the smaller `θ`.
///
/// A maximum on the range edge counts as a boundary maximum when the
/// objective keeps increasing just outside the range.
pub fn maximize<F>(f: F, opts: &EstimateOptions) -> Result<Maximum>
where
    F: Fn(f64) -> f64 + Sync,
{
    opts.check()?;
    let grid = linspace(opts.theta_min, opts.theta_max, opts.grid_size);
    let values: Vec<f64> = grid.par_iter().map(|&t| f(t)).collect();
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(WalkError::Estimation("log-likelihood is not finite anywhere on the grid".into()));
    }
    let top = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bottom = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let flat = finite.len() == values.len() && top - bottom <= FLAT_SPREAD;

    let n = grid.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        let v = values[i];
        let left = if i > 0 { values[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < n { values[i + 1] } else { f64::NEG_INFINITY };
        if !(v.is_finite() && v > left && v >= right && v >= top - CANDIDATE_WINDOW) {
            continue;
        }
        let a = grid[i.saturating_sub(1)];
        let b = grid[(i + 1).min(n - 1)];
        let (theta, loglik) = golden_section_max(&f, a, b, opts.refine_tolerance);
        let (theta, loglik) = if loglik >= v { (theta, loglik) } else { (grid[i], v) };
        candidates.push(Candidate {
            theta,
            lambda: theta.cos(),
            loglik,
        });
    }
    if flat || candidates.is_empty() {
        let theta = grid[values.iter().position(|&v| v == top).unwrap_or(0)];
        candidates = vec![Candidate {
            theta,
            lambda: theta.cos(),
            loglik: top,
        }];
    }
    let best = candidates.iter().map(|c| c.loglik).fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * best.abs().max(1.0);
    let winner = *candidates
        .iter()
        .find(|c| c.loglik >= best - tie)
        .expect("at least one candidate");

    let edge_tol = 4.0 * opts.refine_tolerance;
    let probe = (10.0 * opts.refine_tolerance).max(1e-7);
    let boundary = !flat
        && ((winner.theta - opts.theta_min <= edge_tol && f(opts.theta_min - probe) > winner.loglik)
            || (opts.theta_max - winner.theta <= edge_tol && f(opts.theta_max + probe) > winner.loglik));
    let (slope, curvature) = derivatives(&f, winner.theta, DIFF_STEP);
    Ok(Maximum {
        theta_hat: winner.theta,
        value: winner.loglik,
        slope,
        curvature,
        candidates,
        flat,
        boundary,
    })
}

/// Serialized estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub theta_hat: f64,
    pub lambda_hat: f64,
    pub loglik: f64,
    /// Finite-difference second derivative of the log-likelihood at the
    /// estimate.
    pub curvature: f64,
    /// `p'² - p'' p` for the single outcome probability the likelihood is
    /// built from, when there is one.
    pub positivity: Option<f64>,
    pub candidates: Vec<Candidate>,
    pub k: usize,
    pub n: u64,
    pub flat_likelihood: bool,
    pub boundary_maximum: bool,
    #[serde(flatten)]
    pub stamp: Stamp,
}

impl EstimateResult {
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.stamp.seed = seed;
        self
    }

    /// Why the estimate should not be trusted, if it should not.
    pub fn failure(&self) -> Option<&'static str> {
        if self.flat_likelihood {
            Some("likelihood is flat over the search range")
        } else if self.boundary_maximum {
            Some("likelihood maximum lies on the boundary of the search range")
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The outcome whose probability alone determines the likelihood: the
/// return site for return counts, or the common position when every
/// sample coincides.
fn single_outcome(data: &TrialDataset) -> Option<i64> {
    match data {
        TrialDataset::ReturnCounts { .. } => Some(0),
        TrialDataset::Positions { positions, .. } => {
            let first = *positions.first()?;
            positions.iter().all(|&d| d == first).then_some(first)
        }
    }
}

/// Maximum-likelihood estimate of `θ`.
pub fn mle_estimate(data: &TrialDataset, opts: &EstimateOptions) -> Result<EstimateResult> {
    data.validate()?;
    if data.n() == 0 {
        return Err(WalkError::EmptyData);
    }
    let max = maximize(|t| log_likelihood(data, t).unwrap_or(f64::NAN), opts)?;
    let k = data.k();
    let positivity = single_outcome(data).and_then(|x| {
        let p = |t: f64| pmf_point(k, x, t.cos()).unwrap_or(f64::NAN);
        let (d1, d2) = derivatives(p, max.theta_hat, DIFF_STEP);
        let value = d1 * d1 - d2 * p(max.theta_hat);
        value.is_finite().then_some(value)
    });
    Ok(EstimateResult {
        theta_hat: max.theta_hat,
        lambda_hat: max.theta_hat.cos(),
        loglik: max.value,
        curvature: max.curvature,
        positivity,
        candidates: max.candidates,
        k,
        n: data.n(),
        flat_likelihood: max.flat,
        boundary_maximum: max.boundary,
        stamp: Stamp::new(None),
    })
}

/// Maximizer of the expected log-likelihood under `θ*`, i.e. the estimate
/// from a sample whose frequencies equal the true probabilities.
pub fn mle_expected(k: usize, theta_true: f64, opts: &EstimateOptions) -> Result<Maximum> {
    maximize(
        |t| expected_log_likelihood(k, theta_true, t).unwrap_or(f64::NAN),
        opts,
    )
}
