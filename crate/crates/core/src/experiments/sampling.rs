use rand::Rng;

use super::rng::trial_rng;
use crate::error::{Result, WalkError};
use crate::estimation::TrialDataset;
use crate::pmf::Pmf;

/// `n` draws from `pmf` by inversion of the cumulative distribution over
/// the sorted support, using stream 0 of `seed`.
pub fn sample_positions(pmf: &Pmf<f64>, n: usize, seed: u64) -> Result<TrialDataset> {
    sample_positions_stream(pmf, n, seed, 0)
}

/// As [`sample_positions`] on stream `trial`.
pub fn sample_positions_stream(pmf: &Pmf<f64>, n: usize, seed: u64, trial: u64) -> Result<TrialDataset> {
    let cdf = pmf.cumulative();
    let total = cdf.last().map(|&(_, c)| c).unwrap_or(0.0);
    if !(total > 0.0) {
        return Err(WalkError::InvalidArgument("cannot sample from an empty distribution".into()));
    }
    let mut rng = trial_rng(seed, trial);
    let positions = (0..n)
        .map(|_| {
            let u = rng.gen::<f64>() * total;
            let i = cdf.partition_point(|&(_, c)| c <= u).min(cdf.len() - 1);
            cdf[i].0
        })
        .collect();
    TrialDataset::positions(pmf.k(), positions)
}

/// `n` Bernoulli(`p`) return trials of `k` steps, using stream 0 of `seed`.
pub fn sample_return_trials(k: usize, p: f64, n: u64, seed: u64) -> Result<TrialDataset> {
    sample_return_trials_stream(k, p, n, seed, 0)
}

pub fn sample_return_trials_stream(k: usize, p: f64, n: u64, seed: u64, trial: u64) -> Result<TrialDataset> {
    if !(0.0..=1.0).contains(&p) {
        return Err(WalkError::InvalidArgument(format!("return probability {p} is outside [0, 1]")));
    }
    let mut rng = trial_rng(seed, trial);
    let n0 = (0..n).filter(|_| rng.gen::<f64>() < p).count() as u64;
    TrialDataset::return_counts(k, n, n0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::pmf_full;

    fn positions(data: &TrialDataset) -> &[i64] {
        match data {
            TrialDataset::Positions { positions, .. } => positions,
            _ => unreachable!(),
        }
    }

    #[test]
    fn point_mass() {
        let pmf = pmf_full(6, 0.0).unwrap();
        let data = sample_positions(&pmf, 1000, 1).unwrap();
        assert!(positions(&data).iter().all(|&d| d == 0));
        assert!(positions(&sample_positions(&pmf, 0, 1).unwrap()).is_empty());
    }

    #[test]
    fn two_step_frequencies() {
        let pmf = pmf_full(2, 0.6).unwrap();
        let n = 100_000usize;
        let data = sample_positions(&pmf, n, 2024).unwrap();
        for (d, p) in pmf.iter() {
            let count = positions(&data).iter().filter(|&&x| x == d).count() as f64;
            let sd = (n as f64 * p * (1.0 - p)).sqrt();
            assert!((count - n as f64 * p).abs() < 3.0 * sd, "d={d}");
        }
    }

    #[test]
    fn bernoulli_extremes_and_concentration() {
        assert_eq!(sample_return_trials(2, 1.0, 500, 3).unwrap(), TrialDataset::ReturnCounts { k: 2, n: 500, n0: 500 });
        assert_eq!(sample_return_trials(2, 0.0, 500, 3).unwrap(), TrialDataset::ReturnCounts { k: 2, n: 500, n0: 0 });
        let TrialDataset::ReturnCounts { n0, .. } = sample_return_trials(2, 0.64, 10_000, 3).unwrap() else {
            unreachable!()
        };
        let sd = (10_000.0f64 * 0.64 * 0.36).sqrt();
        assert!((n0 as f64 - 6400.0).abs() < 3.0 * sd);
        assert!(sample_return_trials(2, 1.5, 5, 3).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        let pmf = pmf_full(8, 0.3).unwrap();
        assert_eq!(sample_positions(&pmf, 50, 9).unwrap(), sample_positions(&pmf, 50, 9).unwrap());
        assert_ne!(sample_positions(&pmf, 50, 9).unwrap(), sample_positions(&pmf, 50, 10).unwrap());
    }
}
