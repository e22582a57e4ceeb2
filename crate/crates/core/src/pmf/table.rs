use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Displacement distribution after `k` steps at a given `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pmf<T> {
    k: usize,
    lambda: T,
    table: BTreeMap<i64, T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PmfViolation {
    OutOfRange { d: i64, p: f64 },
    OffParity { d: i64, p: f64 },
    Negative { d: i64, p: f64 },
    Mass { total: f64 },
}

impl<T: Real> Pmf<T> {
    pub fn from_table(k: usize, lambda: T, entries: Vec<(i64, T)>) -> Self {
        Self {
            k,
            lambda,
            table: entries.into_iter().collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Probability of displacement `d`; zero outside the stored table.
    pub fn get(&self, d: i64) -> T {
        self.table.get(&d).copied().unwrap_or_else(T::zero)
    }

    /// `(d, p)` in increasing `d`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.table.iter().map(|(&d, &p)| (d, p))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn total(&self) -> T {
        self.table.values().copied().sum()
    }

    pub fn mean(&self) -> T {
        self.iter().map(|(d, p)| T::from_i64_lossless(d) * p).sum()
    }

    pub fn variance(&self) -> T {
        let mu = self.mean();
        self.iter()
            .map(|(d, p)| {
                let x = T::from_i64_lossless(d) - mu;
                x * x * p
            })
            .sum()
    }

    pub fn std_dev(&self) -> T {
        self.variance().max(T::zero()).sqrt()
    }

    /// `d ↦ -d`.
    pub fn reflect(&self) -> Self {
        Self {
            k: self.k,
            lambda: self.lambda,
            table: self.table.iter().map(|(&d, &p)| (-d, p)).collect(),
        }
    }

    /// Support and normalization checks for a walk started at the origin:
    /// mass outside `|d| ≤ k` or off the parity of `k` must be exactly zero,
    /// no entry may be negative beyond `tol`, and the total must be one
    /// within `tol`.
    pub fn check(&self, tol: f64) -> Result<(), PmfViolation> {
        let k = self.k as i64;
        for (d, p) in self.iter() {
            let pf = p.to_f64().unwrap_or(f64::NAN);
            if pf < -tol {
                return Err(PmfViolation::Negative { d, p: pf });
            }
            if d.abs() > k && pf != 0.0 {
                return Err(PmfViolation::OutOfRange { d, p: pf });
            }
            if (d - k).rem_euclid(2) != 0 && pf != 0.0 {
                return Err(PmfViolation::OffParity { d, p: pf });
            }
        }
        let total = self.total().to_f64().unwrap_or(f64::NAN);
        if (total - 1.0).abs() > tol {
            return Err(PmfViolation::Mass { total });
        }
        Ok(())
    }

    /// Cumulative probabilities over the stored support, for inverse-CDF
    /// sampling.
    pub fn cumulative(&self) -> Vec<(i64, T)> {
        let mut acc = T::zero();
        self.iter()
            .map(|(d, p)| {
                acc = acc + p;
                (d, acc)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Pmf<f64> {
        Pmf::from_table(2, 0.6, vec![(-2, 0.1296), (0, 0.64), (2, 0.2304)])
    }

    #[test]
    fn moments() {
        let p = sample();
        assert!((p.total() - 1.0).abs() < 1e-15);
        let mean = 2.0 * (0.2304 - 0.1296);
        assert!((p.mean() - mean).abs() < 1e-15);
        let var = 4.0 * (0.2304 + 0.1296) - mean * mean;
        assert!((p.variance() - var).abs() < 1e-14);
    }

    #[test]
    fn reflection_swaps_tails() {
        let r = sample().reflect();
        assert_eq!(r.get(2), 0.1296);
        assert_eq!(r.get(-2), 0.2304);
    }

    #[test]
    fn checks_detect_violations() {
        assert!(sample().check(1e-12).is_ok());
        let off = Pmf::from_table(2, 0.6, vec![(-1, 0.1), (0, 0.9)]);
        assert!(matches!(off.check(1e-12), Err(PmfViolation::OffParity { d: -1, .. })));
        let far = Pmf::from_table(2, 0.6, vec![(4, 0.1), (0, 0.9)]);
        assert!(matches!(far.check(1e-12), Err(PmfViolation::OutOfRange { d: 4, .. })));
        let light = Pmf::from_table(2, 0.6, vec![(0, 0.9)]);
        assert!(matches!(light.check(1e-12), Err(PmfViolation::Mass { .. })));
    }

    #[test]
    fn cumulative_ends_at_total() {
        let c = sample().cumulative();
        assert_eq!(c.len(), 3);
        assert!((c[2].1 - 1.0).abs() < 1e-15);
    }
}
