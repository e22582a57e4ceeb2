use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Result, WalkError};
use crate::estimation::linspace;
use crate::io::{Cell, Table};
use crate::pmf::{pmf_full, return_probability};

/// Step count of the surface plot.
pub const FIG1_K: usize = 100;
/// `λ` samples across `[-1, 1]`.
pub const FIG_LAMBDA_POINTS: usize = 101;
/// Step counts of the curve families.
pub const FIG2_KS: [usize; 7] = [8, 16, 32, 64, 128, 256, 512];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Fig1,
    Fig2a,
    Fig2b,
}

impl FigureKind {
    pub const ALL: [FigureKind; 3] = [FigureKind::Fig1, FigureKind::Fig2a, FigureKind::Fig2b];

    pub fn name(self) -> &'static str {
        match self {
            FigureKind::Fig1 => "fig1",
            FigureKind::Fig2a => "fig2a",
            FigureKind::Fig2b => "fig2b",
        }
    }

    /// The figure's table at its default resolution.
    pub fn build(self, seed: Option<u64>) -> Result<Table> {
        match self {
            FigureKind::Fig1 => fig1(FIG1_K, FIG_LAMBDA_POINTS, seed),
            FigureKind::Fig2a => fig2a(FIG_LAMBDA_POINTS, seed),
            FigureKind::Fig2b => fig2b(FIG_LAMBDA_POINTS, seed),
        }
    }
}

impl fmt::Display for FigureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureKind {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        FigureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| WalkError::Parse(format!("unknown figure `{s}` (expected fig1, fig2a or fig2b)")))
    }
}

/// `p(d; λ)` for every `d ∈ [-k, k]` (zero off parity) over a `λ` grid:
/// `lambdas × (2k + 1)` rows of `(k, lambda, d, r, p)`.
pub fn fig1(k: usize, lambdas: usize, seed: Option<u64>) -> Result<Table> {
    if k == 0 {
        return Err(WalkError::InvalidArgument("fig1 needs k >= 1".into()));
    }
    let ki = k as i64;
    let blocks = linspace(-1.0, 1.0, lambdas)
        .into_par_iter()
        .map(|l| {
            let pmf = pmf_full(k, l)?;
            Ok((-ki..=ki)
                .map(|d| {
                    vec![
                        Cell::from(k),
                        Cell::from(l),
                        Cell::from(d),
                        Cell::from(d as f64 / k as f64),
                        Cell::from(pmf.get(d)),
                    ]
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(seed, &["k", "lambda", "d", "r", "p"]);
    blocks.into_iter().flatten().for_each(|row| table.push(row));
    Ok(table)
}

/// `p(d_k; λ)` against `λ` for each `k` of [`FIG2_KS`], rows
/// `(k, d, r, lambda, p)`.
pub fn fig2(lambdas: usize, seed: Option<u64>, site: impl Fn(usize) -> i64 + Sync) -> Result<Table> {
    let grid = linspace(-1.0, 1.0, lambdas);
    let mut table = Table::new(seed, &["k", "d", "r", "lambda", "p"]);
    for k in FIG2_KS {
        let d = site(k);
        let ps = grid
            .par_iter()
            .map(|&l| pmf_full(k, l).map(|pmf| pmf.get(d)))
            .collect::<Result<Vec<_>>>()?;
        for (&l, p) in grid.iter().zip(ps) {
            table.push(vec![
                Cell::from(k),
                Cell::from(d),
                Cell::from(d as f64 / k as f64),
                Cell::from(l),
                Cell::from(p),
            ]);
        }
    }
    Ok(table)
}

/// Return-probability curves, `d = 0`.
pub fn fig2a(lambdas: usize, seed: Option<u64>) -> Result<Table> {
    fig2(lambdas, seed, |_| 0)
}

/// Curves at reluctance `r = d/k = 0.25`.
pub fn fig2b(lambdas: usize, seed: Option<u64>) -> Result<Table> {
    fig2(lambdas, seed, |k| (k / 4) as i64)
}

/// Smallest `λ > 0` at which the return probability falls to half its
/// peak value `p^(k)(0; 0) = 1`: a march in steps of `1/(4k)` followed by
/// bisection.
pub fn peak_half_width(k: usize) -> Result<f64> {
    let half = 0.5 * return_probability(k, 0.0)?;
    let step = 0.25 / k.max(1) as f64;
    let mut lo = 0.0;
    loop {
        let hi = (lo + step).min(1.0);
        if return_probability(k, hi)? <= half {
            let roots = level_set_solve_monotone(half, k, lo, hi)?;
            return Ok(roots);
        }
        if hi >= 1.0 {
            return Err(WalkError::Estimation(format!("return probability never halves for k={k}")));
        }
        lo = hi;
    }
}

/// Bisection for `p^(k)(0; λ) = f` on a bracket where the return
/// probability crosses `f` from above.
fn level_set_solve_monotone(f: f64, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if return_probability(k, mid)? > f {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Reluctance `d/k` of the most likely displacement; ties go to the
/// smaller `|d|`.
pub fn ridge_reluctance(k: usize, lambda: f64) -> Result<f64> {
    let pmf = pmf_full(k, lambda)?;
    let (d, _) = pmf
        .iter()
        .fold((0i64, f64::NEG_INFINITY), |best, (d, p)| {
            if p > best.1 || (p == best.1 && d.abs() < best.0.abs()) {
                (d, p)
            } else {
                best
            }
        });
    Ok(d as f64 / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape() {
        let t = fig1(FIG1_K, FIG_LAMBDA_POINTS, Some(1)).unwrap();
        assert_eq!(t.rows.len(), 101 * 201);
        let odd = t.rows.iter().filter(|r| matches!(r[2], Cell::Int(d) if d % 2 != 0));
        assert!(odd.into_iter().all(|r| r[4].as_f64() == 0.0));
    }

    #[test]
    fn names_parse() {
        for kind in FigureKind::ALL {
            assert_eq!(kind.name().parse::<FigureKind>().unwrap(), kind);
        }
        assert!("fig3".parse::<FigureKind>().is_err());
    }

    #[test]
    fn half_width_shrinks() {
        let w: Vec<f64> = [8usize, 16, 32].iter().map(|&k| peak_half_width(k).unwrap()).collect();
        assert!(w[0] > w[1] && w[1] > w[2], "{w:?}");
        for (&k, &x) in [8usize, 16, 32].iter().zip(&w) {
            assert!((return_probability(k, x).unwrap() - 0.5).abs() < 1e-12);
        }
        // two steps: 1 - λ² = 1/2
        assert!((peak_half_width(2).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ridge_extremes() {
        assert_eq!(ridge_reluctance(10, 0.0).unwrap(), 0.0);
        assert_eq!(ridge_reluctance(10, 1.0).unwrap().abs(), 1.0);
    }
}
