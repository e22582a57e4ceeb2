use reluctant_walk::estimation::TrialDataset;
use reluctant_walk::experiments::{sample_positions, sample_return_trials};
use reluctant_walk::pmf::pmf_full;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pinned seeds; each (k, λ) cell uses its own.
const SEEDS: [u64; 9] = [11, 12, 13, 21, 22, 23, 31, 32, 33];

/// Pearson statistic over cells merged until each expects at least 5 draws.
fn chi_square(expected: &[(i64, f64)], observed: &[i64], n: usize) -> (f64, usize) {
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut e_acc, mut o_acc) = (0.0, 0.0);
    for &(d, p) in expected {
        e_acc += p * n as f64;
        o_acc += observed.iter().filter(|&&x| x == d).count() as f64;
        if e_acc >= 5.0 {
            cells.push((e_acc, o_acc));
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if let Some(last) = cells.last_mut() {
        last.0 += e_acc;
        last.1 += o_acc;
    }
    let stat = cells.iter().map(|(e, o)| (o - e) * (o - e) / e).sum();
    (stat, cells.len() - 1)
}

#[test]
fn sampled_positions_fit_the_pmf() {
    let n = 100_000;
    let mut seeds = SEEDS.iter();
    for k in [2usize, 8, 20] {
        for l in [0.3, 0.6, 0.9] {
            let seed = *seeds.next().unwrap();
            let pmf = pmf_full(k, l).unwrap();
            let TrialDataset::Positions { positions, .. } = sample_positions(&pmf, n, seed).unwrap() else {
                unreachable!()
            };
            let expected: Vec<(i64, f64)> = pmf.iter().collect();
            let (stat, dof) = chi_square(&expected, &positions, n);
            let p_value = 1.0 - ChiSquared::new(dof as f64).unwrap().cdf(stat);
            assert!(p_value > 0.001, "k={k} lambda={l} seed={seed}: chi2={stat:.2} dof={dof} p={p_value:.2e}");
        }
    }
}

#[test]
fn return_counts_concentrate() {
    for (p, seed) in [(0.1, 1u64), (0.64, 2), (0.97, 3)] {
        let n = 10_000u64;
        let TrialDataset::ReturnCounts { n0, .. } = sample_return_trials(4, p, n, seed).unwrap() else {
            unreachable!()
        };
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((n0 as f64 - n as f64 * p).abs() < 3.0 * sd, "p={p}: {n0}");
    }
}
