//! End-to-end acceptance checks. Runs as a plain binary so that every
//! criterion reports a line even when an earlier one fails.

use std::f64::consts::{FRAC_PI_3, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use reluctant_walk::estimation::{
    level_set_solve, mle_estimate, mle_expected, monotone_segments, EstimateOptions, DatasetDocument,
};
use reluctant_walk::experiments::{
    data_box_experiment, diffusion_experiment, loglog_slope, peak_half_width, replicate_errors,
    sample_positions, DataBoxConfig, DiffusionMode, FigureKind, FIG2_KS,
};
use reluctant_walk::io::Cell;
use reluctant_walk::pmf::{pmf_full, pmf_full_exact, pmf_point, return_probability, CONVENTION_SIGMA};
use reluctant_walk::special::chebyshev_identity_suite;
use reluctant_walk::walk::{
    evolve, kernel_power, kernel_power_iterated, kraus_kernels, position_pmf, CoinParameter, WalkState,
};

type Check = Result<String, String>;

fn lambda_grid() -> Vec<f64> {
    (-19..=19).map(|i| f64::from(i) * 0.05).collect()
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut at = (0, 0, 0.0);
    for k in 1..=50usize {
        for l in lambda_grid() {
            let coin = CoinParameter::from_lambda(l).map_err(|e| e.to_string())?;
            let sim = position_pmf(&evolve(&WalkState::origin(), &coin, k), coin.lambda());
            let ki = k as i64;
            for d in (-ki..=ki).step_by(2) {
                let analytic = pmf_point(k, CONVENTION_SIGMA * d, coin.lambda()).map_err(|e| e.to_string())?;
                let r = (analytic - sim.get(d)).abs();
                if !(r <= worst) {
                    worst = r;
                    at = (k, d, l);
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("worst {worst:.2e} at k={} d={} lambda={:.2}", at.0, at.1, at.2);
    if worst <= 1e-9 && secs < 60.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn normalization_and_parity() -> Check {
    let lambdas = [-1.0, -0.95, -0.6, -0.3, 0.0, 0.3, 0.6, 0.95, 1.0];
    let per_k = (1..=200usize)
        .into_par_iter()
        .map(|k| -> Result<f64, String> {
            let ki = k as i64;
            let mut worst = 0.0f64;
            for &l in &lambdas {
                let pmf = pmf_full_exact(k, l).map_err(|e| e.to_string())?;
                worst = worst.max((pmf.total() - 1.0).abs());
                for d in -ki - 2..=ki + 2 {
                    let off = d.abs() > ki || (ki - d) % 2 != 0;
                    if off && pmf_point(k, d, l).map_err(|e| e.to_string())? != 0.0 {
                        return Err(format!("non-zero mass off support at k={k} d={d} lambda={l}"));
                    }
                }
            }
            let table = pmf_full(k, 0.37f64).map_err(|e| e.to_string())?;
            Ok(worst.max((table.total() - 1.0).abs()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let worst = per_k.into_iter().fold(0.0f64, f64::max);
    let msg = format!("worst |total - 1| = {worst:.2e}");
    if worst <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn two_step_row() -> Check {
    let mut worst = 0.0f64;
    for l in lambda_grid().into_iter().chain([-1.0, 0.6, 1.0]) {
        let l2 = l * l;
        let want = [(-2, l2 * l2), (0, 1.0 - l2), (2, l2 * (1.0 - l2))];
        for (d, p) in want {
            worst = worst.max((pmf_point(2, d, l).map_err(|e| e.to_string())? - p).abs());
        }
    }
    let msg = format!("worst {worst:.2e}");
    if worst <= 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn kraus_trace() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let phi = rng.gen_range(0.0..2.0 * PI);
        let coin = CoinParameter::new(rng.gen_range(-PI..PI));
        let k = rng.gen_range(1..=100usize);
        let (a, b) = kraus_kernels(phi, &coin, k);
        worst = worst.max((a.norm_sqr() + b.norm_sqr() - 1.0).abs());
    }
    let msg = format!("worst {worst:.2e} over 10^4 triples");
    if worst <= 1e-11 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn kernel_power_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let phi = rng.gen_range(0.0..2.0 * PI);
        let coin = CoinParameter::new(rng.gen_range(-PI..PI));
        for k in 1..=100usize {
            let diff = kernel_power(phi, &coin, k).max_abs_diff(&kernel_power_iterated(phi, &coin, k));
            worst = worst.max(diff);
        }
    }
    let msg = format!("worst entry difference {worst:.2e}");
    if worst <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn figure_structure() -> Check {
    let fig2a = FigureKind::Fig2a.build(Some(0)).map_err(|e| e.to_string())?;
    let (ck, cl, cp) = (fig2a.column("k").unwrap(), fig2a.column("lambda").unwrap(), fig2a.column("p").unwrap());
    for k in FIG2_KS {
        let curve: Vec<(f64, f64)> = fig2a
            .rows
            .iter()
            .filter(|r| r[ck] == Cell::from(k))
            .map(|r| (r[cl].as_f64(), r[cp].as_f64()))
            .collect();
        let top = curve.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
        let argmax: Vec<f64> = curve.iter().filter(|c| c.1 == top).map(|c| c.0).collect();
        if argmax != [0.0] {
            return Err(format!("k={k}: maximum at {argmax:?}"));
        }
    }
    let widths = FIG2_KS
        .iter()
        .map(|&k| peak_half_width(k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if widths.windows(2).any(|w| w[1] >= w[0]) {
        return Err(format!("half widths not decreasing: {widths:?}"));
    }

    let fig1 = FigureKind::Fig1.build(Some(0)).map_err(|e| e.to_string())?;
    let (cl, cr, cp) = (fig1.column("lambda").unwrap(), fig1.column("r").unwrap(), fig1.column("p").unwrap());
    let mut ridge: Vec<(f64, f64)> = Vec::new();
    for block in fig1.rows.chunks(201) {
        let best = block.iter().fold(None::<&Vec<Cell>>, |best, row| match best {
            Some(b) if b[cp].as_f64() > row[cp].as_f64() => Some(b),
            Some(b) if b[cp].as_f64() == row[cp].as_f64() && b[cr].as_f64().abs() <= row[cr].as_f64().abs() => Some(b),
            _ => Some(row),
        });
        let row = best.unwrap();
        ridge.push((row[cl].as_f64().abs(), row[cr].as_f64().abs()));
    }
    ridge.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if let Some(w) = ridge.windows(2).find(|w| w[1].1 < w[0].1) {
        return Err(format!("ridge |r| decreases between |lambda| = {} and {}", w[0].0, w[1].0));
    }
    Ok(format!(
        "fig2a peaks at lambda = 0; half widths {:.4} -> {:.4}; ridge |r| monotone in |lambda|",
        widths[0],
        widths[widths.len() - 1]
    ))
}

fn mle_self_consistency() -> Check {
    let opts = EstimateOptions::default();
    let mut worst = 0.0f64;
    for &theta in &[0.2, 0.5, 0.9, 1.3] {
        for k in [8usize, 16, 32] {
            let max = mle_expected(k, theta, &opts).map_err(|e| e.to_string())?;
            worst = worst.max((max.theta_hat - theta).abs());
        }
    }
    let msg = format!("worst |theta_hat - theta*| = {worst:.2e}");
    if worst <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn level_set_inversion() -> Check {
    let mut worst = 0.0f64;
    for &truth in &[0.1, 0.3, 0.6] {
        for k in [4usize, 8, 16] {
            let f = return_probability(k, truth).map_err(|e| e.to_string())?;
            let (lo, hi) = monotone_segments(k, 0.0, 1.0).map_err(|e| e.to_string())?[0];
            let roots = level_set_solve(f, k, lo, hi).map_err(|e| e.to_string())?;
            let err = roots.iter().map(|r| (r - truth).abs()).fold(f64::INFINITY, f64::min);
            worst = worst.max(err);
        }
    }
    let msg = format!("worst recovery error {worst:.2e}");
    if worst <= 1e-8 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn statistical_consistency() -> Check {
    let opts = EstimateOptions::default();
    let pmf = pmf_full(20, 0.3f64.cos()).map_err(|e| e.to_string())?;
    let data = sample_positions(&pmf, 10_000, 7).map_err(|e| e.to_string())?;
    let single = (mle_estimate(&data, &opts).map_err(|e| e.to_string())?.theta_hat - 0.3).abs();
    let mut medians = Vec::new();
    for (i, n) in [100usize, 1_000, 10_000].into_iter().enumerate() {
        let mut errors: Vec<f64> = replicate_errors(0.3, 20, n, 32, 2024, (i as u64) << 32, &opts)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|e| e.0)
            .collect();
        errors.sort_by(f64::total_cmp);
        medians.push(0.5 * (errors[15] + errors[16]));
    }
    let inversions = medians.windows(2).filter(|w| w[1] > w[0]).count();
    let msg = format!(
        "seed-7 error {single:.4}; median errors {}; {inversions} inversion(s)",
        medians.iter().map(|m| format!("{m:.2e}")).collect::<Vec<_>>().join(" > ")
    );
    if single < 0.05 && inversions <= 1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn diffusion_scaling() -> Check {
    let ks = [16usize, 32, 64, 128, 256];
    let quantum = diffusion_experiment(FRAC_PI_3, &ks, DiffusionMode::Quantum).map_err(|e| e.to_string())?;
    let slope = loglog_slope(&quantum).ok_or("no slope")?;
    let classical = diffusion_experiment(FRAC_PI_3, &ks, DiffusionMode::Classical).map_err(|e| e.to_string())?;
    let exact = classical.iter().all(|p| p.sigma == (p.k as f64).sqrt());
    let msg = format!("quantum slope {slope:.4}; classical sigma = sqrt(k): {exact}");
    if (0.9..=1.1).contains(&slope) && exact {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn identity_suite() -> Check {
    let mut worst = 0.0f64;
    for r in 0..=5 {
        for &l in &[0.0, 0.3, 0.7, 1.0] {
            worst = worst.max(chebyshev_identity_suite(r, l, 0).max_residual());
        }
    }
    let msg = format!("worst residual {worst:.2e}");
    if worst < 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Check {
    let run = || -> Result<Vec<String>, String> {
        let pmf = pmf_full(12, 0.45).map_err(|e| e.to_string())?;
        let data = sample_positions(&pmf, 500, 99).map_err(|e| e.to_string())?;
        let estimate = mle_estimate(&data, &EstimateOptions::default()).map_err(|e| e.to_string())?;
        let config = DataBoxConfig {
            theta_true: 0.3,
            budget: 4000,
            allocations: vec![(2, 2000), (20, 200)],
            replications: 4,
            seed: 99,
            options: EstimateOptions::default(),
        };
        let (_, report) = data_box_experiment(&config).map_err(|e| e.to_string())?;
        Ok(vec![
            DatasetDocument::new(data, Some(99)).to_csv(),
            estimate.with_seed(Some(99)).to_json().map_err(|e| e.to_string())?,
            report.to_csv(),
            FigureKind::Fig2b.build(Some(99)).map_err(|e| e.to_string())?.to_csv(),
        ])
    };
    let (a, b) = (run()?, run()?);
    if a == b {
        Ok(format!("{} artifacts byte-identical across two runs", a.len()))
    } else {
        Err("artifacts differ between runs".into())
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("oracle equivalence", oracle_equivalence),
        ("normalization and parity", normalization_and_parity),
        ("closed-form two-step row", two_step_row),
        ("Kraus trace preservation", kraus_trace),
        ("kernel-power identity", kernel_power_identity),
        ("figure structure", figure_structure),
        ("MLE self-consistency", mle_self_consistency),
        ("level-set inversion", level_set_inversion),
        ("statistical consistency", statistical_consistency),
        ("diffusion scaling", diffusion_scaling),
        ("Chebyshev identity suite", identity_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1} s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
