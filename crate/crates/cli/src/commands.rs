use std::fmt;
use std::path::{Path, PathBuf};

use reluctant_walk::estimation::{
    likelihood_curve, level_set_solve, mle_estimate, DatasetDocument, EstimateOptions, TrialDataset,
};
use reluctant_walk::experiments::{
    data_box_experiment, diffusion_experiment, diffusion_table, loglog_slope, sample_positions,
    sample_return_trials, DataBoxConfig, DiffusionMode, FigureKind,
};
use reluctant_walk::io::{write_atomic, Cell, Table};
use reluctant_walk::pmf::{
    detect_convention_sigma, pmf_full, pmf_point, return_probability, to_module_displacement, Pmf, PmfDocument,
    CONVENTION_SIGMA,
};
use reluctant_walk::walk::{evolve, position_pmf, CoinParameter, WalkState};
use reluctant_walk::WalkError;

use crate::args::*;

/// A failed run and its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, bad input files, arguments outside the domain: exit 2.
    Usage(String),
    /// A validation check did not pass: exit 1.
    Validation(String),
    /// The likelihood could not be maximized reliably: exit 3.
    Estimation(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Estimation(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Estimation(m) => f.write_str(m),
        }
    }
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Estimation(_) => Failure::Estimation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Explicit path, else `$RWALK_OUT_DIR/<name>.<ext>`, else standard output.
fn emit(out: Option<&Path>, format: Format, name: &str, text: &str) -> Outcome {
    let target = out.map(Path::to_path_buf).or_else(|| {
        std::env::var_os("RWALK_OUT_DIR").map(|dir| PathBuf::from(dir).join(format!("{name}.{}", format.extension())))
    });
    match target {
        Some(path) => {
            write_atomic(&path, text.as_bytes())?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_table(output: &OutputArgs, name: &str, table: &Table) -> Outcome {
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()?,
    };
    emit(output.out.as_deref(), output.format, name, &text)
}

fn coin(args: &CoinArgs) -> Result<CoinParameter<f64>, Failure> {
    match (args.lambda, args.theta) {
        (Some(l), None) => Ok(CoinParameter::from_lambda(l)?),
        (None, Some(t)) if t.is_finite() => Ok(CoinParameter::new(t)),
        _ => Err(Failure::Usage("give exactly one finite --lambda or --theta".into())),
    }
}

fn lambda(args: &CoinArgs) -> Result<f64, Failure> {
    match (args.lambda, args.theta) {
        (Some(l), None) => Ok(l),
        (None, Some(t)) => Ok(t.cos()),
        _ => Err(Failure::Usage("give exactly one of --lambda or --theta".into())),
    }
}

fn emit_pmf(output: &OutputArgs, name: &str, pmf: Pmf<f64>, seed: u64) -> Outcome {
    let doc = PmfDocument::new(pmf, Some(seed));
    let text = match output.format {
        Format::Csv => doc.to_csv(),
        Format::Json => doc.to_json()?,
    };
    emit(output.out.as_deref(), output.format, name, &text)
}

pub fn pmf(args: &PmfArgs, seed: u64) -> Outcome {
    let pmf = pmf_full(args.k, lambda(&args.coin)?)?;
    emit_pmf(&args.output, "pmf", pmf, seed)
}

/// Reported in the closed form's displacement index, so the output lines
/// up with `pmf`.
pub fn simulate(args: &PmfArgs, seed: u64) -> Outcome {
    let coin = coin(&args.coin)?;
    let state = evolve(&WalkState::origin(), &coin, args.k);
    let raw = position_pmf(&state, coin.lambda());
    let entries = raw.iter().map(|(d, p)| (to_module_displacement(d), p)).collect();
    emit_pmf(&args.output, "simulate", Pmf::from_table(args.k, coin.lambda(), entries), seed)
}

fn load_dataset(path: &Path) -> Result<TrialDataset, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc = if text.trim_start().starts_with('{') {
        DatasetDocument::from_json(&text)
    } else {
        DatasetDocument::from_csv(&text)
    };
    doc.map(|d| d.data)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dataset(args: &DataArgs, seed: u64) -> Result<TrialDataset, Failure> {
    if let Some(path) = &args.data {
        return load_dataset(path);
    }
    let need = |name: &str| Failure::Usage(format!("--{name} is required without --data"));
    let k = args.k.ok_or_else(|| need("k"))?;
    let n = args.n.ok_or_else(|| need("n"))?;
    let theta = || args.theta_true.ok_or_else(|| need("theta-true"));
    match args.method {
        Method::Positions => {
            let pmf = pmf_full(k, theta()?.cos())?;
            Ok(sample_positions(&pmf, n as usize, seed)?)
        }
        Method::Loop => Ok(TrialDataset::positions(k, vec![args.x; n as usize])?),
        Method::Bernoulli => match args.n0 {
            Some(n0) => Ok(TrialDataset::return_counts(k, n, n0)?),
            None => Ok(sample_return_trials(k, return_probability(k, theta()?.cos())?, n, seed)?),
        },
    }
}

fn options(range: &RangeArgs, tol: f64) -> EstimateOptions {
    let base = if range.full_range {
        EstimateOptions::full_range()
    } else {
        EstimateOptions {
            theta_min: range.theta_min,
            theta_max: range.theta_max,
            ..EstimateOptions::default()
        }
    };
    EstimateOptions {
        grid_size: range.grid,
        refine_tolerance: tol,
        ..base
    }
}

pub fn likelihood(args: &LikelihoodArgs, seed: u64) -> Outcome {
    let data = dataset(&args.data, seed)?;
    let opts = options(&args.range, 1e-10);
    let curve = likelihood_curve(&data, opts.theta_min, opts.theta_max, opts.grid_size)?;
    let mut table = Table::new(Some(seed), &["k", "theta", "lambda", "loglik"]);
    for &(t, l) in &curve.grid {
        table.push(vec![Cell::from(curve.k), Cell::from(t), Cell::from(t.cos()), Cell::from(l)]);
    }
    eprintln!("grid argmax theta = {}, curvature = {}", curve.argmax_theta, curve.curvature);
    emit_table(&args.output, "likelihood", &table)
}

pub fn estimate(args: &EstimateArgs, seed: u64) -> Outcome {
    let data = dataset(&args.data, seed)?;
    if let Some(path) = &args.save_data {
        write_atomic(path, DatasetDocument::new(data.clone(), Some(seed)).to_csv().as_bytes())?;
    }
    let result = mle_estimate(&data, &options(&args.range, args.tol))?.with_seed(Some(seed));
    emit(args.out.as_deref(), Format::Json, "estimate", &result.to_json()?)?;
    match result.failure() {
        Some(why) => Err(Failure::Estimation(why.to_string())),
        None => Ok(()),
    }
}

pub fn level_set(args: &LevelSetArgs, seed: u64) -> Outcome {
    let roots = level_set_solve(args.f, args.k, args.lambda_min, args.lambda_max)?;
    let mut table = Table::new(Some(seed), &["k", "f", "lambda", "theta", "p"]);
    for l in roots {
        table.push(vec![
            Cell::from(args.k),
            Cell::from(args.f),
            Cell::from(l),
            Cell::from(l.acos()),
            Cell::from(return_probability(args.k, l)?),
        ]);
    }
    if table.rows.is_empty() {
        eprintln!("no lambda in [{}, {}] reaches f = {}", args.lambda_min, args.lambda_max, args.f);
    }
    emit_table(&args.output, "level-set", &table)
}

pub fn diffusion(args: &DiffusionArgs, seed: u64) -> Outcome {
    let table = diffusion_table(args.theta, &args.ks, Some(seed))?;
    let quantum = diffusion_experiment(args.theta, &args.ks, DiffusionMode::Quantum)?;
    if let Some(slope) = loglog_slope(&quantum) {
        eprintln!("log-log slope of quantum sigma(k): {slope:.6}");
    }
    emit_table(&args.output, "diffusion", &table)
}

fn parse_allocation(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("allocation `{s}` is not of the form KxN"));
    let (k, n) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((k.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
}

pub fn databox(args: &DataBoxArgs, seed: u64) -> Outcome {
    let config = DataBoxConfig {
        theta_true: args.theta_true,
        budget: args.budget,
        allocations: args.alloc.iter().map(|s| parse_allocation(s)).collect::<Result<_, _>>()?,
        replications: args.replications,
        seed,
        options: EstimateOptions::default(),
    };
    let (_, table) = data_box_experiment(&config)?;
    emit_table(&args.output, "databox", &table)
}

pub fn figures(args: &FiguresArgs, seed: u64) -> Outcome {
    let kinds: Vec<FigureKind> = match args.which {
        Which::Fig1 => vec![FigureKind::Fig1],
        Which::Fig2a => vec![FigureKind::Fig2a],
        Which::Fig2b => vec![FigureKind::Fig2b],
        Which::All => FigureKind::ALL.to_vec(),
    };
    for kind in kinds {
        let table = kind.build(Some(seed))?;
        let text = match args.format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json()?,
        };
        let path = args.out_dir.join(format!("{}.{}", kind.name(), args.format.extension()));
        write_atomic(&path, text.as_bytes())?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

/// Closed form against simulation for every `k ≤ max_k`, every reachable
/// site and `λ = -0.95, -0.90, …, 0.95`.
pub fn validate(args: &ValidateArgs) -> Outcome {
    let sigma = detect_convention_sigma()?;
    let mut worst = (0.0f64, 0usize, 0i64, 0.0f64);
    for k in 1..=args.max_k {
        for i in -19i32..=19 {
            let l = f64::from(i) * 0.05;
            let coin = CoinParameter::from_lambda(l)?;
            let sim = position_pmf(&evolve(&WalkState::origin(), &coin, k), coin.lambda());
            for (d, p) in sim.iter() {
                let residual = (pmf_point(k, sigma * d, coin.lambda())? - p).abs();
                if residual > worst.0 || residual.is_nan() {
                    worst = (residual, k, d, l);
                }
            }
        }
    }
    println!("convention sigma: {sigma} (built in: {CONVENTION_SIGMA})");
    println!(
        "worst residual: {:e} at k={}, d={}, lambda={:.2}",
        worst.0, worst.1, worst.2, worst.3
    );
    if sigma != CONVENTION_SIGMA {
        return Err(Failure::Validation("detected convention differs from the built-in one".into()));
    }
    if !(worst.0 <= args.tol) {
        return Err(Failure::Validation(format!("residual {:e} exceeds tolerance {:e}", worst.0, args.tol)));
    }
    println!("ok");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_parsing() {
        assert_eq!(parse_allocation("20x200").unwrap(), (20, 200));
        assert_eq!(parse_allocation(" 2X5").unwrap(), (2, 5));
        assert!(parse_allocation("20*200").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(WalkError::LambdaOutOfRange(2.0)).exit_code(), 2);
        assert_eq!(Failure::from(WalkError::Estimation("x".into())).exit_code(), 3);
        assert_eq!(Failure::Validation(String::new()).exit_code(), 1);
    }
}
