use super::optimize::{golden_section_max, linspace};
use crate::error::{Result, WalkError};
use crate::pmf::return_probability;

const ROOT_RESIDUAL: f64 = 1e-10;

fn check(k: usize, lo: f64, hi: f64) -> Result<()> {
    if k % 2 != 0 {
        return Err(WalkError::ParityInvalid { k, d: 0 });
    }
    if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || !(lo < hi) {
        return Err(WalkError::InvalidArgument(format!(
            "branch [{lo}, {hi}] must be a non-empty sub-interval of [-1, 1]"
        )));
    }
    Ok(())
}

fn p0(k: usize, lambda: f64) -> f64 {
    return_probability(k, lambda).expect("lambda checked against [-1, 1]")
}

/// Splits `[lo, hi]` at the local extrema of `λ ↦ p^(k)(0; λ)` so that the
/// return probability is monotone on every piece.
///
/// Extrema are located on a grid of `max(257, 16k + 1)` points and then
/// polished by golden-section search.
pub fn monotone_segments(k: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
    check(k, lo, hi)?;
    let xs = linspace(lo, hi, (16 * k + 1).max(257));
    let ys: Vec<f64> = xs.iter().map(|&x| p0(k, x)).collect();
    let mut cuts = vec![lo];
    for i in 1..xs.len() - 1 {
        let (dl, dr) = (ys[i] - ys[i - 1], ys[i + 1] - ys[i]);
        let is_max = dl > 0.0 && dr <= 0.0;
        let is_min = dl < 0.0 && dr >= 0.0;
        if is_max || is_min {
            let sign = if is_max { 1.0 } else { -1.0 };
            let (x, _) = golden_section_max(|x| sign * p0(k, x), xs[i - 1], xs[i + 1], 1e-13);
            cuts.push(x);
        }
    }
    cuts.push(hi);
    Ok(cuts.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| b > a).collect())
}

/// Largest return probability on `[lo, hi]` and where it is attained.
pub fn return_probability_max(k: usize, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let segments = monotone_segments(k, lo, hi)?;
    Ok(segments
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .map(|x| (x, p0(k, x)))
        .fold((lo, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best }))
}

fn bisect(k: usize, f: f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = p0(k, a) - f;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = p0(k, m) - f;
        if gm == 0.0 {
            return m;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    let (ra, rb) = ((p0(k, a) - f).abs(), (p0(k, b) - f).abs());
    if ra <= rb {
        a
    } else {
        b
    }
}

/// All `λ` in `[lo, hi]` with `p^(k)(0; λ) = f`, one bisection per
/// monotone piece. Every returned value has residual at most `1e-10`;
/// the list is empty when `f` is not attained.
pub fn level_set_solve(f: f64, k: usize, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&f) {
        return Err(WalkError::InvalidArgument(format!("return frequency {f} is outside [0, 1]")));
    }
    let mut roots: Vec<f64> = Vec::new();
    for (a, b) in monotone_segments(k, lo, hi)? {
        let (ga, gb) = (p0(k, a) - f, p0(k, b) - f);
        let root = if ga.abs() <= ROOT_RESIDUAL * 1e-2 {
            Some(a)
        } else if gb.abs() <= ROOT_RESIDUAL * 1e-2 {
            Some(b)
        } else if (ga > 0.0) != (gb > 0.0) {
            Some(bisect(k, f, a, b))
        } else {
            None
        };
        if let Some(x) = root.filter(|&x| (p0(k, x) - f).abs() <= ROOT_RESIDUAL) {
            if roots.last().map_or(true, |&prev| (x - prev).abs() > 1e-9) {
                roots.push(x);
            }
        }
    }
    Ok(roots)
}
