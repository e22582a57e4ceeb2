//! Closed forms for `p^(k)(d; λ)`, indexed by the closed form's own
//! displacement (see [`super::CONVENTION_SIGMA`]).

use num_rational::BigRational;

use super::table::Pmf;
use crate::error::{Result, WalkError};
use crate::scalar::{exact_rational, rational_to_f64, Real, Scalar};
use crate::special::{binomial, hyp2f1_terminating, y_series, YTable, HYPERGEOMETRIC_LAMBDA_FLOOR};
use crate::special::ypoly::y_poly_exact_unchecked;

/// Rounding slack absorbed when clamping probabilities into `[0, 1]`.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(WalkError::NonFinite(lambda));
    }
    if lambda.abs() > 1.0 {
        return Err(WalkError::LambdaOutOfRange(lambda));
    }
    Ok(())
}

fn clamp<T: Real>(p: T) -> T {
    let tol = T::from_f64_lossy(CLAMP_TOLERANCE);
    if p < T::zero() && p >= -tol {
        T::zero()
    } else if p > T::one() && p <= T::one() + tol {
        T::one()
    } else {
        p
    }
}

fn off_support(k: i64, d: i64) -> bool {
    d.abs() > k || (k - d).rem_euclid(2) != 0
}

/// `(1-λ²) Y_{|d-1|}^(k-1)² + (Y_{|d|}^(k-2) - λ Y_{|d+1|}^(k-1))²` from
/// three `Y` values.
fn proof_form<T: Scalar>(lambda: &T, left: T, centre: T, right: T) -> T {
    let one = T::one();
    let l2 = lambda.clone() * lambda.clone();
    let diff = centre - lambda.clone() * right;
    (one - l2) * left.clone() * left + diff.clone() * diff
}

/// One-step distribution: `p(-1) = λ²`, `p(+1) = 1 - λ²`.
fn one_step<T: Scalar>(d: i64, lambda: &T) -> T {
    let l2 = lambda.clone() * lambda.clone();
    match d {
        -1 => l2,
        1 => T::one() - l2,
        _ => T::zero(),
    }
}

/// Closed-form probability without clamping, `Y` values exact to one
/// rounding each.
pub fn pmf_point_unclamped(k: usize, d: i64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let k = k as i64;
    if off_support(k, d) {
        return Ok(0.0);
    }
    Ok(match k {
        0 => 1.0,
        1 => one_step(d, &lambda),
        _ => proof_form(
            &lambda,
            y_poly_exact_unchecked((d - 1).abs(), k - 1, lambda),
            y_poly_exact_unchecked(d.abs(), k - 2, lambda),
            y_poly_exact_unchecked((d + 1).abs(), k - 1, lambda),
        ),
    })
}

/// `p^(k)(d; λ)`, clamped into `[0, 1]` within [`CLAMP_TOLERANCE`].
pub fn pmf_point(k: usize, d: i64, lambda: f64) -> Result<f64> {
    pmf_point_unclamped(k, d, lambda).map(clamp)
}

/// The same closed form in the arithmetic of `T`; exact over rationals.
pub fn pmf_point_series<T: Scalar>(k: usize, d: i64, lambda: &T) -> T {
    let k = k as i64;
    if off_support(k, d) {
        return T::zero();
    }
    match k {
        0 => T::one(),
        1 => one_step(d, lambda),
        _ => proof_form(
            lambda,
            y_series(d - 1, k - 1, lambda),
            y_series(d, k - 2, lambda),
            y_series(d + 1, k - 1, lambda),
        ),
    }
}

fn cosine_form<T: Scalar>(lambda: &T, y: T, z: T) -> T {
    let two = T::one() + T::one();
    y.clone() * y.clone() + z.clone() * z.clone() - two * y * z * lambda.clone()
}

/// `Y_d^(k)² + Y_{d-1}^(k-1)² - 2 λ Y_d^(k) Y_{d-1}^(k-1)`.
///
/// Valid from `k = 1` on, since `Y^(0)_d = δ_{d0}`.
pub fn pmf_point_cosine_form(k: usize, d: i64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let k = k as i64;
    if k == 0 {
        return Ok(if d == 0 { 1.0 } else { 0.0 });
    }
    if off_support(k, d) {
        return Ok(0.0);
    }
    Ok(cosine_form(
        &lambda,
        y_poly_exact_unchecked(d.abs(), k, lambda),
        y_poly_exact_unchecked((d - 1).abs(), k - 1, lambda),
    ))
}

/// Even-step closed form through two terminating `2F1(λ^-2)` series.
///
/// With `k2 = 2k`, `d2 = 2d`, `z = λ^-2` and `q = (k+d)/(2k)`:
///
/// ```text
/// p = (λ^2k C(2k, k+d))² ([F1 - q F2]² + (z - 1) q² F2²)
/// F1 = 2F1(d-k, -d-k; -2k; z)
/// F2 = 2F1(d-k, 1-d-k; 1-2k; z)
/// ```
///
/// which is the cosine form with `Y_{2d}^(2k)` and `Y_{2d-1}^(2k-1)` written
/// as hypergeometric polynomials and the square completed.
pub fn pmf_even_closed_series<T: Scalar>(k2: usize, d2: i64, lambda: &T) -> Result<T> {
    if k2 % 2 != 0 || d2 % 2 != 0 || k2 == 0 {
        return Err(WalkError::ParityInvalid { k: k2, d: d2 });
    }
    let k = (k2 / 2) as i64;
    let d = d2 / 2;
    if d.abs() > k {
        return Ok(T::zero());
    }
    let one = T::one();
    let l2 = lambda.clone() * lambda.clone();
    let z = one.clone() / l2.clone();
    let scale = l2.powu(k as u32) * T::from_bigint(&binomial(2 * k, k + d));
    let f1 = hyp2f1_terminating(
        &T::from_i64_lossless(d - k),
        &T::from_i64_lossless(-d - k),
        &T::from_i64_lossless(-2 * k),
        &z,
    )?;
    // q = 0 at d = -k, where the second series is never needed
    let (q, f2) = if k + d == 0 {
        (T::zero(), T::zero())
    } else {
        let q = T::from_i64_lossless(k + d) / T::from_i64_lossless(2 * k);
        let f2 = hyp2f1_terminating(
            &T::from_i64_lossless(d - k),
            &T::from_i64_lossless(1 - d - k),
            &T::from_i64_lossless(1 - 2 * k),
            &z,
        )?;
        (q, f2)
    };
    let qf2 = q * f2;
    let diff = f1 - qf2.clone();
    Ok(scale.clone() * scale * (diff.clone() * diff + (z - one) * qf2.clone() * qf2))
}

/// [`pmf_even_closed_series`] evaluated exactly at the rational value of
/// `λ` and rounded once. Below [`HYPERGEOMETRIC_LAMBDA_FLOOR`] it defers to
/// [`pmf_point`].
pub fn pmf_even_closed(k2: usize, d2: i64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if k2 % 2 != 0 || d2 % 2 != 0 {
        return Err(WalkError::ParityInvalid { k: k2, d: d2 });
    }
    if lambda.abs() < HYPERGEOMETRIC_LAMBDA_FLOOR {
        return pmf_point(k2, d2, lambda);
    }
    let q: BigRational = exact_rational(lambda).ok_or(WalkError::NonFinite(lambda))?;
    let p = pmf_even_closed_series(k2, d2, &q)?;
    Ok(clamp(rational_to_f64(&p)))
}

/// Whole distribution from one [`YTable`]; every parity-valid `d` in
/// `[-k, k]` gets an entry.
pub fn pmf_full<T: Real>(k: usize, lambda: T) -> Result<Pmf<T>> {
    let lf = lambda.to_f64().unwrap_or(f64::NAN);
    check_lambda(lf)?;
    let ki = k as i64;
    let entries: Vec<(i64, T)> = match k {
        0 => vec![(0, T::one())],
        1 => vec![(-1, one_step(-1, &lambda)), (1, one_step(1, &lambda))],
        _ => {
            let table = YTable::new(k - 1, lambda);
            (-ki..=ki)
                .step_by(2)
                .map(|d| {
                    let p = proof_form(
                        &lambda,
                        table.get((d - 1).abs(), ki - 1),
                        table.get(d.abs(), ki - 2),
                        table.get((d + 1).abs(), ki - 1),
                    );
                    (d, clamp(p))
                })
                .collect()
        }
    };
    Ok(Pmf::from_table(k, lambda, entries))
}

/// Whole distribution from exact `Y` values, as in [`pmf_point`]. Slower
/// than [`pmf_full`]; used as its reference.
pub fn pmf_full_exact(k: usize, lambda: f64) -> Result<Pmf<f64>> {
    check_lambda(lambda)?;
    let ki = k as i64;
    if k < 2 {
        let entries = (-ki..=ki).step_by(2).map(|d| (d, one_step_or_origin(k, d, lambda))).collect();
        return Ok(Pmf::from_table(k, lambda, entries));
    }
    // neighbouring d share Y values and Y is even in d, so one pass over
    // |d| per order covers the whole table
    let row = |order: i64| -> Vec<f64> {
        (0..=order + 1)
            .map(|d| y_poly_exact_unchecked(d, order, lambda))
            .collect()
    };
    let (upper, lower) = (row(ki - 1), row(ki - 2));
    let at = |r: &Vec<f64>, d: i64| r.get(d.unsigned_abs() as usize).copied().unwrap_or(0.0);
    let entries = (-ki..=ki)
        .step_by(2)
        .map(|d| {
            let p = proof_form(&lambda, at(&upper, d - 1), at(&lower, d), at(&upper, d + 1));
            (d, clamp(p))
        })
        .collect();
    Ok(Pmf::from_table(k, lambda, entries))
}

fn one_step_or_origin(k: usize, d: i64, lambda: f64) -> f64 {
    if k == 0 {
        if d == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        one_step(d, &lambda)
    }
}

/// `p^(k)(0; λ)`; zero for odd `k`.
pub fn return_probability(k: usize, lambda: f64) -> Result<f64> {
    pmf_point(k, 0, lambda)
}

/// `(r, p)` with reluctance `r = d / k`.
pub fn reluctance_profile(k: usize, lambda: f64) -> Result<Vec<(f64, f64)>> {
    if k == 0 {
        return Err(WalkError::InvalidArgument("reluctance needs k >= 1".into()));
    }
    let pmf = pmf_full(k, lambda)?;
    Ok(pmf.iter().map(|(d, p)| (d as f64 / k as f64, p)).collect())
}
