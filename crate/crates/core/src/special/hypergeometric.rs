//! Terminating Gauss hypergeometric series.


use super::binomial::binomial;
use super::ypoly::{y_series, YIndex};
use crate::error::{Result, WalkError};
use crate::scalar::Scalar;

/// Below this `|λ|` the `2F1(…; λ^-2)` representation is not used.
pub const HYPERGEOMETRIC_LAMBDA_FLOOR: f64 = 1e-6;

/// Rising factorial `(a)_n = a (a+1) … (a+n-1)`.
pub fn pochhammer<T: Scalar>(a: &T, n: usize) -> T {
    let mut acc = T::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + T::one();
    }
    acc
}

fn nonpositive_integer<T: Scalar>(x: &T) -> Option<usize> {
    x.to_exact_i64().filter(|&v| v <= 0).map(|v| (-v) as usize)
}

/// `2F1(a, b; c; z)` summed to its terminating index `min(-a, -b)` over the
/// parameters that are non-positive integers.
///
/// Fails when neither `a` nor `b` is a non-positive integer, or when
/// `(c)_n` vanishes before the numerator does.
pub fn hyp2f1_terminating<T: Scalar>(a: &T, b: &T, c: &T, z: &T) -> Result<T> {
    let last = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => m.min(n),
        (Some(m), None) | (None, Some(m)) => m,
        (None, None) => return Err(WalkError::NonTerminating),
    };
    let mut sum = T::one();
    let mut term = T::one();
    for n in 0..last {
        let nn = T::from_usize(n).expect("index embeds");
        let denom = c.clone() + nn.clone();
        if denom.is_zero() {
            return Err(WalkError::VanishingDenominator { index: n + 1 });
        }
        let numer = (a.clone() + nn.clone()) * (b.clone() + nn.clone());
        term = term * numer / (denom * (nn + T::one())) * z.clone();
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// `Y_d^(k)(λ) = λ^k C(k, (k+|d|)/2) 2F1((|d|-k)/2, (-|d|-k)/2; -k; λ^-2)`.
///
/// Falls back to the plain series when `|λ|` is below
/// [`HYPERGEOMETRIC_LAMBDA_FLOOR`], where `λ^-2` is not usable.
pub fn y_hypergeometric<T: Scalar>(d: i64, k: i64, lambda: &T) -> Result<T> {
    let idx = YIndex::new(d, k);
    if !idx.is_supported() {
        return Ok(T::zero());
    }
    let floor = T::from_f64(HYPERGEOMETRIC_LAMBDA_FLOOR).expect("constant embeds");
    if lambda.abs() < floor {
        return Ok(y_series(d, k, lambda));
    }
    let d = d.abs();
    let a = T::half_of(d - k);
    let b = T::half_of(-d - k);
    let c = T::from_i64_lossless(-k);
    let z = T::one() / (lambda.clone() * lambda.clone());
    let f = hyp2f1_terminating(&a, &b, &c, &z)?;
    let prefactor = lambda.powu(k as u32) * T::from_bigint(&binomial(k, (k + d) / 2));
    Ok(prefactor * f)
}
