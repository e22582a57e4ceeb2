//! The polynomial family
//!
//! ```text
//! Y_d^(k)(λ) = (1/2π) ∫ U_k(λ cos φ) cos(d φ) dφ
//!            = Σ_{n=0}^{(k-|d|)/2} (-1)^n C(k-n, n) C(k-2n, (k+|d|)/2 - n) λ^(k-2n)
//! ```
//!
//! evaluated three ways: the finite series over any [`Scalar`], an exact
//! integer evaluation for `f64` arguments, and the periodic trapezoid rule.
//! [`YTable`] adds a fourth, the three-term recurrence in `k`, which is the
//! fast path for whole pmf tables.

use num_bigint::BigInt;
use num_traits::{Float, Zero};

use super::binomial::binomial;
use super::chebyshev::chebyshev_u;
use super::quadrature::periodic_mean;
use crate::error::{Result, WalkError};
use crate::scalar::{bigint_ldexp, Real, Scalar};

/// Index pair `(d, k)` of a `Y` polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YIndex {
    pub d: i64,
    pub k: i64,
}

impl YIndex {
    pub fn new(d: i64, k: i64) -> Self {
        Self { d, k }
    }

    /// `Y` vanishes identically off this set.
    pub fn is_supported(&self) -> bool {
        let d = self.d.abs();
        self.k >= 0 && d <= self.k && (self.k - d) % 2 == 0
    }

    /// Number of terms in the finite series, zero when unsupported.
    pub fn term_count(&self) -> usize {
        if self.is_supported() {
            ((self.k - self.d.abs()) / 2 + 1) as usize
        } else {
            0
        }
    }
}

/// Integer coefficients `c_n` of `λ^(k-2n)`, `n = 0..=(k-|d|)/2`.
fn series_coefficients(idx: YIndex) -> Vec<BigInt> {
    let count = idx.term_count();
    if count == 0 {
        return Vec::new();
    }
    let k = idx.k;
    let a = (k - idx.d.abs()) / 2;
    let b = (k + idx.d.abs()) / 2;
    let mut coeffs = Vec::with_capacity(count);
    // c_0 = C(k, a); c_{n+1} = -c_n (a-n)(b-n) / ((n+1)(k-n))
    let mut c = binomial(k, a);
    coeffs.push(c.clone());
    for n in 0..(count as i64 - 1) {
        c = -(c * (a - n) * (b - n)) / ((n + 1) * (k - n));
        coeffs.push(c.clone());
    }
    coeffs
}

/// Finite-series evaluation of `Y_d^(k)(λ)` in the arithmetic of `T`.
///
/// Exact for rational `T`. For floats the alternating binomial sum loses
/// roughly `log10 C(k, k/2)` digits; use [`y_poly`] or [`YTable`] there.
pub fn y_series<T: Scalar>(d: i64, k: i64, lambda: &T) -> T {
    let idx = YIndex::new(d, k);
    let coeffs = series_coefficients(idx);
    if coeffs.is_empty() {
        return T::zero();
    }
    // Horner in μ = λ^-2 reversed: Σ c_n λ^(k-2n) = λ^|d| Σ c_n (λ²)^(m-n)
    let lambda_sq = lambda.clone() * lambda.clone();
    let mut acc = T::zero();
    for c in coeffs.iter() {
        acc = acc * lambda_sq.clone() + T::from_bigint(c);
    }
    acc * lambda.powu(d.unsigned_abs() as u32)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(WalkError::NonFinite(lambda));
    }
    if lambda.abs() > 1.0 {
        return Err(WalkError::LambdaOutOfRange(lambda));
    }
    Ok(())
}

/// `Y_d^(k)(λ)` for `f64` arguments, evaluated exactly over the integers and
/// rounded once.
///
/// A finite double is `m · 2^-s` with integer `m`, so
/// `Σ c_n λ^(k-2n) = 2^(-sk) Σ c_n m^(k-2n) 2^(2sn)` is an integer sum.
pub fn y_poly(d: i64, k: i64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(y_poly_exact_unchecked(d, k, lambda))
}

pub(crate) fn y_poly_exact_unchecked(d: i64, k: i64, lambda: f64) -> f64 {
    let idx = YIndex::new(d, k);
    let coeffs = series_coefficients(idx);
    if coeffs.is_empty() {
        return 0.0;
    }
    if lambda == 0.0 {
        // only the λ^0 term survives, present iff d = 0
        return if d == 0 { bigint_ldexp(coeffs.last().unwrap(), 0) } else { 0.0 };
    }
    let (mantissa, exponent, sign) = Float::integer_decode(lambda);
    let mut m = BigInt::from(mantissa);
    if sign < 0 {
        m = -m;
    }
    let (m, s) = if exponent >= 0 {
        (m << (exponent as usize), 0i64)
    } else {
        (m, -(exponent as i64))
    };
    let m_sq = &m * &m;
    let count = coeffs.len();
    // walk n downwards so the power of m grows from m^|d|
    let mut power = num_traits::pow(m.clone(), d.unsigned_abs() as usize);
    let mut sum = BigInt::zero();
    for n in (0..count).rev() {
        let shift = (2 * s * n as i64) as usize;
        sum += (&coeffs[n] * &power) << shift;
        if n > 0 {
            power *= &m_sq;
        }
    }
    bigint_ldexp(&sum, -s * k)
}

/// Default trapezoid resolution `8 (k + |d| + 4)`.
pub fn default_y_resolution(d: i64, k: i64) -> usize {
    (8 * (k.max(0) + d.abs() + 4)) as usize
}

/// `(1/2π) ∫ U_k(λ cos φ) cos(d φ) dφ` by the periodic trapezoid rule.
///
/// The integrand is a trigonometric polynomial of degree `k + |d|`, so any
/// resolution above that degree is exact up to rounding.
pub fn y_poly_quadrature<T: Real>(d: i64, k: i64, lambda: T, resolution: Option<usize>) -> Result<T> {
    if !lambda.is_finite() {
        return Err(WalkError::NonFinite(lambda.to_f64().unwrap_or(f64::NAN)));
    }
    if k < 0 {
        return Ok(T::zero());
    }
    let nodes = resolution.unwrap_or_else(|| default_y_resolution(d, k));
    let order = k as usize;
    let freq = T::from_i64_lossless(d);
    Ok(periodic_mean(nodes, |phi: T| {
        chebyshev_u(order, &(lambda * phi.cos())) * (freq * phi).cos()
    }))
}

/// All `Y_d^(j)(λ)` for `0 ≤ j ≤ k_max`, `0 ≤ d ≤ j + 1`, built from
///
/// ```text
/// Y_d^(j) = λ (Y_{|d-1|}^(j-1) + Y_{d+1}^(j-1)) - Y_d^(j-2)
/// ```
///
/// which is the Chebyshev recurrence after multiplying by `cos(dφ)` and
/// averaging. Rounding stays at the `1e-15` level for `k` in the hundreds,
/// unlike the float series.
#[derive(Debug, Clone)]
pub struct YTable<T> {
    lambda: T,
    rows: Vec<Vec<T>>,
}

impl<T: Real> YTable<T> {
    pub fn new(k_max: usize, lambda: T) -> Self {
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(k_max + 1);
        for j in 0..=k_max {
            let mut row = vec![T::zero(); j + 2];
            if j == 0 {
                row[0] = T::one();
            } else {
                let prev = &rows[j - 1];
                let at = |r: &Vec<T>, d: usize| r.get(d).copied().unwrap_or_else(T::zero);
                for d in 0..=j {
                    let left = at(prev, if d == 0 { 1 } else { d - 1 });
                    let right = at(prev, d + 1);
                    let back = if j >= 2 { at(&rows[j - 2], d) } else { T::zero() };
                    row[d] = lambda * (left + right) - back;
                }
            }
            rows.push(row);
        }
        Self { lambda, rows }
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `Y_d^(k)`; zero for `k = -1` (since `U_{-1} = 0`) and outside the
    /// support. Panics for `k > k_max`.
    pub fn get(&self, d: i64, k: i64) -> T {
        if k < 0 {
            return T::zero();
        }
        let row = &self.rows[k as usize];
        row.get(d.unsigned_abs() as usize).copied().unwrap_or_else(T::zero)
    }
}
