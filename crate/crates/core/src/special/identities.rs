//! Integral and derivative identities satisfied by `U_m(λ cos φ)`, packaged
//! as a residual report so they can be checked at run time as well as in
//! tests.

use serde::{Deserialize, Serialize};

use super::chebyshev::{chebyshev_u, chebyshev_u_ext};
use super::quadrature::periodic_mean;
use super::ypoly::y_series;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub name: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub r: usize,
    pub lambda: f64,
    pub resolution: usize,
    pub residuals: Vec<IdentityResidual>,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn all_below(&self, tol: f64) -> bool {
        self.residuals.iter().all(|r| r.residual < tol)
    }
}

/// Central difference refined by one Richardson step: `(4 D(h/2) - D(h)) / 3`.
pub(crate) fn richardson_derivative<T: Real, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    let two = T::from_f64_lossy(2.0);
    let central = |h: T| (f(x + h) - f(x - h)) / (two * h);
    let coarse = central(h);
    let fine = central(h / two);
    (T::from_f64_lossy(4.0) * fine - coarse) / T::from_f64_lossy(3.0)
}

/// `-tan θ Σ_{m ≡ n (mod 2), 1 ≤ m ≤ n} m [U_{m-2}(ξ) + U_m(ξ)]`, the closed
/// form of `∂/∂θ U_n(cos θ cos φ)`.
fn theta_derivative_closed<T: Real>(n: usize, theta: T, phi: T) -> T {
    let xi = theta.cos() * phi.cos();
    let start = if n % 2 == 0 { 2 } else { 1 };
    let mut sum = T::zero();
    let mut m = start;
    while m <= n {
        let weight = T::from_usize_lossy(m);
        sum = sum + weight * (chebyshev_u_ext(m as i64 - 2, &xi) + chebyshev_u(m, &xi));
        m += 2;
    }
    -theta.tan() * sum
}

/// `(m-1)!! / m!!` as a float, for even `m ≥ 0`.
fn double_factorial_ratio<T: Real>(m: usize) -> T {
    let mut acc = T::one();
    let mut j = m;
    while j >= 2 {
        acc = acc * T::from_usize_lossy(j - 1) / T::from_usize_lossy(j);
        j -= 2;
    }
    acc
}

/// Residuals of the `U_m(λ cos φ)` identities at order `r` and parameter
/// `λ`, using `resolution` trapezoid nodes (at least `8 (2r + 6)` are used):
///
/// 1. `⟨U_{2r+1}⟩ = 0`
/// 2. `⟨U_{2r}⟩ = Y_0^(2r)`
/// 3. `2 ⟨cos φ U_{2r}⟩ = 0`
/// 4. `2 λ ⟨cos φ U_{2r+1}⟩ = Y_0^(2r) + Y_0^(2r+2)`
/// 5. `∂θ U_{2r+1}(ξ)` and `∂θ U_{2r}(ξ)` against Richardson-refined central
///    differences (step `1e-4`), worst case over the nodes
/// 6. `Y_0^(2r) = Σ_l (-1)^l C(2r-l, l) (2λ)^(2r-2l) (2r-2l-1)!!/(2r-2l)!!`
///
/// `⟨·⟩` is the mean over `φ ∈ [0, 2π)`.
pub fn chebyshev_identity_suite<T: Real>(r: usize, lambda: T, resolution: usize) -> IdentityReport {
    let nodes = resolution.max(8 * (2 * r + 6));
    let even = 2 * r;
    let odd = 2 * r + 1;
    let two = T::from_f64_lossy(2.0);
    let u_at = |order: usize| move |phi: T| chebyshev_u(order, &(lambda * phi.cos()));

    let y_even = y_series(0, even as i64, &lambda);
    let y_even_next = y_series(0, even as i64 + 2, &lambda);

    let mut residuals = Vec::new();
    let mut push = |name: &str, value: T| {
        residuals.push(IdentityResidual {
            name: name.to_string(),
            residual: value.abs().to_f64().unwrap_or(f64::NAN),
        });
    };

    push("mean_odd_vanishes", periodic_mean(nodes, u_at(odd)));
    push("mean_even_is_y0", periodic_mean(nodes, u_at(even)) - y_even);
    push(
        "cos_weighted_even_vanishes",
        two * periodic_mean(nodes, |phi: T| phi.cos() * u_at(even)(phi)),
    );
    push(
        "cos_weighted_odd_is_y0_sum",
        two * lambda * periodic_mean(nodes, |phi: T| phi.cos() * u_at(odd)(phi)) - (y_even + y_even_next),
    );

    let theta = lambda.max(-T::one()).min(T::one()).acos();
    let h = T::from_f64_lossy(1e-4);
    let probes = 32usize;
    for (name, order) in [("theta_derivative_odd", odd), ("theta_derivative_even", even)] {
        let mut worst = T::zero();
        for j in 0..probes {
            let phi = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(probes);
            let numeric = richardson_derivative(|t: T| chebyshev_u(order, &(t.cos() * phi.cos())), theta, h);
            let closed = theta_derivative_closed(order, theta, phi);
            worst = worst.max((numeric - closed).abs());
        }
        push(name, worst);
    }

    let mut series = T::zero();
    for l in 0..=r {
        let sign = if l % 2 == 0 { T::one() } else { -T::one() };
        let binom = T::from_bigint(&super::binomial::binomial((even - l) as i64, l as i64));
        let power = (two * lambda).powi((even - 2 * l) as i32);
        series = series + sign * binom * power * double_factorial_ratio::<T>(even - 2 * l);
    }
    push("y0_double_factorial_series", series - y_even);

    IdentityReport {
        r,
        lambda: lambda.to_f64().unwrap_or(f64::NAN),
        resolution: nodes,
        residuals,
    }
}
