//! The coin-traced channel `ρ ↦ A ρ A† + B ρ B†` evaluated through the
//! phase representation.

use num_complex::Complex;

use super::coin::CoinParameter;
use super::kernel::{default_kraus_resolution, kraus_kernels};
use crate::pmf::Pmf;
use crate::scalar::Real;
use crate::special::quadrature::periodic_mean_complex;

/// `|⟨A_k⟩|² + |⟨B_k⟩|²`, the return probability, with `⟨·⟩` the phase
/// average on `resolution` nodes (default `16 (k + 4)`).
pub fn return_probability_kraus<T: Real>(p: &CoinParameter<T>, k: usize, resolution: Option<usize>) -> T {
    let nodes = resolution.unwrap_or_else(|| default_kraus_resolution(k));
    let a = periodic_mean_complex(nodes, |phi| kraus_kernels(phi, p, k).0);
    let b = periodic_mean_complex(nodes, |phi| kraus_kernels(phi, p, k).1);
    a.norm_sqr() + b.norm_sqr()
}

/// Walker pmf after `k` steps for a pure initial walker state (coin `Up`),
/// computed by transforming to the phase basis, multiplying by the Kraus
/// kernels and transforming back. Agrees with direct simulation in
/// simulator coordinates.
pub fn channel_pmf<T: Real>(
    min_site: i64,
    walker: &[Complex<T>],
    p: &CoinParameter<T>,
    k: usize,
    resolution: Option<usize>,
) -> Pmf<T> {
    let width = walker.len() + 2 * k;
    // the transformed products are trigonometric polynomials of degree < width + k + 2
    let nodes = resolution.unwrap_or(2 * (width + k + 4));
    let step = T::TAU() / T::from_usize_lossy(nodes);
    let phases: Vec<T> = (0..nodes).map(|j| step * T::from_usize_lossy(j)).collect();

    let mut kraus_a = Vec::with_capacity(nodes);
    let mut kraus_b = Vec::with_capacity(nodes);
    for &phi in &phases {
        let psi_hat = walker
            .iter()
            .enumerate()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (i, &amp)| {
                let x = T::from_i64_lossless(min_site + i as i64);
                acc + amp * Complex::from_polar(T::one(), x * phi)
            });
        let (a, b) = kraus_kernels(phi, p, k);
        kraus_a.push(a * psi_hat);
        kraus_b.push(b * psi_hat);
    }

    let lo = min_site - k as i64;
    let hi = min_site + walker.len() as i64 - 1 + k as i64;
    let inv = T::one() / T::from_usize_lossy(nodes);
    let table = (lo..=hi)
        .map(|x| {
            let xf = T::from_i64_lossless(x);
            let mut ca = Complex::new(T::zero(), T::zero());
            let mut cb = Complex::new(T::zero(), T::zero());
            for (j, &phi) in phases.iter().enumerate() {
                let e = Complex::from_polar(T::one(), -xf * phi);
                ca = ca + kraus_a[j] * e;
                cb = cb + kraus_b[j] * e;
            }
            (x, (ca * inv).norm_sqr() + (cb * inv).norm_sqr())
        })
        .collect();
    Pmf::from_table(k, p.lambda(), table)
}
