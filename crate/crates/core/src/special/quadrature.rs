//! Periodic trapezoid rule on `[0, 2π)`.

use num_complex::Complex;

use crate::scalar::Real;

/// Mean of `f` over one period with `nodes` equispaced samples. Exact for
/// trigonometric polynomials of degree below `nodes`.
pub fn periodic_mean<T: Real, F: Fn(T) -> T>(nodes: usize, f: F) -> T {
    let nodes = nodes.max(1);
    let step = T::TAU() / T::from_usize_lossy(nodes);
    let sum: T = (0..nodes).map(|j| f(step * T::from_usize_lossy(j))).sum();
    sum / T::from_usize_lossy(nodes)
}

/// Complex-valued counterpart of [`periodic_mean`].
pub fn periodic_mean_complex<T: Real, F: Fn(T) -> Complex<T>>(nodes: usize, f: F) -> Complex<T> {
    let nodes = nodes.max(1);
    let step = T::TAU() / T::from_usize_lossy(nodes);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..nodes {
        acc = acc + f(step * T::from_usize_lossy(j));
    }
    acc / T::from_usize_lossy(nodes)
}
