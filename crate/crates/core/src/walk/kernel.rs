//! The walk in the phase basis. With `ψ̂(φ) = Σ_x ψ(x) e^{ixφ}` a step acts
//! on each phase `φ` as the 2×2 matrix
//!
//! ```text
//! M(φ; θ) = [[ e^{iφ} cos θ,  e^{-iφ} sin θ],
//!            [-e^{iφ} sin θ,  e^{-iφ} cos θ]]
//! ```
//!
//! whose characteristic polynomial `z² - 2ξ z + 1` (with `ξ = cos θ cos φ`)
//! gives `M^k = M U_{k-1}(ξ) - I U_{k-2}(ξ)` by Cayley-Hamilton.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::coin::CoinParameter;
use crate::scalar::Real;
use crate::special::chebyshev_u_ext;

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMatrix<T> {
    pub entries: [[Complex<T>; 2]; 2],
}

impl<T: Real> KernelMatrix<T> {
    pub fn identity() -> Self {
        let o = Complex::one();
        let z = Complex::zero();
        Self { entries: [[o, z], [z, o]] }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[Complex::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { entries: out }
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    /// `max |(M M†)_{ij} - δ_{ij}|`.
    pub fn unitarity_defect(&self) -> T {
        self.mul(&self.adjoint()).max_abs_diff(&Self::identity())
    }
}

/// `M(φ; θ)`.
pub fn kernel_matrix<T: Real>(phi: T, p: &CoinParameter<T>) -> KernelMatrix<T> {
    let c = p.lambda();
    let s = p.sin();
    let plus = Complex::from_polar(T::one(), phi);
    let minus = plus.conj();
    KernelMatrix {
        entries: [[plus * c, minus * s], [-(plus * s), minus * c]],
    }
}

/// `M^k(φ; θ) = M U_{k-1}(ξ) - I U_{k-2}(ξ)`. `k = 0` gives the identity.
pub fn kernel_power<T: Real>(phi: T, p: &CoinParameter<T>, k: usize) -> KernelMatrix<T> {
    let xi = p.lambda() * phi.cos();
    let u1 = chebyshev_u_ext(k as i64 - 1, &xi);
    let u2 = chebyshev_u_ext(k as i64 - 2, &xi);
    let m = kernel_matrix(phi, p);
    let mut out = m;
    for i in 0..2 {
        for j in 0..2 {
            out.entries[i][j] = m.entries[i][j] * u1;
        }
        out.entries[i][i] = out.entries[i][i] - Complex::new(u2, T::zero());
    }
    out
}

/// `M^k` by repeated multiplication; reference for [`kernel_power`].
pub fn kernel_power_iterated<T: Real>(phi: T, p: &CoinParameter<T>, k: usize) -> KernelMatrix<T> {
    let m = kernel_matrix(phi, p);
    (0..k).fold(KernelMatrix::identity(), |acc, _| acc.mul(&m))
}

/// Phase-basis kernels of the two Kraus operators of the coin-traced
/// channel for the initial coin `Up`:
///
/// ```text
/// A_k(φ) = cos θ e^{iφ} U_{k-1}(ξ) - U_{k-2}(ξ)
/// B_k(φ) = sin θ e^{-iφ} U_{k-1}(ξ)
/// ```
///
/// with `|A_k|² + |B_k|² = 1` at every `φ`.
pub fn kraus_kernels<T: Real>(phi: T, p: &CoinParameter<T>, k: usize) -> (Complex<T>, Complex<T>) {
    let xi = p.lambda() * phi.cos();
    let u1 = chebyshev_u_ext(k as i64 - 1, &xi);
    let u2 = chebyshev_u_ext(k as i64 - 2, &xi);
    let plus = Complex::from_polar(T::one(), phi);
    let a = plus * (p.lambda() * u1) - Complex::new(u2, T::zero());
    let b = plus.conj() * (p.sin() * u1);
    (a, b)
}

/// Default phase resolution `16 (k + 4)`.
pub fn default_kraus_resolution(k: usize) -> usize {
    16 * (k + 4)
}
