use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::scalar::Real;

/// The coin angle `θ ∈ [-π, π)` together with `λ = cos θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinParameter<T> {
    theta: T,
    lambda: T,
}

impl<T: Real> CoinParameter<T> {
    /// Wraps `theta` into `[-π, π)`.
    pub fn new(theta: T) -> Self {
        let tau = T::TAU();
        let pi = T::PI();
        let mut wrapped = (theta + pi) % tau;
        if wrapped < T::zero() {
            wrapped = wrapped + tau;
        }
        let wrapped = wrapped - pi;
        Self {
            theta: wrapped,
            lambda: wrapped.cos(),
        }
    }

    /// The representative `θ = arccos λ ∈ [0, π]`.
    pub fn from_lambda(lambda: T) -> Result<Self> {
        let l = lambda.to_f64().unwrap_or(f64::NAN);
        if !l.is_finite() {
            return Err(WalkError::NonFinite(l));
        }
        if l.abs() > 1.0 {
            return Err(WalkError::LambdaOutOfRange(l));
        }
        let theta = lambda.acos();
        // arccos(-1) = π sits on the excluded end of the range
        let theta = if theta >= T::PI() { -T::PI() } else { theta };
        Ok(Self { theta, lambda })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn sin(&self) -> T {
        self.theta.sin()
    }
}

/// `[[cos θ, sin θ], [-sin θ, cos θ]]`.
pub fn coin_matrix<T: Real>(p: &CoinParameter<T>) -> [[T; 2]; 2] {
    let c = p.lambda();
    let s = p.sin();
    [[c, s], [-s, c]]
}
