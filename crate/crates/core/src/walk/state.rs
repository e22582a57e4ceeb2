use num_complex::Complex;
use num_traits::Zero;

use super::coin::{coin_matrix, CoinParameter};
use crate::error::{Result, WalkError};
use crate::pmf::Pmf;
use crate::scalar::Real;

/// Coin basis state. `Up` (index 0) shifts `+1`, `Down` (index 1) shifts `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coin {
    Up,
    Down,
}

impl Coin {
    fn index(self) -> usize {
        match self {
            Coin::Up => 0,
            Coin::Down => 1,
        }
    }
}

/// Pure walker state: one complex amplitude per (coin, site), stored densely
/// over the sites `min_site ..= min_site + len - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    steps: usize,
    min_site: i64,
    amplitudes: Vec<[Complex<T>; 2]>,
}

impl<T: Real> WalkState<T> {
    /// Unit amplitude on `(coin, site)`, zero steps taken.
    pub fn localized(site: i64, coin: Coin) -> Self {
        let mut cell = [Complex::zero(); 2];
        cell[coin.index()] = Complex::new(T::one(), T::zero());
        Self {
            steps: 0,
            min_site: site,
            amplitudes: vec![cell],
        }
    }

    /// The walker at the origin with coin `Up`, the reference initial state.
    pub fn origin() -> Self {
        Self::localized(0, Coin::Up)
    }

    /// Coin-`Up` state with the given site amplitudes starting at `min_site`.
    /// The amplitudes must be normalized to within `1e-12`.
    pub fn from_walker_amplitudes(min_site: i64, walker: &[Complex<T>]) -> Result<Self> {
        if walker.is_empty() {
            return Err(WalkError::EmptyData);
        }
        let amplitudes: Vec<[Complex<T>; 2]> = walker.iter().map(|&a| [a, Complex::zero()]).collect();
        let state = Self {
            steps: 0,
            min_site,
            amplitudes,
        };
        let norm = state.norm_sqr().to_f64().unwrap_or(f64::NAN);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(WalkError::InvalidArgument(format!(
                "initial state has squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn min_site(&self) -> i64 {
        self.min_site
    }

    pub fn max_site(&self) -> i64 {
        self.min_site + self.amplitudes.len() as i64 - 1
    }

    pub fn amplitude(&self, coin: Coin, site: i64) -> Complex<T> {
        let offset = site - self.min_site;
        if offset < 0 {
            return Complex::zero();
        }
        self.amplitudes
            .get(offset as usize)
            .map(|cell| cell[coin.index()])
            .unwrap_or_else(Complex::zero)
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|c| c[0].norm_sqr() + c[1].norm_sqr()).sum()
    }
}

/// One step: the coin acts on every site, then `Up` moves right and `Down`
/// moves left.
pub fn step<T: Real>(state: &WalkState<T>, p: &CoinParameter<T>) -> WalkState<T> {
    let [[c00, c01], [c10, c11]] = coin_matrix(p);
    let len = state.amplitudes.len();
    let mut next = vec![[Complex::zero(); 2]; len + 2];
    for (i, cell) in state.amplitudes.iter().enumerate() {
        let up = cell[0] * c00 + cell[1] * c01;
        let down = cell[0] * c10 + cell[1] * c11;
        // old offset i sits at new offset i + 1
        next[i + 2][0] = next[i + 2][0] + up;
        next[i][1] = next[i][1] + down;
    }
    WalkState {
        steps: state.steps + 1,
        min_site: state.min_site - 1,
        amplitudes: next,
    }
}

/// `k` applications of [`step`].
pub fn evolve<T: Real>(initial: &WalkState<T>, p: &CoinParameter<T>, k: usize) -> WalkState<T> {
    let mut state = initial.clone();
    for _ in 0..k {
        state = step(&state, p);
    }
    state
}

/// Site occupation probabilities after tracing out the coin, in simulator
/// coordinates.
pub fn position_pmf<T: Real>(state: &WalkState<T>, lambda: T) -> Pmf<T> {
    let table = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, cell)| (state.min_site + i as i64, cell[0].norm_sqr() + cell[1].norm_sqr()))
        .collect();
    Pmf::from_table(state.steps, lambda, table)
}

/// Probability of finding the walker at `b` after `k` steps from `a`
/// (coin `Up`), by direct simulation in simulator coordinates.
pub fn transition_probability_literal<T: Real>(a: i64, b: i64, k: usize, p: &CoinParameter<T>) -> T {
    let state = evolve(&WalkState::localized(a, Coin::Up), p, k);
    let amp_up = state.amplitude(Coin::Up, b);
    let amp_down = state.amplitude(Coin::Down, b);
    amp_up.norm_sqr() + amp_down.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, b: Complex<f64>) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn single_step_by_hand() {
        let theta = 0.7f64;
        let p = CoinParameter::new(theta);
        let s = step(&WalkState::origin(), &p);
        assert!(close(s.amplitude(Coin::Up, 1), Complex::new(theta.cos(), 0.0)));
        assert!(close(s.amplitude(Coin::Down, -1), Complex::new(-theta.sin(), 0.0)));
        assert_eq!(s.amplitude(Coin::Up, -1), Complex::zero());
        assert_eq!(s.steps(), 1);
    }

    #[test]
    fn two_steps_by_hand() {
        let theta = 0.4f64;
        let (c, sn) = (theta.cos(), theta.sin());
        let s = evolve(&WalkState::origin(), &CoinParameter::new(theta), 2);
        assert!(close(s.amplitude(Coin::Up, 2), Complex::new(c * c, 0.0)));
        assert!(close(s.amplitude(Coin::Down, 0), Complex::new(-c * sn, 0.0)));
        assert!(close(s.amplitude(Coin::Up, 0), Complex::new(-sn * sn, 0.0)));
        assert!(close(s.amplitude(Coin::Down, -2), Complex::new(-sn * c, 0.0)));
    }

    #[test]
    fn identity_coin_moves_right() {
        let s = evolve(&WalkState::origin(), &CoinParameter::new(0.0f64), 9);
        assert!(close(s.amplitude(Coin::Up, 9), Complex::new(1.0, 0.0)));
        let pmf = position_pmf(&s, 1.0);
        assert_eq!(pmf.get(9), 1.0);
    }

    #[test]
    fn zero_steps_is_identity() {
        let s0 = WalkState::<f64>::origin();
        assert_eq!(evolve(&s0, &CoinParameter::new(1.0), 0), s0);
    }

    #[test]
    fn norm_is_preserved() {
        let p = CoinParameter::new(0.3f64);
        let mut s = WalkState::origin();
        for _ in 0..50 {
            let before = s.norm_sqr();
            s = step(&s, &p);
            assert!((s.norm_sqr() - before).abs() < 1e-14);
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k2_position_probabilities() {
        let theta = 1.1f64;
        let (c, sn) = (theta.cos(), theta.sin());
        let s = evolve(&WalkState::origin(), &CoinParameter::new(theta), 2);
        let pmf = position_pmf(&s, c);
        assert!((pmf.get(2) - c.powi(4)).abs() < 1e-15);
        assert!((pmf.get(0) - sn * sn).abs() < 1e-15);
        assert!((pmf.get(-2) - sn * sn * c * c).abs() < 1e-15);
        assert_eq!(pmf.get(1), 0.0);
    }

    #[test]
    fn quarter_turn_coin_returns_on_even_steps() {
        let p = CoinParameter::new(std::f64::consts::FRAC_PI_2);
        for k in (2..40).step_by(2) {
            let pmf = position_pmf(&evolve(&WalkState::origin(), &p, k), p.lambda());
            assert!((pmf.get(0) - 1.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn parity_of_support() {
        let p = CoinParameter::new(0.9f64);
        let s = evolve(&WalkState::origin(), &p, 11);
        assert_eq!((s.min_site(), s.max_site()), (-11, 11));
        for x in -11..=11i64 {
            if (x - 11) % 2 != 0 {
                assert_eq!(s.amplitude(Coin::Up, x), Complex::zero());
                assert_eq!(s.amplitude(Coin::Down, x), Complex::zero());
            }
        }
    }

    #[test]
    fn rejects_unnormalized_initial_state() {
        let amps = [Complex::new(1.0f64, 0.0), Complex::new(1.0, 0.0)];
        assert!(WalkState::from_walker_amplitudes(0, &amps).is_err());
        assert!(WalkState::<f64>::from_walker_amplitudes(0, &[]).is_err());
    }

    #[test]
    fn translation_invariance() {
        let p = CoinParameter::new(0.77f64);
        let k = 13;
        let base = position_pmf(&evolve(&WalkState::origin(), &p, k), p.lambda());
        for site in [-7i64, 3, 40] {
            let moved = position_pmf(&evolve(&WalkState::localized(site, Coin::Up), &p, k), p.lambda());
            for d in -(k as i64)..=k as i64 {
                assert_eq!(moved.get(site + d), base.get(d));
            }
        }
    }
}
