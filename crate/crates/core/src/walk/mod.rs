//! The coined walk itself: SO(2) coin, exact state-vector evolution on the
//! integer line, and the phase-basis kernel and Kraus representation.

mod channel;
mod coin;
mod kernel;
mod state;

pub use channel::{channel_pmf, return_probability_kraus};
pub use coin::{coin_matrix, CoinParameter};
pub use kernel::{
    default_kraus_resolution, kernel_matrix, kernel_power, kernel_power_iterated, kraus_kernels,
    KernelMatrix,
};
pub use state::{evolve, position_pmf, step, transition_probability_literal, Coin, WalkState};
