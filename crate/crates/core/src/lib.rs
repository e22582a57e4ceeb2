//! Simulation, closed-form distributions and parameter estimation for the
//! SO(2)-coined quantum walk on the integers.
//!
//! ```
//! use reluctant_walk::estimation::{mle_estimate, EstimateOptions};
//! use reluctant_walk::experiments::sample_positions;
//! use reluctant_walk::pmf::pmf_full;
//!
//! let data = sample_positions(&pmf_full(20, 0.3f64.cos())?, 5_000, 7)?;
//! let est = mle_estimate(&data, &EstimateOptions::default())?;
//! assert!((est.theta_hat - 0.3).abs() < 0.05);
//! # Ok::<(), reluctant_walk::WalkError>(())
//! ```

pub mod error;
pub mod estimation;
pub mod experiments;
pub mod io;
pub mod pmf;
pub mod scalar;
pub mod special;
pub mod walk;

pub use error::{Result, WalkError};

pub type CoinParameter64 = walk::CoinParameter<f64>;
pub type CoinParameter32 = walk::CoinParameter<f32>;
pub type WalkState64 = walk::WalkState<f64>;
pub type WalkState32 = walk::WalkState<f32>;
pub type KernelMatrix64 = walk::KernelMatrix<f64>;
pub type Pmf64 = pmf::Pmf<f64>;
pub type Pmf32 = pmf::Pmf<f32>;
pub type YTable64 = special::YTable<f64>;
pub type Rational = num_rational::BigRational;
