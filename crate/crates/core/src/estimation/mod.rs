//! Maximum-likelihood estimation of the coin angle from position samples,
//! repeated returns to a fixed site, and Bernoulli return trials.

mod dataset;
mod level_set;
mod likelihood;
mod mle;
mod optimize;

pub use dataset::{DatasetDocument, TrialDataset};
pub use level_set::{level_set_solve, monotone_segments, return_probability_max};
pub use likelihood::{
    bernoulli_return_log_likelihood, displacement_likelihood, expected_log_likelihood, likelihood_curve,
    log_likelihood, loop_log_likelihood, transition_probability, LikelihoodCurve,
};
pub use mle::{
    maximize, mle_estimate, mle_expected, Candidate, EstimateOptions, EstimateResult, Maximum,
};
pub use optimize::{derivatives, golden_section_max, linspace};
