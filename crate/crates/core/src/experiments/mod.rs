//! Seeded Monte Carlo sampling, the diffusion and data-box experiments, and
//! the figure data sets.

mod databox;
mod diffusion;
mod figures;
mod rng;
mod sampling;

pub use databox::{data_box_experiment, replicate_errors, DataBoxConfig, DataBoxRow};
pub use diffusion::{diffusion_experiment, diffusion_table, loglog_slope, DiffusionMode, DiffusionPoint};
pub use figures::{
    fig1, fig2, fig2a, fig2b, peak_half_width, ridge_reluctance, FigureKind, FIG1_K, FIG2_KS, FIG_LAMBDA_POINTS,
};
pub use rng::{random_seed, trial_rng};
pub use sampling::{sample_positions, sample_positions_stream, sample_return_trials, sample_return_trials_stream};
