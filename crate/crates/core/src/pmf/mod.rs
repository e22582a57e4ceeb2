//! Probability mass functions of the walker displacement: the [`Pmf`]
//! container, the closed forms, and the displacement sign convention that
//! relates them to the simulator.

mod analytic;
mod convention;
mod serialize;
mod table;

pub use analytic::{
    pmf_even_closed, pmf_even_closed_series, pmf_full, pmf_full_exact, pmf_point, pmf_point_cosine_form,
    pmf_point_series, pmf_point_unclamped, reluctance_profile, return_probability, CLAMP_TOLERANCE,
};
pub use convention::{detect_convention_sigma, to_module_displacement, to_simulator_displacement, CONVENTION_SIGMA};
pub use serialize::PmfDocument;
pub use table::{Pmf, PmfViolation};
