//! Special functions: Chebyshev polynomials of the second kind, the
//! Fourier-coefficient family `Y_d^(k)`, terminating `2F1` series and the
//! periodic trapezoid rule used to cross-check them.

mod binomial;
mod chebyshev;
mod hypergeometric;
pub mod identities;
pub mod quadrature;
pub(crate) mod ypoly;

pub use binomial::binomial;
pub use chebyshev::{chebyshev_u, chebyshev_u_ext, chebyshev_u_pair};
pub use hypergeometric::{hyp2f1_terminating, pochhammer, y_hypergeometric, HYPERGEOMETRIC_LAMBDA_FLOOR};
pub use identities::{chebyshev_identity_suite, IdentityReport, IdentityResidual};
pub use ypoly::{
    default_y_resolution, y_poly, y_poly_quadrature, y_series, YIndex, YTable,
};
