//! Special functions, distribution quantiles and adaptive quadrature.
//!
//! Everything here is a pure function of its arguments.

mod beta;
mod distributions;
mod gamma;
mod quadrature;

pub use beta::reg_incomplete_beta;
pub use distributions::{
    chisq_cdf, chisq_quantile, f_cdf, f_quantile, normal_cdf, normal_pdf, normal_quantile,
};
pub use gamma::ln_gamma;
pub use quadrature::{integrate_1d, integrate_1d_with_error, QuadratureEstimate, QuadratureSpec};

pub(crate) use gamma::ln_beta;
