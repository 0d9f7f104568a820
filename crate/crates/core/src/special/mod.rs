//! Special functions and numeric primitives.

mod gamma;
mod lambert;
mod quadrature;

pub use gamma::{gen_binomial, log_gamma};
pub(crate) use gamma::ln_gamma_pos;
pub use lambert::{lambert_w_minus1, lambert_w_minus1_log};
pub use quadrature::{integrate_positive_halfline, HalfLine, QuadratureResult};
