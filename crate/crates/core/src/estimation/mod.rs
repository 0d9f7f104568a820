//! Maximum-likelihood estimation.

mod config;
mod dataset;
mod fit;
mod likelihood;
mod optimize;

pub use config::FitConfig;
pub use dataset::Dataset;
pub use fit::{confidence_intervals, fit_mle, normal_multiplier, start_grid, FitResult, Interval};
pub use likelihood::{hessian_closed_form, log_likelihood, observed_information, score, InfoMatrix};
