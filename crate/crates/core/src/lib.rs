#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod competitors;
pub mod data;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod model_selection;
pub mod simulation;
pub mod special;

pub use competitors::{Family, GenericParams};
pub use distribution::{lr_order_check, Params, Probability};
pub use error::{Error, Result};
pub use estimation::{fit_mle, Dataset, FitConfig, FitResult};
