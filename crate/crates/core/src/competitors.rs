//! Lifetime families used for model comparison.
//!
//! Parameter vectors are ordered as listed below; every entry is positive.
//!
//! | tag   | params        | CDF                                              |
//! |-------|---------------|--------------------------------------------------|
//! | EIPLD | (α, β, θ)     | `[(1 + β/((1+β)x^α))·e^{−β/x^α}]^θ`              |
//! | EPLD  | (α, β, θ)     | `[1 − (1 + βx^α/(1+β))·e^{−βx^α}]^θ`             |
//! | PLD   | (α, β)        | `1 − (1 + βx^α/(1+β))·e^{−βx^α}`                 |
//! | GLD   | (α, β)        | `[1 − (1 + βx/(1+β))·e^{−βx}]^α`                 |
//! | LD    | (β)           | `1 − (1 + βx/(1+β))·e^{−βx}`                     |
//! | EE    | (α, β)        | `(1 − e^{−βx})^α`                                |
//! | WD    | (α, β)        | `1 − e^{−βx^α}`                                  |
//! | ILD   | (β)           | `(1 + β/((1+β)x))·e^{−β/x}`                      |
//! | IPLD  | (α, β)        | `(1 + β/((1+β)x^α))·e^{−β/x^α}`                  |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{softplus, Params};
use crate::error::{Error, Result};

/// A candidate lifetime family. Declaration order is the tie-break order in
/// comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Eipld,
    Epld,
    Pld,
    Gld,
    Ld,
    Ee,
    Wd,
    Ild,
    Ipld,
}

impl Family {
    /// The families of the standard repair-times comparison.
    pub const COMPARISON: [Family; 7] = [
        Family::Eipld,
        Family::Epld,
        Family::Pld,
        Family::Gld,
        Family::Ld,
        Family::Ee,
        Family::Wd,
    ];

    pub const ALL: [Family; 9] = [
        Family::Eipld,
        Family::Epld,
        Family::Pld,
        Family::Gld,
        Family::Ld,
        Family::Ee,
        Family::Wd,
        Family::Ild,
        Family::Ipld,
    ];

    /// Number of free parameters.
    pub fn n_params(self) -> usize {
        self.param_names().len()
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Eipld | Family::Epld => &["alpha", "beta", "theta"],
            Family::Pld | Family::Gld | Family::Ee | Family::Wd | Family::Ipld => &["alpha", "beta"],
            Family::Ld | Family::Ild => &["beta"],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::Eipld => "EIPLD",
            Family::Epld => "EPLD",
            Family::Pld => "PLD",
            Family::Gld => "GLD",
            Family::Ld => "LD",
            Family::Ee => "EE",
            Family::Wd => "WD",
            Family::Ild => "ILD",
            Family::Ipld => "IPLD",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Eipld => "exponentiated inverse power Lindley",
            Family::Epld => "exponentiated power Lindley",
            Family::Pld => "power Lindley",
            Family::Gld => "generalized Lindley",
            Family::Ld => "Lindley",
            Family::Ee => "exponentiated exponential",
            Family::Wd => "Weibull",
            Family::Ild => "inverse Lindley",
            Family::Ipld => "inverse power Lindley",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == up)
            .ok_or_else(|| Error::domain("family", format!("unknown family '{s}'")))
    }
}

/// Positive parameter vector for some [`Family`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct GenericParams {
    values: Vec<f64>,
}

impl GenericParams {
    pub fn new(family: Family, values: Vec<f64>) -> Result<Self> {
        if values.len() != family.n_params() {
            return Err(Error::InvalidParams(format!(
                "{family} takes {} parameters, got {}",
                family.n_params(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidParams(format!(
                "{family} parameter {v} must be finite and > 0"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl From<Params> for GenericParams {
    fn from(p: Params) -> Self {
        Self {
            values: p.to_array().to_vec(),
        }
    }
}

fn check(family: Family, params: &GenericParams, z: f64) -> Result<()> {
    if params.values.len() != family.n_params() {
        return Err(Error::InvalidParams(format!(
            "{family} takes {} parameters, got {}",
            family.n_params(),
            params.values.len()
        )));
    }
    if z > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("family density", format!("z = {z} must be > 0")))
    }
}

/// `ln(1 − e^{x})` for `x ≤ 0`.
fn log1mexp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln F` of the Lindley CDF evaluated at `u` (u = x, or x^α for power Lindley).
fn lindley_log_cdf(beta: f64, u: f64) -> f64 {
    log1mexp((beta * u / (1.0 + beta)).ln_1p() - beta * u)
}

/// Log-density of `family` at `z`, for `z > 0` and validated parameters.
pub(crate) fn log_pdf_unchecked(family: Family, v: &[f64], z: f64, ln_z: f64) -> f64 {
    let out = match family {
        Family::Eipld => Params::new(v[0], v[1], v[2])
            .map(|p| p.log_pdf_ln(ln_z))
            .unwrap_or(f64::NAN),
        Family::Epld => {
            let (a, b, t) = (v[0], v[1], v[2]);
            let u = (a * ln_z).exp();
            t.ln() + pld_log_pdf(a, b, u, ln_z) + (t - 1.0) * lindley_log_cdf(b, u)
        }
        Family::Pld => {
            let (a, b) = (v[0], v[1]);
            pld_log_pdf(a, b, (a * ln_z).exp(), ln_z)
        }
        Family::Gld => {
            let (a, b) = (v[0], v[1]);
            a.ln() + ld_log_pdf(b, z) + (a - 1.0) * lindley_log_cdf(b, z)
        }
        Family::Ld => ld_log_pdf(v[0], z),
        Family::Ee => {
            let (a, b) = (v[0], v[1]);
            a.ln() + b.ln() - b * z + (a - 1.0) * log1mexp(-b * z)
        }
        Family::Wd => {
            let (a, b) = (v[0], v[1]);
            a.ln() + b.ln() + (a - 1.0) * ln_z - b * (a * ln_z).exp()
        }
        Family::Ild => {
            let b = v[0];
            2.0 * b.ln() - b.ln_1p() + z.ln_1p() - 3.0 * ln_z - b / z
        }
        Family::Ipld => {
            let (a, b) = (v[0], v[1]);
            a.ln() + 2.0 * b.ln() - b.ln_1p() + softplus(a * ln_z)
                - (2.0 * a + 1.0) * ln_z
                - b * (-a * ln_z).exp()
        }
    };
    if out.is_nan() {
        f64::NEG_INFINITY
    } else {
        out
    }
}

fn ld_log_pdf(b: f64, z: f64) -> f64 {
    2.0 * b.ln() - b.ln_1p() + z.ln_1p() - b * z
}

fn pld_log_pdf(a: f64, b: f64, u: f64, ln_z: f64) -> f64 {
    a.ln() + 2.0 * b.ln() - b.ln_1p() + u.ln_1p() + (a - 1.0) * ln_z - b * u
}

pub(crate) fn log_cdf_unchecked(family: Family, v: &[f64], z: f64, ln_z: f64) -> f64 {
    match family {
        Family::Eipld => Params::new(v[0], v[1], v[2])
            .map(|p| p.log_cdf_ln(ln_z))
            .unwrap_or(f64::NAN),
        Family::Epld => v[2] * lindley_log_cdf(v[1], (v[0] * ln_z).exp()),
        Family::Pld => lindley_log_cdf(v[1], (v[0] * ln_z).exp()),
        Family::Gld => v[0] * lindley_log_cdf(v[1], z),
        Family::Ld => lindley_log_cdf(v[0], z),
        Family::Ee => v[0] * log1mexp(-v[1] * z),
        Family::Wd => log1mexp(-v[1] * (v[0] * ln_z).exp()),
        Family::Ild => {
            let b = v[0];
            (b / ((1.0 + b) * z)).ln_1p() - b / z
        }
        Family::Ipld => {
            let (a, b) = (v[0], v[1]);
            let y = (-a * ln_z).exp();
            (b / (1.0 + b) * y).ln_1p() - b * y
        }
    }
}

/// Log-density of `family` with `params` at `z > 0`.
pub fn family_log_pdf(family: Family, params: &GenericParams, z: f64) -> Result<f64> {
    check(family, params, z)?;
    Ok(log_pdf_unchecked(family, &params.values, z, z.ln()))
}

pub fn family_pdf(family: Family, params: &GenericParams, z: f64) -> Result<f64> {
    family_log_pdf(family, params, z).map(f64::exp)
}

/// CDF of `family` with `params` at `z > 0`.
pub fn family_cdf(family: Family, params: &GenericParams, z: f64) -> Result<f64> {
    check(family, params, z)?;
    Ok(log_cdf_unchecked(family, &params.values, z, z.ln()).exp())
}
