//! The exponentiated inverse power Lindley (EIPLD) distribution.
//!
//! With `y = z^{−α}` and `c = β/(1+β)` the CDF is
//!
//! ```text
//! G(z) = [(1 + c·y)·e^{−β·y}]^θ
//! g(z) = αβ²θ/(1+β) · (1 + z^α)/z^{2α+1} · e^{−θβy} · (1 + c·y)^{θ−1}
//! ```
//!
//! `θ = 1` gives the inverse power Lindley distribution and `α = θ = 1`
//! the inverse Lindley distribution. All evaluation is carried out on the
//! log scale; `e^{−θβ/z^α}` underflows long before the density is
//! negligible relative to its other factors.

mod entropy;
mod moments;
mod order;
mod quantile;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use order::lr_order_check;

/// EIPLD parameters `(α, β, θ)`, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct Params {
    alpha: f64,
    beta: f64,
    theta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
    theta: f64,
}

impl TryFrom<RawParams> for Params {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Params::new(raw.alpha, raw.beta, raw.theta)
    }
}

/// A probability strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(u: f64) -> Result<Self> {
        if u > 0.0 && u < 1.0 {
            Ok(Self(u))
        } else {
            Err(Error::domain("probability", format!("{u} is not in (0, 1)")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `ln(1 + eˣ)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn check_support(op: &'static str, z: f64) -> Result<()> {
    if z > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("z = {z} must be > 0")))
    }
}

impl Params {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("theta", theta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be finite and > 0"
                )));
            }
        }
        Ok(Self { alpha, beta, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.theta]
    }

    /// The same `(α, β)` with a different exponent `θ`.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, theta)
    }

    /// `ln(αβ²θ/(1+β))`.
    pub(crate) fn log_norm(&self) -> f64 {
        self.alpha.ln() + 2.0 * self.beta.ln() + self.theta.ln() - self.beta.ln_1p()
    }

    /// `ln c = ln(β/(1+β))`.
    pub(crate) fn log_c(&self) -> f64 {
        self.beta.ln() - self.beta.ln_1p()
    }

    /// Log-density at `z > 0`, unchecked. `ln_z` is `ln z`.
    pub(crate) fn log_pdf_ln(&self, ln_z: f64) -> f64 {
        let t = -self.alpha * ln_z; // ln y
        let y = t.exp();
        let mut v = self.log_norm() + softplus(-t) - (2.0 * self.alpha + 1.0) * ln_z
            - self.theta * self.beta * y;
        if self.theta != 1.0 {
            v += (self.theta - 1.0) * softplus(t + self.log_c());
        }
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    /// `ln G(z)`, unchecked.
    pub(crate) fn log_cdf_ln(&self, ln_z: f64) -> f64 {
        let t = -self.alpha * ln_z;
        let y = t.exp();
        if y.is_infinite() {
            return f64::NEG_INFINITY;
        }
        // ln(1 + c·y) − β·y; ln_1p inside softplus keeps the right tail accurate.
        self.theta * (softplus(t + self.log_c()) - self.beta * y)
    }

    pub fn log_pdf(&self, z: f64) -> Result<f64> {
        check_support("log_pdf", z)?;
        Ok(self.log_pdf_ln(z.ln()))
    }

    pub fn pdf(&self, z: f64) -> Result<f64> {
        check_support("pdf", z)?;
        Ok(self.log_pdf_ln(z.ln()).exp())
    }

    pub fn log_cdf(&self, z: f64) -> Result<f64> {
        check_support("log_cdf", z)?;
        Ok(self.log_cdf_ln(z.ln()))
    }

    pub fn cdf(&self, z: f64) -> Result<f64> {
        check_support("cdf", z)?;
        Ok(self.log_cdf_ln(z.ln()).exp())
    }

    pub fn survival(&self, z: f64) -> Result<f64> {
        check_support("survival", z)?;
        Ok(-self.log_cdf_ln(z.ln()).exp_m1())
    }

    /// `pdf/survival`; fails once the survival function underflows.
    pub fn hazard(&self, z: f64) -> Result<f64> {
        check_support("hazard", z)?;
        let ln_z = z.ln();
        let s = -self.log_cdf_ln(ln_z).exp_m1();
        if !(s > 0.0) {
            return Err(Error::numeric(
                "hazard",
                format!("survival underflows to zero at z = {z}"),
            ));
        }
        let h = (self.log_pdf_ln(ln_z) - s.ln()).exp();
        if h.is_finite() {
            Ok(h)
        } else {
            Err(Error::numeric("hazard", format!("overflow at z = {z}")))
        }
    }

    /// `pdf/cdf = d/dz ln G`; fails when `ln G` is `−∞`.
    pub fn reversed_hazard(&self, z: f64) -> Result<f64> {
        check_support("reversed_hazard", z)?;
        let ln_z = z.ln();
        let lg = self.log_cdf_ln(ln_z);
        if lg == f64::NEG_INFINITY {
            return Err(Error::numeric(
                "reversed_hazard",
                format!("cdf underflows to zero at z = {z}"),
            ));
        }
        let r = (self.log_pdf_ln(ln_z) - lg).exp();
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::numeric("reversed_hazard", format!("overflow at z = {z}")))
        }
    }
}
