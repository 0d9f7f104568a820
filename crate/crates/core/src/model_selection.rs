//! Information criteria, the Kolmogorov–Smirnov distance, and side-by-side
//! comparison of fitted families.

use rayon::prelude::*;
use serde::Serialize;

use crate::competitors::{log_cdf_unchecked, Family, GenericParams};
use crate::error::{Error, Result};
use crate::estimation::{fit_mle, Dataset, FitConfig, FitResult};

/// `2·(−ln L) + 2q`.
pub fn aic(neg_log_lik: f64, q: usize) -> f64 {
    2.0 * neg_log_lik + 2.0 * q as f64
}

/// `2·(−ln L) + q·ln n`.
pub fn bic(neg_log_lik: f64, q: usize, n: usize) -> f64 {
    2.0 * neg_log_lik + q as f64 * (n as f64).ln()
}

/// One-sample KS distance between the empirical CDF of `data` and the
/// family CDF: `max_i max(i/n − F(z₍ᵢ₎), F(z₍ᵢ₎) − (i−1)/n)`.
pub fn ks_statistic(family: Family, params: &GenericParams, data: &Dataset) -> Result<f64> {
    if params.values().len() != family.n_params() {
        return Err(Error::InvalidParams(format!(
            "{family} takes {} parameters",
            family.n_params()
        )));
    }
    let n = data.n() as f64;
    let mut d = 0.0_f64;
    for (i, &z) in data.values().iter().enumerate() {
        let f = log_cdf_unchecked(family, params.values(), z, z.ln()).exp();
        let i = i as f64;
        d = d.max((i + 1.0) / n - f).max(f - i / n);
    }
    Ok(d.clamp(0.0, 1.0))
}

/// A row of the comparison table. `fit` and the numeric columns are absent
/// when the fit failed, in which case `error` says why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelScore {
    pub family: Family,
    pub q: usize,
    pub neg_log_lik: f64,
    pub aic: f64,
    pub bic: f64,
    pub ks: f64,
    pub params: Vec<f64>,
    pub converged: bool,
    pub at_bound: bool,
    #[serde(skip)]
    pub fit: Option<FitResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ModelScore {
    fn from_fit(fit: FitResult, data: &Dataset) -> Result<Self> {
        let q = fit.family.n_params();
        let nll = fit.neg_log_lik();
        Ok(Self {
            family: fit.family,
            q,
            neg_log_lik: nll,
            aic: aic(nll, q),
            bic: bic(nll, q, data.n()),
            ks: ks_statistic(fit.family, &fit.estimates, data)?,
            params: fit.estimates.values().to_vec(),
            converged: fit.converged,
            at_bound: fit.at_bound,
            fit: Some(fit),
            error: None,
        })
    }

    fn failed(family: Family, err: &Error) -> Self {
        Self {
            family,
            q: family.n_params(),
            neg_log_lik: f64::NAN,
            aic: f64::NAN,
            bic: f64::NAN,
            ks: f64::NAN,
            params: Vec::new(),
            converged: false,
            at_bound: false,
            fit: None,
            error: Some(err.to_string()),
        }
    }

    pub fn failed_fit(&self) -> bool {
        self.error.is_some()
    }
}

/// Fits every family and returns rows sorted by AIC (ties and failed fits
/// ordered by family tag order, failures last).
pub fn compare(data: &Dataset, families: &[Family], config: &FitConfig) -> Result<Vec<ModelScore>> {
    if families.is_empty() {
        return Err(Error::domain("compare", "family list is empty"));
    }
    config.validate()?;
    let mut rows: Vec<ModelScore> = families
        .par_iter()
        .map(|&f| {
            fit_mle(f, data, config)
                .and_then(|fit| ModelScore::from_fit(fit, data))
                .unwrap_or_else(|e| ModelScore::failed(f, &e))
        })
        .collect();
    rows.sort_by(|a, b| {
        let key = |r: &ModelScore| if r.aic.is_nan() { f64::INFINITY } else { r.aic };
        key(a).total_cmp(&key(b)).then(a.family.cmp(&b.family))
    });
    Ok(rows)
}

/// Tab-separated table with full-precision numbers.
pub fn to_tsv(rows: &[ModelScore]) -> String {
    let mut out = String::from("family\tq\tneg_log_lik\taic\tbic\tks\tparams\tconverged\tat_bound\n");
    for r in rows {
        let params: Vec<String> = r.params.iter().map(|v| format!("{v:e}")).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.family,
            r.q,
            r.neg_log_lik,
            r.aic,
            r.bic,
            r.ks,
            params.join(","),
            r.converged,
            r.at_bound
        ));
    }
    out
}

/// JSON array of `{family, q, neg_log_lik, aic, bic, ks, params, converged, at_bound}`.
/// Failed rows carry `error` and `null` numbers.
pub fn to_json(rows: &[ModelScore]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::numeric("to_json", e.to_string()))
}
