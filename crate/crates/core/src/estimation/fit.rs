use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::likelihood::{log_lik_raw, observed_information, score, spd_inverse, InfoMatrix};
use super::optimize::{nelder_mead, polish, projected_score_norm, rounding_band, LogObjective};
use super::{Dataset, FitConfig};
use crate::competitors::{Family, GenericParams};
use crate::distribution::Params;
use crate::error::{Error, Result};

/// Initial simplex edge in log coordinates.
const SIMPLEX_STEP: f64 = 0.5;
/// Log-coordinate step for finite-difference derivatives.
const FD_LOG_STEP: f64 = 1e-5;
const HESS_LOG_STEP: f64 = 1e-4;
const POLISH_STEPS: usize = 200;

/// Two-sided interval for one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    /// The lower end was negative and has been raised to 0.
    pub floored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub family: Family,
    pub estimates: GenericParams,
    pub log_lik: f64,
    /// Score (natural parameters) at the estimate.
    pub score_at_mle: Vec<f64>,
    pub info: InfoMatrix,
    /// Inverse of `info`; absent when `info` is not positive definite.
    pub vcov: Option<Vec<Vec<f64>>>,
    pub ci_level: f64,
    pub ci: Option<Vec<Interval>>,
    /// The simplex met its tolerances and the projected score is within
    /// `tol_score`.
    pub converged: bool,
    /// Some estimate sits on the edge of the search box.
    pub at_bound: bool,
    pub n_restarts_used: usize,
}

impl FitResult {
    pub fn neg_log_lik(&self) -> f64 {
        -self.log_lik
    }

    /// Max-norm of the score.
    pub fn score_norm(&self) -> f64 {
        self.score_at_mle.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// The estimates as EIPLD parameters, when this is an EIPLD fit.
    pub fn eipld_params(&self) -> Option<Params> {
        match (self.family, self.estimates.values()) {
            (Family::Eipld, &[a, b, t]) => Params::new(a, b, t).ok(),
            _ => None,
        }
    }
}

struct FamilyObjective<'a> {
    family: Family,
    data: &'a Dataset,
}

impl FamilyObjective<'_> {
    fn natural(x: &[f64]) -> Vec<f64> {
        x.iter().map(|v| v.exp()).collect()
    }

    fn fd_grad(&self, x: &[f64]) -> Vec<f64> {
        let mut xp = x.to_vec();
        (0..x.len())
            .map(|i| {
                xp[i] = x[i] + FD_LOG_STEP;
                let up = self.value(&xp);
                xp[i] = x[i] - FD_LOG_STEP;
                let dn = self.value(&xp);
                xp[i] = x[i];
                (up - dn) / (2.0 * FD_LOG_STEP)
            })
            .collect()
    }
}

impl LogObjective for FamilyObjective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        log_lik_raw(self.family, &Self::natural(x), self.data)
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        match self.family {
            Family::Eipld => {
                let p = Self::natural(x);
                let s = score(&Params::new(p[0], p[1], p[2]).expect("exp is positive"), self.data);
                (0..3).map(|i| s[i] * p[i]).collect()
            }
            _ => self.fd_grad(x),
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn hess(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let q = x.len();
        let mut h = vec![vec![0.0; q]; q];
        if self.family == Family::Eipld {
            let mut xp = x.to_vec();
            for j in 0..q {
                xp[j] = x[j] + FD_LOG_STEP;
                let up = self.grad(&xp);
                xp[j] = x[j] - FD_LOG_STEP;
                let dn = self.grad(&xp);
                xp[j] = x[j];
                for i in 0..q {
                    h[i][j] = (up[i] - dn[i]) / (2.0 * FD_LOG_STEP);
                }
            }
            for i in 0..q {
                for j in 0..i {
                    let m = 0.5 * (h[i][j] + h[j][i]);
                    h[i][j] = m;
                    h[j][i] = m;
                }
            }
            return h;
        }
        let e = HESS_LOG_STEP;
        let f0 = self.value(x);
        let at = |d: &[(usize, f64)]| {
            let mut xp = x.to_vec();
            for &(i, s) in d {
                xp[i] += s;
            }
            self.value(&xp)
        };
        for i in 0..q {
            h[i][i] = (at(&[(i, e)]) - 2.0 * f0 + at(&[(i, -e)])) / (e * e);
            for j in 0..i {
                let v = (at(&[(i, e), (j, e)]) - at(&[(i, e), (j, -e)]) - at(&[(i, -e), (j, e)])
                    + at(&[(i, -e), (j, -e)]))
                    / (4.0 * e * e);
                h[i][j] = v;
                h[j][i] = v;
            }
        }
        h
    }
}

/// Deterministic start grid in natural parameters (cartesian product).
///
/// Shapes and exponents use `{0.5, 1, 2}` (`θ` uses `{0.1, 1, 5}`); scales
/// are tied to the sample median `m`: `{0.5, m, 5m}` for inverse families
/// and `{0.2/m, 1/m, 5/m}` for rates.
pub fn start_grid(family: Family, data: &Dataset) -> Vec<Vec<f64>> {
    let m = data.median();
    let shape = [0.5, 1.0, 2.0];
    let expo = [0.1, 1.0, 5.0];
    let inv_scale = [0.5, m, 5.0 * m];
    let rate = [0.2 / m, 1.0 / m, 5.0 / m];
    let levels: Vec<&[f64]> = match family {
        Family::Eipld => vec![&shape, &inv_scale, &expo],
        Family::Epld => vec![&shape, &rate, &expo],
        Family::Pld | Family::Wd => vec![&shape, &rate],
        Family::Gld | Family::Ee => vec![&shape, &rate],
        Family::Ld => vec![&rate],
        Family::Ild => vec![&inv_scale],
        Family::Ipld => vec![&shape, &inv_scale],
    };
    let mut grid: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in levels {
        grid = grid
            .into_iter()
            .flat_map(|head| {
                axis.iter().map(move |&v| {
                    let mut p = head.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    grid
}

/// `count` entries spread evenly over `grid`.
fn pick_starts(grid: Vec<Vec<f64>>, count: usize) -> Vec<Vec<f64>> {
    let len = grid.len();
    if count >= len {
        return grid;
    }
    (0..count).map(|i| grid[i * len / count].clone()).collect()
}

/// Maximum-likelihood fit of `family` to `data`.
///
/// Each start runs a Nelder–Mead search in log-parameter space inside the
/// configured box; the best run (ties: lexicographically smallest
/// log-parameters) is then polished by projected Newton ascent.
pub fn fit_mle(family: Family, data: &Dataset, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    let q = family.n_params();
    if data.n() <= q {
        return Err(Error::Data(format!(
            "{family} has {q} parameters but only {} observations",
            data.n()
        )));
    }
    if data.is_degenerate() {
        return Err(Error::Data("all observations are equal".into()));
    }
    let bounds = (config.param_min.ln(), config.param_max.ln());
    let obj = FamilyObjective { family, data };
    let starts = pick_starts(start_grid(family, data), config.restarts);
    let n_restarts_used = starts.len();
    let neg = |x: &[f64]| -obj.value(x);

    let runs: Vec<_> = starts
        .par_iter()
        .map(|s| {
            let x0: Vec<f64> = s.iter().map(|v| v.ln()).collect();
            let first = nelder_mead(
                &neg,
                &x0,
                bounds,
                SIMPLEX_STEP,
                config.max_iters,
                config.tol_simplex,
                config.tol_loglik,
            );
            // A fresh simplex around the first answer undoes any collapse.
            let second = nelder_mead(
                &neg,
                &first.x,
                bounds,
                0.05,
                config.max_iters,
                config.tol_simplex,
                config.tol_loglik,
            );
            if second.fx <= first.fx {
                second
            } else {
                first
            }
        })
        .collect();
    let best = runs
        .into_iter()
        .reduce(|a, b| {
            let better_b = b.fx < a.fx
                || (b.fx == a.fx
                    && b.x.iter().zip(&a.x).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne())
                        == Some(std::cmp::Ordering::Less));
            if better_b {
                b
            } else {
                a
            }
        })
        .expect("at least one start");
    if !best.fx.is_finite() {
        return Err(Error::numeric("fit_mle", format!("{family}: no finite likelihood found")));
    }

    let (x, log_lik) = polish(&obj, &best.x, bounds, config.tol_score, POLISH_STEPS);
    let tie = rounding_band(best.fx);
    let (x, log_lik) = if log_lik >= -best.fx - tie {
        (x, log_lik)
    } else {
        (best.x.clone(), -best.fx)
    };
    let g = obj.grad(&x);
    let projected = projected_score_norm(&x, &g, bounds);
    let at_bound = x.iter().any(|&v| v <= bounds.0 || v >= bounds.1);
    let p: Vec<f64> = x.iter().map(|v| v.exp()).collect();
    let score_at_mle: Vec<f64> = g.iter().zip(&p).map(|(gi, pi)| gi / pi).collect();

    let info = match family {
        Family::Eipld => observed_information(&Params::new(p[0], p[1], p[2])?, data),
        _ => {
            let hx = obj.hess(&x);
            let rows = (0..q)
                .map(|i| {
                    (0..q)
                        .map(|j| {
                            let diag = if i == j { g[i] } else { 0.0 };
                            -(hx[i][j] - diag) / (p[i] * p[j])
                        })
                        .collect()
                })
                .collect();
            InfoMatrix::from_rows(rows)
        }
    };
    let vcov = if info.positive_definite {
        spd_inverse(&info.entries).ok()
    } else {
        None
    };
    let mut fit = FitResult {
        family,
        estimates: GenericParams::new(family, p)?,
        log_lik,
        score_at_mle,
        info,
        vcov,
        ci_level: config.ci_level,
        ci: None,
        converged: best.converged && projected <= config.tol_score,
        at_bound,
        n_restarts_used,
    };
    fit.ci = confidence_intervals(&fit, config.ci_level).ok();
    Ok(fit)
}

/// Standard normal quantile `z` with `P(|Z| ≤ z) = level`.
pub fn normal_multiplier(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain("confidence level", format!("{level} is not in (0, 1)")));
    }
    let n = Normal::standard();
    Ok(n.inverse_cdf(0.5 * (1.0 + level)))
}

/// Wald intervals `estimate ± z·sd`; negative lower ends are raised to 0.
pub fn confidence_intervals(fit: &FitResult, level: f64) -> Result<Vec<Interval>> {
    let z = normal_multiplier(level)?;
    if !fit.converged {
        return Err(Error::NonConvergence {
            what: "confidence_intervals: fit did not converge",
            estimate: fit.log_lik,
            error_bound: fit.score_norm(),
        });
    }
    let vcov = fit
        .vcov
        .as_ref()
        .ok_or_else(|| Error::Singular("information matrix is not positive definite".into()))?;
    Ok(fit
        .estimates
        .values()
        .iter()
        .enumerate()
        .map(|(i, &est)| {
            let half = z * vcov[i][i].sqrt();
            let lower = est - half;
            Interval {
                lower: lower.max(0.0),
                upper: est + half,
                floored: lower < 0.0,
            }
        })
        .collect())
}
