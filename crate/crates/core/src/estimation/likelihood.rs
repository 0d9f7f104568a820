//! Log-likelihood, score and observed information.
//!
//! For the EIPLD family, with `ℓ = ln z`, `y = z^{−α}`, `c = β/(1+β)` and
//! `D = 1 + c·y`:
//!
//! ```text
//! L   = n[ln α + 2 ln β + ln θ − ln(1+β)] + Σ ln(1+z^α) − (2α+1)Σℓ − θβΣy + (θ−1)Σ ln D
//! ∂α  = n/α + Σ ℓ/(1+y) − 2Σℓ + θβ Σ yℓ − (θ−1)c Σ yℓ/D
//! ∂β  = n(2/β − 1/(1+β)) − θ Σy + (θ−1)/(1+β)² Σ y/D
//! ∂θ  = n/θ − β Σy + Σ ln D
//! ```

use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use super::Dataset;
use crate::competitors::{log_pdf_unchecked, Family, GenericParams};
use crate::distribution::{softplus, Params};
use crate::error::{Error, Result};

/// Relative step for differencing the analytic score.
const INFO_REL_STEP: f64 = 1e-5;

/// Negated Hessian of the log-likelihood at a point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfoMatrix {
    pub entries: Vec<Vec<f64>>,
    /// Whether the matrix passed a Cholesky factorization.
    pub positive_definite: bool,
}

impl InfoMatrix {
    pub(crate) fn from_rows(entries: Vec<Vec<f64>>) -> Self {
        let positive_definite = scaled_cholesky(&entries).is_some();
        Self {
            entries,
            positive_definite,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Largest `|I_ij − I_ji|` relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let q = self.dim();
        let scale = self
            .entries
            .iter()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for i in 0..q {
            for j in 0..i {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
            }
        }
        worst / scale
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = to_dmatrix(&self.entries);
        let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

fn to_dmatrix(rows: &[Vec<f64>]) -> nalgebra::DMatrix<f64> {
    let q = rows.len();
    nalgebra::DMatrix::from_fn(q, q, |i, j| rows[i][j])
}

/// Cholesky of `S·A·S` with `S = diag(A_ii^{-1/2})`, which is insensitive to
/// the very different parameter scales.
fn scaled_cholesky(a: &[Vec<f64>]) -> Option<(nalgebra::Cholesky<f64, nalgebra::Dyn>, Vec<f64>)> {
    let q = a.len();
    let mut s = Vec::with_capacity(q);
    for (i, row) in a.iter().enumerate() {
        let d = row[i];
        if !(d > 0.0 && d.is_finite()) {
            return None;
        }
        s.push(d.sqrt().recip());
    }
    let m = nalgebra::DMatrix::from_fn(q, q, |i, j| s[i] * a[i][j] * s[j]);
    m.cholesky().map(|c| (c, s))
}

/// Inverse of a symmetric positive definite matrix.
pub(crate) fn spd_inverse(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let (chol, s) =
        scaled_cholesky(a).ok_or_else(|| Error::Singular("information matrix is not positive definite".into()))?;
    let inv = chol.inverse();
    let q = a.len();
    Ok((0..q)
        .map(|i| (0..q).map(|j| s[i] * inv[(i, j)] * s[j]).collect())
        .collect())
}

fn check_params(family: Family, params: &GenericParams) -> Result<()> {
    if params.values().len() == family.n_params() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{family} takes {} parameters, got {}",
            family.n_params(),
            params.values().len()
        )))
    }
}

/// `Σ ln f(zᵢ)` for any family.
pub fn log_likelihood(family: Family, params: &GenericParams, data: &Dataset) -> Result<f64> {
    check_params(family, params)?;
    Ok(log_lik_raw(family, params.values(), data))
}

pub(crate) fn log_lik_raw(family: Family, v: &[f64], data: &Dataset) -> f64 {
    if family == Family::Eipld {
        return eipld_log_lik(v[0], v[1], v[2], data);
    }
    data.values()
        .iter()
        .zip(data.logs())
        .map(|(&z, &lz)| log_pdf_unchecked(family, v, z, lz))
        .sum()
}

fn eipld_log_lik(a: f64, b: f64, th: f64, data: &Dataset) -> f64 {
    let ln_c = b.ln() - b.ln_1p();
    let mut sum_log1p_za = 0.0;
    let mut sum_l = 0.0;
    let mut sum_y = 0.0;
    let mut sum_ln_d = 0.0;
    for &l in data.logs() {
        let t = -a * l;
        sum_log1p_za += softplus(-t);
        sum_l += l;
        sum_y += t.exp();
        sum_ln_d += softplus(t + ln_c);
    }
    let n = data.n() as f64;
    let v = n * (a.ln() + 2.0 * b.ln() + th.ln() - b.ln_1p()) + sum_log1p_za
        - (2.0 * a + 1.0) * sum_l
        - th * b * sum_y
        + (th - 1.0) * sum_ln_d;
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Analytic gradient of the EIPLD log-likelihood in `(α, β, θ)`.
pub fn score(params: &Params, data: &Dataset) -> [f64; 3] {
    let [a, b, th] = params.to_array();
    let c = b / (1.0 + b);
    let ln_c = c.ln();
    let cp = (1.0 + b).powi(-2);
    let n = data.n() as f64;
    let mut s_l_1py = 0.0;
    let mut s_l = 0.0;
    let mut s_yl = 0.0;
    let mut s_rl = 0.0;
    let mut s_y = 0.0;
    let mut s_r = 0.0;
    let mut s_lnd = 0.0;
    for &l in data.logs() {
        let t = -a * l;
        let y = t.exp();
        let r = (y.recip() + c).recip(); // y / (1 + c·y)
        s_l_1py += l / (1.0 + y);
        s_l += l;
        s_yl += y * l;
        s_rl += r * l;
        s_y += y;
        s_r += r;
        s_lnd += softplus(t + ln_c);
    }
    [
        n / a + s_l_1py - 2.0 * s_l + th * b * s_yl - (th - 1.0) * c * s_rl,
        n * (2.0 / b - 1.0 / (1.0 + b)) - th * s_y + (th - 1.0) * cp * s_r,
        n / th - b * s_y + s_lnd,
    ]
}

/// Observed information for EIPLD: central differences of [`score`] with
/// relative step `1e-5`, symmetrized, with the exact `(θ,θ)` entry `n/θ²`.
pub fn observed_information(params: &Params, data: &Dataset) -> InfoMatrix {
    let p = params.to_array();
    let mut h = [[0.0; 3]; 3];
    for j in 0..3 {
        let step = INFO_REL_STEP * p[j];
        let mut up = p;
        let mut dn = p;
        up[j] += step;
        dn[j] -= step;
        let su = score(&Params::new(up[0], up[1], up[2]).expect("positive step"), data);
        let sd = score(&Params::new(dn[0], dn[1], dn[2]).expect("positive step"), data);
        for i in 0..3 {
            h[i][j] = -(su[i] - sd[i]) / (2.0 * step);
        }
    }
    let mut rows = vec![vec![0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = 0.5 * (h[i][j] + h[j][i]);
        }
    }
    rows[2][2] = data.n() as f64 / (p[2] * p[2]);
    InfoMatrix::from_rows(rows)
}

/// Closed-form Hessian of the EIPLD log-likelihood, used as a cross-check
/// on [`observed_information`].
pub fn hessian_closed_form(params: &Params, data: &Dataset) -> Matrix3<f64> {
    let [a, b, th] = params.to_array();
    let c = b / (1.0 + b);
    let cp = (1.0 + b).powi(-2);
    let n = data.n() as f64;
    let (mut s_zz, mut s_yll, mut s_yll_d2, mut s_yl, mut s_yl_d2, mut s_rl) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut s_y, mut s_r, mut s_r2) = (0.0, 0.0, 0.0);
    for &l in data.logs() {
        let y = (-a * l).exp();
        let r = (y.recip() + c).recip();
        let rd = r / (1.0 + c * y); // y / D²
        s_zz += l * l * y / ((1.0 + y) * (1.0 + y));
        s_yll += y * l * l;
        s_yll_d2 += rd * l * l;
        s_yl += y * l;
        s_yl_d2 += rd * l;
        s_rl += r * l;
        s_y += y;
        s_r += r;
        s_r2 += r * r;
    }
    let haa = -n / (a * a) + s_zz - th * b * s_yll + (th - 1.0) * c * s_yll_d2;
    let hab = th * s_yl - (th - 1.0) * cp * s_yl_d2;
    let hat = b * s_yl - c * s_rl;
    let hbb = -2.0 * n / (b * b) + n * cp
        - (th - 1.0) * (2.0 * cp / (1.0 + b) * s_r + cp * cp * s_r2);
    let hbt = -s_y + cp * s_r;
    let htt = -n / (th * th);
    Matrix3::new(haa, hab, hat, hab, hbb, hbt, hat, hbt, htt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repair() -> Dataset {
        crate::data::repair_times()
    }

    fn p(a: f64, b: f64, t: f64) -> Params {
        Params::new(a, b, t).unwrap()
    }

    #[test]
    fn matches_sum_of_log_densities() {
        let d = repair();
        for q in [p(1.2, 25.9, 0.062), p(0.7, 0.3, 4.0), p(3.0, 2.0, 1.0)] {
            let ll = log_likelihood(Family::Eipld, &q.into(), &d).unwrap();
            let direct: f64 = d.values().iter().map(|&z| q.log_pdf(z).unwrap()).sum();
            assert!((ll - direct).abs() < 1e-10 * direct.abs());
        }
    }

    #[test]
    fn published_point() {
        let ll = log_likelihood(Family::Eipld, &p(1.20167, 25.94112, 0.06205).into(), &repair()).unwrap();
        assert!((ll + 89.45).abs() < 0.02, "{ll}");
    }

    #[test]
    fn single_point() {
        let d = Dataset::new(vec![1.0], "one").unwrap();
        let q = p(1.0, 1.0, 1.0);
        assert_eq!(log_likelihood(Family::Eipld, &q.into(), &d).unwrap(), -1.0);
        assert!((score(&q, &d)[2] - 1.5_f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn theta_theta_entry_is_exact() {
        let d = repair();
        let info = observed_information(&p(1.20167, 25.94112, 0.06205), &d);
        assert_eq!(info.entries[2][2], 40.0 / (0.06205 * 0.06205));
        assert!((info.entries[2][2] - 10_389.063_951_831_1).abs() < 1e-9);
    }

    #[test]
    fn differenced_score_matches_closed_form() {
        let d = repair();
        for q in [p(1.2, 25.9, 0.062), p(0.7, 0.3, 4.0), p(2.0, 3.0, 1.5)] {
            let info = observed_information(&q, &d);
            let h = hessian_closed_form(&q, &d);
            for i in 0..3 {
                for j in 0..3 {
                    let want = -h[(i, j)];
                    let got = info.entries[i][j];
                    let scale = (info.entries[i][i] * info.entries[j][j]).sqrt();
                    assert!((got - want).abs() < 1e-7 * scale, "({i},{j}) {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn spd_inverse_roundtrip() {
        let a = vec![vec![4.0, 1.0], vec![1.0, 3.0]];
        let inv = spd_inverse(&a).unwrap();
        let det = 11.0;
        assert!((inv[0][0] - 3.0 / det).abs() < 1e-15);
        assert!((inv[0][1] + 1.0 / det).abs() < 1e-15);
        assert!(spd_inverse(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
        assert!(!InfoMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).positive_definite);
    }
}
