use super::Params;
use crate::error::{Error, Result};
use crate::special::ln_gamma_pos;

/// Log-slack on the density ratio when testing for monotonicity.
const LR_SLACK: f64 = 1e-12;

impl Params {
    /// Density of the `k`-th order statistic out of `n`.
    ///
    /// `n!/((k−1)!(n−k)!)·g·G^{k−1}·(1−G)^{n−k}`, assembled on the log scale.
    pub fn order_stat_pdf(&self, z: f64, k: usize, n: usize) -> Result<f64> {
        if k == 0 || k > n {
            return Err(Error::Index(format!("order k = {k} outside [1, {n}]")));
        }
        if !(z > 0.0) {
            return Err(Error::domain("order_stat_pdf", format!("z = {z} must be > 0")));
        }
        let ln_z = z.ln();
        let lg = self.log_cdf_ln(ln_z);
        let nf = n as f64;
        let kf = k as f64;
        let mut v = ln_gamma_pos(nf + 1.0) - ln_gamma_pos(kf) - ln_gamma_pos(nf - kf + 1.0)
            + self.log_pdf_ln(ln_z);
        if k > 1 {
            v += (kf - 1.0) * lg;
        }
        if k < n {
            v += (nf - kf) * (-lg.exp_m1()).ln();
        }
        Ok(if v.is_nan() { 0.0 } else { v.exp() })
    }
}

/// Whether `g₂/g₁` is nondecreasing along `grid`, i.e. the grid is
/// consistent with `X₁ ≤_lr X₂`.
///
/// The grid must be strictly increasing with at least three points.
/// Points where either density underflows are skipped.
pub fn lr_order_check(p1: &Params, p2: &Params, grid: &[f64]) -> Result<bool> {
    if grid.len() < 3 {
        return Err(Error::domain("lr_order_check", "grid needs at least 3 points"));
    }
    if grid[0] <= 0.0 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "lr_order_check",
            "grid must be positive and strictly increasing",
        ));
    }
    let mut prev: Option<f64> = None;
    for &z in grid {
        let lz = z.ln();
        let (l1, l2) = (p1.log_pdf_ln(lz), p2.log_pdf_ln(lz));
        if !l1.is_finite() || !l2.is_finite() {
            continue;
        }
        let lr = l2 - l1;
        if let Some(before) = prev {
            if lr < before - LR_SLACK * before.abs().max(1.0) {
                return Ok(false);
            }
        }
        prev = Some(lr);
    }
    Ok(true)
}
