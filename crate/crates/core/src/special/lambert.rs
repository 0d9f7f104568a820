//! Lower real branch of the Lambert W function.
//!
//! `W₋₁(x)` solves `w·eʷ = x` with `w ≤ −1` for `x ∈ [−1/e, 0)`. The
//! starting point comes from the branch-point series in
//! `p = −√(2(1 + e·x))` when `x` is close to `−1/e`, and from the
//! asymptotic expansion `L₁ − L₂ + L₂/L₁` (with `L₁ = ln(−x)`,
//! `L₂ = ln(−L₁)`) elsewhere. Halley's iteration polishes the guess.

use std::f64::consts::E;

use crate::error::{Error, Result};

const BRANCH_POINT: f64 = -1.0 / E;
const MAX_ITERS: usize = 64;

/// Lower branch `W₋₁(x)` for `−1/e ≤ x < 0`.
pub fn lambert_w_minus1(x: f64) -> Result<f64> {
    if !x.is_finite() || !(BRANCH_POINT..0.0).contains(&x) {
        return Err(Error::domain(
            "lambert_w_minus1",
            format!("argument {x} outside [-1/e, 0)"),
        ));
    }
    if x == BRANCH_POINT {
        return Ok(-1.0);
    }
    // 1 + e·x, formed as e·(x + 1/e) so that the split constant keeps precision.
    let q = E * (x - BRANCH_POINT);
    if q < 0.0 {
        return Ok(-1.0);
    }
    let mut w = if q < 0.3 {
        branch_point_series(q)
    } else {
        asymptotic_guess(x)
    };
    for _ in 0..MAX_ITERS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 || f == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        let next = (w - step).min(-1.0);
        if (next - w).abs() <= 4.0 * f64::EPSILON * w.abs() {
            w = next;
            break;
        }
        w = next;
    }
    Ok(w)
}

/// `W₋₁(−e^{log_neg_x})`, accepting the argument through its logarithm.
///
/// Useful when `−x` is too small to represent, e.g. `(1+β)e^{−(1+β)}` for
/// large `β`. Requires `log_neg_x ≤ −1`.
pub fn lambert_w_minus1_log(log_neg_x: f64) -> Result<f64> {
    if log_neg_x.is_nan() || log_neg_x > -1.0 {
        return Err(Error::domain(
            "lambert_w_minus1_log",
            format!("log(-x) = {log_neg_x} exceeds -1"),
        ));
    }
    if log_neg_x == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    if log_neg_x > -40.0 {
        return lambert_w_minus1((-log_neg_x.exp()).max(BRANCH_POINT));
    }
    // Far from the branch point: Newton on w + ln(−w) = L, which is well conditioned.
    let l1 = log_neg_x;
    let l2 = (-l1).ln();
    let mut w = l1 - l2 + l2 / l1;
    for _ in 0..MAX_ITERS {
        let g = w + (-w).ln() - log_neg_x;
        let step = g * w / (w + 1.0);
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

fn branch_point_series(q: f64) -> f64 {
    let p = -(2.0 * q).sqrt();
    -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))
}

fn asymptotic_guess(x: f64) -> f64 {
    let l1 = (-x).ln();
    let l2 = (-l1).ln();
    l1 - l2 + l2 / l1
}
