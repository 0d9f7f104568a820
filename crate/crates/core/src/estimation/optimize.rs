//! Box-constrained maximization in log-parameter space.

/// Outcome of one simplex run (minimizing).
#[derive(Debug, Clone)]
pub(crate) struct Simplex {
    pub x: Vec<f64>,
    pub fx: f64,
    pub converged: bool,
}

fn clamp_into(x: &mut [f64], lo: f64, hi: f64) {
    for v in x {
        *v = v.clamp(lo, hi);
    }
}

fn eval(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Nelder–Mead with standard coefficients; vertices are clamped into
/// `[lo, hi]^q` after every move.
pub(crate) fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    (lo, hi): (f64, f64),
    step: f64,
    max_iters: usize,
    tol_x: f64,
    tol_f: f64,
) -> Simplex {
    let q = x0.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(q + 1);
    let mut base = x0.to_vec();
    clamp_into(&mut base, lo, hi);
    pts.push(base.clone());
    for i in 0..q {
        let mut p = base.clone();
        p[i] = if p[i] + step <= hi { p[i] + step } else { p[i] - step };
        pts.push(p);
    }
    let mut fs: Vec<f64> = pts.iter().map(|p| eval(f, p)).collect();
    let mut converged = false;
    let mut order: Vec<usize> = (0..=q).collect();

    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        // a + t·(b − a), clamped
        let mut out: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
        clamp_into(&mut out, lo, hi);
        out
    };

    for _ in 0..max_iters {
        order.sort_by(|&i, &j| fs[i].total_cmp(&fs[j]).then(i.cmp(&j)));
        let (best, worst, second) = (order[0], order[q], order[q - 1]);
        let spread = fs[worst] - fs[best];
        let diameter = pts
            .iter()
            .flat_map(|p| p.iter().zip(&pts[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0_f64, f64::max);
        if diameter < tol_x && spread < tol_f {
            converged = true;
            break;
        }
        let mut centroid = vec![0.0; q];
        for &i in &order[..q] {
            for (c, v) in centroid.iter_mut().zip(&pts[i]) {
                *c += v / q as f64;
            }
        }
        let xr = combine(&centroid, &pts[worst], -1.0);
        let fr = eval(f, &xr);
        if fr < fs[best] {
            let xe = combine(&centroid, &pts[worst], -2.0);
            let fe = eval(f, &xe);
            if fe < fr {
                pts[worst] = xe;
                fs[worst] = fe;
            } else {
                pts[worst] = xr;
                fs[worst] = fr;
            }
            continue;
        }
        if fr < fs[second] {
            pts[worst] = xr;
            fs[worst] = fr;
            continue;
        }
        let (xc, fc, accept) = if fr < fs[worst] {
            let xc = combine(&centroid, &xr, 0.5);
            let fc = eval(f, &xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = combine(&centroid, &pts[worst], 0.5);
            let fc = eval(f, &xc);
            (xc, fc, fc < fs[worst])
        };
        if accept {
            pts[worst] = xc;
            fs[worst] = fc;
            continue;
        }
        let anchor = pts[best].clone();
        for i in 0..=q {
            if i != best {
                pts[i] = combine(&anchor, &pts[i], 0.5);
                fs[i] = eval(f, &pts[i]);
            }
        }
    }
    let best = (0..=q)
        .min_by(|&i, &j| fs[i].total_cmp(&fs[j]).then(i.cmp(&j)))
        .expect("simplex is nonempty");
    Simplex {
        x: pts.swap_remove(best),
        fx: fs[best],
        converged,
    }
}

/// Objective in log coordinates, to be maximized.
pub(crate) trait LogObjective {
    fn value(&self, x: &[f64]) -> f64;
    /// Gradient with respect to `x = ln p`.
    fn grad(&self, x: &[f64]) -> Vec<f64>;
    /// Hessian with respect to `x = ln p`.
    fn hess(&self, x: &[f64]) -> Vec<Vec<f64>>;
}

/// Coordinates held at a bound because the gradient points outward.
pub(crate) fn free_mask(x: &[f64], g: &[f64], (lo, hi): (f64, f64)) -> Vec<bool> {
    x.iter()
        .zip(g)
        .map(|(&xi, &gi)| !((xi <= lo && gi < 0.0) || (xi >= hi && gi > 0.0)))
        .collect()
}

/// Max-norm of the natural-scale score over the free coordinates.
pub(crate) fn projected_score_norm(x: &[f64], g: &[f64], bounds: (f64, f64)) -> f64 {
    free_mask(x, g, bounds)
        .iter()
        .zip(x.iter().zip(g))
        .filter(|(free, _)| **free)
        .map(|(_, (xi, gi))| (gi / xi.exp()).abs())
        .fold(0.0, f64::max)
}

/// Differences of a log-likelihood below this are rounding noise.
pub(crate) fn rounding_band(f: f64) -> f64 {
    64.0 * f64::EPSILON * f.abs().max(1.0)
}

/// Projected Levenberg–Newton ascent. Stops when the projected natural
/// score falls below `tol_score` or no further increase is found.
pub(crate) fn polish(
    obj: &dyn LogObjective,
    x0: &[f64],
    bounds: (f64, f64),
    tol_score: f64,
    max_steps: usize,
) -> (Vec<f64>, f64) {
    let (lo, hi) = bounds;
    let mut x = x0.to_vec();
    clamp_into(&mut x, lo, hi);
    let mut fx = obj.value(&x);
    let mut f_top = fx;
    for _ in 0..max_steps {
        let g = obj.grad(&x);
        let pnorm = projected_score_norm(&x, &g, bounds);
        if pnorm <= tol_score {
            break;
        }
        let free = free_mask(&x, &g, bounds);
        let idx: Vec<usize> = (0..x.len()).filter(|&i| free[i]).collect();
        let h = obj.hess(&x);
        let k = idx.len();
        let m = nalgebra::DMatrix::from_fn(k, k, |a, b| -h[idx[a]][idx[b]]);
        let rhs = nalgebra::DVector::from_fn(k, |a, _| g[idx[a]]);
        let diag_scale: Vec<f64> = (0..k).map(|a| m[(a, a)].abs().max(1e-12)).collect();
        let mut lambda = 0.0;
        let mut improved = false;
        for _ in 0..40 {
            let mut damped = m.clone();
            for a in 0..k {
                damped[(a, a)] += lambda * diag_scale[a];
            }
            if let Some(ch) = damped.cholesky() {
                let d = ch.solve(&rhs);
                let len = d.amax();
                let shrink = if len > 2.0 { 2.0 / len } else { 1.0 };
                let mut xn = x.clone();
                for (a, &i) in idx.iter().enumerate() {
                    xn[i] += shrink * d[a];
                }
                clamp_into(&mut xn, lo, hi);
                let fnew = obj.value(&xn);
                // Close to the optimum the gain drops below rounding; then a
                // smaller projected score decides.
                let flat = fnew >= f_top - rounding_band(f_top)
                    && projected_score_norm(&xn, &obj.grad(&xn), bounds) < pnorm;
                if xn != x && (fnew > fx || flat) {
                    x = xn;
                    fx = fnew;
                    f_top = f_top.max(fx);
                    improved = true;
                    break;
                }
            }
            lambda = if lambda == 0.0 { 1e-4 } else { lambda * 10.0 };
        }
        if !improved {
            break;
        }
    }
    (x, fx)
}
