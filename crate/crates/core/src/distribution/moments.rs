//! Raw moments and the formal moment generating function.
//!
//! Moments are computed by quadrature of `z^r·g(z)`. The closed series
//!
//! ```text
//! E[Z^r] = (βθ)^{r/α} Σ_i C(θ−1, i) (θ(1+β))^{−(i+1)} (i + 1 − r/α + θβ) Γ(i + 1 − r/α)
//! ```
//!
//! comes from expanding `(1 + c/z^α)^{θ−1}` binomially. That expansion
//! diverges for `z^α < c`, so for non-integer `θ` the integrated series is
//! only formal; for integer `θ` it terminates at `i = θ − 1` and is exact.
//!
//! The moment generating function does not exist for `t > 0` (the density
//! has a polynomial right tail) and every moment of order `≥ α` is
//! infinite, so [`Params::mgf_formal`] is a truncated formal expansion
//! `Σ_{n < N} tⁿ/n!·E[Zⁿ]`, meaningful as an approximation only for
//! small `t ≤ 0`.

use super::Params;
use crate::error::{Error, Result};
use crate::special::{gen_binomial, ln_gamma_pos, HalfLine};

const MOMENT_REL_TOL: f64 = 1e-12;

impl Params {
    fn check_moment_order(&self, r: u32) -> Result<()> {
        if f64::from(r) >= self.alpha {
            Err(Error::MomentDoesNotExist {
                order: r,
                alpha: self.alpha,
            })
        } else {
            Ok(())
        }
    }

    /// `E[Z^r]` by quadrature; requires `α > r`.
    pub fn raw_moment(&self, r: u32) -> Result<f64> {
        if r == 0 {
            return Ok(1.0);
        }
        self.check_moment_order(r)?;
        let rf = f64::from(r);
        let res = HalfLine::with_rel_tol(MOMENT_REL_TOL).integrate(|z| {
            let lz = z.ln();
            (rf * lz + self.log_pdf_ln(lz)).exp()
        })?;
        Ok(res.value)
    }

    /// The binomial series for `E[Z^r]`.
    ///
    /// Exact and finite for integer `θ`. Otherwise terms are added until
    /// `|term| < tol·|sum|`; reaching `max_terms` first is a
    /// non-convergence error.
    pub fn raw_moment_series(&self, r: u32, max_terms: usize, tol: f64) -> Result<f64> {
        self.check_moment_order(r)?;
        let (a, b, th) = (self.alpha, self.beta, self.theta);
        let ratio = f64::from(r) / a;
        let prefactor = (b * th).powf(ratio);
        let ln_scale = (th * (1.0 + b)).ln();
        let terminating = th.fract() == 0.0;
        let n_terms = if terminating {
            th as usize
        } else {
            max_terms
        };
        if n_terms > max_terms {
            return Err(Error::NonConvergence {
                what: "raw_moment_series",
                estimate: f64::NAN,
                error_bound: f64::INFINITY,
            });
        }
        let mut sum = 0.0;
        let mut last = f64::INFINITY;
        for i in 0..n_terms {
            let k = i as f64 + 1.0 - ratio;
            let binom = gen_binomial(th - 1.0, i as u32);
            if binom == 0.0 {
                last = 0.0;
                continue;
            }
            let mag = (ln_gamma_pos(k) - (i as f64 + 1.0) * ln_scale).exp();
            let term = binom * (k + th * b) * mag;
            sum += term;
            last = term;
            if !terminating && term.abs() < tol * sum.abs() {
                return Ok(prefactor * sum);
            }
        }
        if terminating {
            Ok(prefactor * sum)
        } else {
            Err(Error::NonConvergence {
                what: "raw_moment_series",
                estimate: prefactor * sum,
                error_bound: (prefactor * last).abs(),
            })
        }
    }

    /// Truncated formal MGF `Σ_{n < n_terms} tⁿ/n!·E[Zⁿ]`.
    ///
    /// Every retained order must satisfy `n < α`.
    pub fn mgf_formal(&self, t: f64, n_terms: u32) -> Result<f64> {
        if n_terms == 0 {
            return Err(Error::domain("mgf_formal", "n_terms must be >= 1"));
        }
        if !t.is_finite() {
            return Err(Error::domain("mgf_formal", format!("t = {t} must be finite")));
        }
        let top = n_terms - 1;
        if top > 0 {
            self.check_moment_order(top)?;
        }
        let mut sum = 1.0;
        let mut coef = 1.0;
        for n in 1..n_terms {
            coef *= t / f64::from(n);
            if coef == 0.0 {
                break;
            }
            sum += coef * self.raw_moment(n)?;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::integrate_positive_halfline;

    fn p(a: f64, b: f64, t: f64) -> Params {
        Params::new(a, b, t).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn mean_at_alpha_two() {
        let want = 0.75 * std::f64::consts::PI.sqrt();
        let q = p(2.0, 1.0, 1.0);
        assert!(rel(q.raw_moment(1).unwrap(), want) < 1e-9);
        assert!(rel(q.raw_moment_series(1, 10, 1e-14).unwrap(), want) < 1e-14);
    }

    #[test]
    fn terminating_series_matches_quadrature() {
        // mpmath quadrature: E[Z] for (2,1,3) = 2.2331973470290556.
        let q = p(2.0, 1.0, 3.0);
        assert!(rel(q.raw_moment(1).unwrap(), 2.233_197_347_029_056) < 1e-10);
        assert!(rel(q.raw_moment_series(1, 10, 1e-14).unwrap(), 2.233_197_347_029_056) < 1e-12);
    }

    #[test]
    fn existence_constraint() {
        assert!(matches!(
            p(1.0, 1.0, 1.0).raw_moment(1),
            Err(Error::MomentDoesNotExist { order: 1, .. })
        ));
        assert!(p(2.0, 1.0, 1.0).raw_moment(2).is_err());
        assert!(p(2.0, 1.0, 1.0).raw_moment_series(3, 10, 1e-12).is_err());
    }

    #[test]
    fn positive_variance() {
        for q in [p(2.5, 1.0, 1.0), p(3.0, 0.4, 2.5), p(6.0, 10.0, 0.3)] {
            let m1 = q.raw_moment(1).unwrap();
            let m2 = q.raw_moment(2).unwrap();
            assert!(m2 - m1 * m1 > 0.0);
        }
    }

    #[test]
    fn non_integer_theta_series_is_formal() {
        // Terms eventually grow like Γ(i)/(θ(1+β))^i; with few terms allowed the
        // sum cannot meet a tight tolerance.
        let q = p(3.0, 0.5, 0.5);
        assert!(matches!(
            q.raw_moment_series(1, 5, 1e-15),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn mgf_at_zero_and_negative_t() {
        let q = p(5.0, 1.0, 1.0);
        assert_eq!(q.mgf_formal(0.0, 4).unwrap(), 1.0);
        // mpmath: ∫e^{−0.1z} g(z) dz = 0.90092793061473366; first omitted term 1.148e−5.
        let exact = integrate_positive_halfline(
            |z| (-0.1 * z + q.log_pdf_ln(z.ln())).exp(),
            1e-13,
        )
        .unwrap()
        .value;
        assert!((exact - 0.900_927_930_614_733_7).abs() < 1e-11);
        let approx = q.mgf_formal(-0.1, 4).unwrap();
        assert!((approx - exact).abs() <= 1.148e-5);
        assert!((approx - 0.900_917_309_479_868_9).abs() < 1e-10);
    }

    #[test]
    fn mgf_slope_is_mean() {
        let q = p(5.0, 1.0, 1.0);
        let t = 1e-6;
        let slope = (q.mgf_formal(t, 4).unwrap() - 1.0) / t;
        assert!(rel(slope, q.raw_moment(1).unwrap()) < 1e-5);
    }

    #[test]
    fn mgf_rejects_missing_moments() {
        assert!(p(2.5, 1.0, 1.0).mgf_formal(-0.1, 4).is_err());
        assert!(p(2.5, 1.0, 1.0).mgf_formal(-0.1, 3).is_ok());
        assert!(p(2.5, 1.0, 1.0).mgf_formal(-0.1, 0).is_err());
    }
}
