use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{Params, Probability};
use crate::error::{Error, Result};
use crate::special::lambert_w_minus1_log;

/// Slack allowed above the branch point before the Lambert argument is rejected.
const BRANCH_SLACK: f64 = 1e-14;

impl Params {
    /// Inverse CDF through the lower Lambert branch:
    /// `Q(u) = [−1 − 1/β − W₋₁(−u^{1/θ}(1+β)e^{−(1+β)})/β]^{−1/α}`.
    pub fn quantile(&self, u: Probability) -> Result<f64> {
        let u = u.value();
        let (a, b) = (self.alpha, self.beta);
        // ln of the (negated) Lambert argument.
        let mut log_arg = u.ln() / self.theta + b.ln_1p() - (1.0 + b);
        if log_arg > -1.0 {
            if log_arg <= -1.0 + BRANCH_SLACK {
                log_arg = -1.0;
            } else {
                return Err(Error::numeric(
                    "quantile",
                    format!("Lambert argument beyond the branch point (log = {log_arg})"),
                ));
            }
        }
        let w = lambert_w_minus1_log(log_arg)?;
        let inner = (-w - 1.0 - b) / b;
        if !(inner > 0.0) {
            return Err(Error::numeric(
                "quantile",
                format!("non-positive base {inner} at u = {u}"),
            ));
        }
        let q = inner.powf(-1.0 / a);
        if q > 0.0 && q.is_finite() {
            Ok(q)
        } else {
            Err(Error::numeric("quantile", format!("result {q} at u = {u}")))
        }
    }

    pub fn median(&self) -> Result<f64> {
        self.quantile(Probability(0.5))
    }

    /// `n` inverse-transform draws from a ChaCha20 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::domain("sample", "n must be >= 1"));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                self.quantile(Probability(u))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64, t: f64) -> Params {
        Params::new(a, b, t).unwrap()
    }

    fn bisect_quantile(q: &Params, u: f64) -> f64 {
        let (mut lo, mut hi) = (1e-6_f64, 10.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if q.cdf(mid).unwrap() < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn inverts_cdf_example() {
        let z = p(1.0, 1.0, 2.0).quantile(Probability::new(0.304_504_4).unwrap()).unwrap();
        // cdf(1) = (1.5/e)² = 0.30450443..., so the quantile sits just below 1.
        assert!((z - 1.0).abs() < 1e-6);
        let exact = (1.5 / std::f64::consts::E).powi(2);
        let z = p(1.0, 1.0, 2.0).quantile(Probability::new(exact).unwrap()).unwrap();
        assert!((z - 1.0).abs() < 1e-8);
    }

    #[test]
    fn median_matches_bisection() {
        // 40-digit bisection of G(z) = 1/2 for (1,1,1): 0.8724532496000724.
        let q = p(1.0, 1.0, 1.0);
        let m = q.median().unwrap();
        assert!((m - 0.872_453_249_600_072_4).abs() < 1e-12);
        assert!((m - bisect_quantile(&q, 0.5)).abs() < 1e-12);
        assert_eq!(m, q.quantile(Probability::new(0.5).unwrap()).unwrap());
        assert!((q.cdf(m).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn median_grows_with_theta() {
        // Bisection oracle values for θ = 1, 2, 4, 8.
        let expected = [0.872_453_249_600_072, 1.627_342_369_256_34, 3.095_990_911_650_41, 5.998_700_683_001_33];
        let mut prev = 0.0;
        for (theta, want) in [1.0, 2.0, 4.0, 8.0].into_iter().zip(expected) {
            let m = p(1.0, 1.0, theta).median().unwrap();
            assert!((m - want).abs() < 1e-10, "theta={theta}");
            assert!(m > prev);
            prev = m;
        }
    }

    #[test]
    fn extreme_parameters() {
        // (1+β)e^{−(1+β)} underflows for β = 2000 unless handled in log form.
        let q = p(1.5, 2000.0, 0.7);
        for &u in &[1e-9, 0.3, 0.999_999] {
            let z = q.quantile(Probability::new(u).unwrap()).unwrap();
            assert!((q.cdf(z).unwrap() - u).abs() < 1e-10, "u={u}");
        }
        let q = p(0.5, 1e-4, 50.0);
        let z = q.quantile(Probability::new(0.5).unwrap()).unwrap();
        assert!((q.cdf(z).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn sampling_is_deterministic_and_positive() {
        let q = p(1.0, 1.0, 1.0);
        let a = q.sample(1000, 7).unwrap();
        let b = q.sample(1000, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 0.0 && x.is_finite()));
        assert_ne!(a, q.sample(1000, 8).unwrap());
        assert!(q.sample(0, 1).is_err());
    }
}
