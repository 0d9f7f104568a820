use super::Params;
use crate::error::{Error, Result};
use crate::special::{gen_binomial, ln_gamma_pos, HalfLine};

impl Params {
    /// Rényi entropy `(1−γ)⁻¹·ln ∫ g(z)^γ dz`, for `γ > 0`, `γ ≠ 1`.
    ///
    /// The integral converges only when `γ(α+1) > 1`.
    pub fn renyi_entropy(&self, gamma: f64) -> Result<f64> {
        self.check_renyi_order(gamma)?;
        if gamma * (self.alpha + 1.0) <= 1.0 {
            return Err(Error::domain(
                "renyi_entropy",
                format!("integral of g^{gamma} diverges for alpha = {}", self.alpha),
            ));
        }
        let res = HalfLine::with_rel_tol(1e-12).integrate(|z| (gamma * self.log_pdf_ln(z.ln())).exp())?;
        Ok(res.value.ln() / (1.0 - gamma))
    }

    /// Shannon entropy `−∫ g ln g`, the `γ → 1` limit of the Rényi entropy.
    pub fn shannon_entropy(&self) -> Result<f64> {
        let res = HalfLine::with_abs_tol(1e-11).integrate(|z| {
            let lp = self.log_pdf_ln(z.ln());
            if lp == f64::NEG_INFINITY {
                0.0
            } else {
                -lp * lp.exp()
            }
        })?;
        Ok(res.value)
    }

    /// Closed double series for the Rényi entropy.
    ///
    /// Only available when both binomial expansions terminate: `γ` an
    /// integer `≥ 2` and `γ(θ−1)` a nonnegative integer.
    pub fn renyi_entropy_series(&self, gamma: f64) -> Result<f64> {
        self.check_renyi_order(gamma)?;
        let outer = gamma * (self.theta - 1.0);
        let outer_n = outer.round();
        if gamma.fract() != 0.0 || gamma < 2.0 || (outer - outer_n).abs() > 1e-12 || outer_n < 0.0 {
            return Err(Error::domain(
                "renyi_entropy_series",
                "series terminates only for integer gamma >= 2 and integer gamma*(theta-1) >= 0",
            ));
        }
        let (a, b, th) = (self.alpha, self.beta, self.theta);
        let ln_c = self.log_c();
        let ln_rate = (th * b * gamma).ln();
        let shift = gamma + (gamma - 1.0) / a;
        let ln_pref =
            (gamma - 1.0) * a.ln() + 2.0 * gamma * b.ln() + gamma * th.ln() - gamma * b.ln_1p();
        let mut sum = 0.0;
        for i in 0..=(outer_n as u32) {
            for j in 0..=(gamma as u32) {
                let k = f64::from(i + j) + shift;
                let coef = gen_binomial(outer_n, i) * gen_binomial(gamma, j);
                sum += coef * (f64::from(i) * ln_c + ln_gamma_pos(k) - k * ln_rate).exp();
            }
        }
        Ok((ln_pref + sum.ln()) / (1.0 - gamma))
    }

    fn check_renyi_order(&self, gamma: f64) -> Result<()> {
        if !(gamma > 0.0) || gamma == 1.0 || !gamma.is_finite() {
            return Err(Error::domain(
                "renyi_entropy",
                format!("order {gamma} must be > 0 and != 1"),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64, t: f64) -> Params {
        Params::new(a, b, t).unwrap()
    }

    #[test]
    fn order_two_at_unit_params() {
        // ∫g² = 7/16 exactly for (1,1,1).
        let want = -(7.0_f64 / 16.0).ln();
        let q = p(1.0, 1.0, 1.0);
        assert!((q.renyi_entropy(2.0).unwrap() - want).abs() < 1e-11);
        assert!((q.renyi_entropy_series(2.0).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn brackets_shannon() {
        // mpmath: Shannon entropy of (1,1,1) is 1.5494048292014140.
        let q = p(1.0, 1.0, 1.0);
        let h = q.shannon_entropy().unwrap();
        assert!((h - 1.549_404_829_201_414).abs() < 1e-9);
        let below = q.renyi_entropy(1.001).unwrap();
        let above = q.renyi_entropy(0.999).unwrap();
        assert!(below < h && h < above);
        assert!(above - below <= 1e-2);
    }

    #[test]
    fn series_cross_check_on_terminating_cases() {
        for (a, b, t, g) in [(2.0, 0.7, 2.0, 2.0), (1.5, 3.0, 1.5, 2.0), (0.8, 1.2, 3.0, 3.0)] {
            let q = p(a, b, t);
            let quad = q.renyi_entropy(g).unwrap();
            let series = q.renyi_entropy_series(g).unwrap();
            assert!((quad - series).abs() < 1e-10 * quad.abs().max(1.0), "{a},{b},{t},{g}");
        }
    }

    #[test]
    fn invalid_orders() {
        let q = p(1.0, 1.0, 1.0);
        assert!(q.renyi_entropy(1.0).is_err());
        assert!(q.renyi_entropy(0.0).is_err());
        assert!(q.renyi_entropy(-2.0).is_err());
        assert!(q.renyi_entropy(0.4).is_err()); // γ(α+1) = 0.8 ≤ 1
        assert!(q.renyi_entropy_series(2.5).is_err());
        assert!(p(1.0, 1.0, 0.5).renyi_entropy_series(2.0).is_err());
    }
}
