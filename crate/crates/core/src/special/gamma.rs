//! Log-gamma and generalized binomial coefficients.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Number of Taylor terms used around the roots of `ln Γ` at 1 and 2.
const ROOT_TERMS: usize = 40;
const ROOT_RADIUS: f64 = 0.25;

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Lanczos approximation away from 1 and 2; near those roots a Taylor
/// series in `ζ(k)` keeps the relative error small.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("log_gamma", format!("argument {x} must be > 0")));
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if (x - 1.0).abs() <= ROOT_RADIUS {
        return ln_gamma_1p(x - 1.0);
    }
    if (x - 2.0).abs() <= ROOT_RADIUS {
        let eps = x - 2.0;
        return eps.ln_1p() + ln_gamma_1p(eps);
    }
    if x < 1.0 - ROOT_RADIUS {
        // Γ(x) = Γ(x+1)/x keeps the argument in the accurate range.
        return ln_gamma_pos(x + 1.0) - x.ln();
    }
    lanczos(x)
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln Γ(1 + ε) = −γε + Σ_{k≥2} (−1)^k ζ(k) ε^k / k` for small `|ε|`.
fn ln_gamma_1p(eps: f64) -> f64 {
    let zeta = zeta_table();
    let mut sum = 0.0;
    let mut pow = eps;
    // Accumulate from the smallest terms for a little extra accuracy.
    let mut terms = [0.0; ROOT_TERMS + 1];
    for (k, term) in terms.iter_mut().enumerate().skip(2) {
        pow *= eps;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *term = sign * zeta[k] * pow / k as f64;
    }
    for term in terms.iter().rev() {
        sum += term;
    }
    sum - EULER_GAMMA * eps
}

/// ζ(k) for 2 ≤ k ≤ ROOT_TERMS via Euler–Maclaurin summation.
fn zeta_table() -> &'static [f64; ROOT_TERMS + 1] {
    static TABLE: OnceLock<[f64; ROOT_TERMS + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const N: f64 = 20.0;
        // B_{2j}/(2j)! for j = 1..=6.
        const BERN: [f64; 6] = [
            1.0 / 6.0 / 2.0,
            -1.0 / 30.0 / 24.0,
            1.0 / 42.0 / 720.0,
            -1.0 / 30.0 / 40_320.0,
            5.0 / 66.0 / 3_628_800.0,
            -691.0 / 2730.0 / 479_001_600.0,
        ];
        let mut table = [0.0; ROOT_TERMS + 1];
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            let kf = k as f64;
            let mut tail = N.powf(1.0 - kf) / (kf - 1.0) + 0.5 * N.powf(-kf);
            // Rising factorial (k)_{2j−1} times N^{−k−2j+1}.
            let mut rising = kf;
            let mut npow = N.powf(-kf - 1.0);
            for (j, b) in BERN.iter().enumerate() {
                tail += b * rising * npow;
                let m = 2 * j + 1;
                rising *= (kf + m as f64) * (kf + m as f64 + 1.0);
                npow /= N * N;
            }
            let mut head = 0.0;
            for n in (1..20).rev() {
                head += (n as f64).powf(-kf);
            }
            *slot = head + tail;
        }
        table
    })
}

/// Generalized binomial coefficient `C(a, i) = ∏_{j=1..i} (a − j + 1)/j`.
///
/// Exactly zero when `a` is a nonnegative integer below `i`.
pub fn gen_binomial(a: f64, i: u32) -> f64 {
    let mut c = 1.0;
    for j in 1..=i {
        let num = a - f64::from(j) + 1.0;
        if num == 0.0 {
            return 0.0;
        }
        c *= num / f64::from(j);
    }
    c
}
