//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p eipld --test acceptance`.

use std::time::{Duration, Instant};

use eipld::competitors::{family_pdf, Family, GenericParams};
use eipld::data::repair_times;
use eipld::estimation::{fit_mle, observed_information, score, Dataset, FitConfig};
use eipld::model_selection::{aic, bic, compare, ks_statistic};
use eipld::simulation::{default_truths, run_study, PARAM_NAMES};
use eipld::special::HalfLine;
use eipld::{lr_order_check, Error, Params, Probability};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn p(a: f64, b: f64, t: f64) -> Params {
    Params::new(a, b, t).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn case_study() -> Outcome {
    let start = Instant::now();
    let d = repair_times();
    let fit = fit_mle(Family::Eipld, &d, &FitConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let nll = fit.neg_log_lik();
    let a = aic(nll, 3);
    let b = bic(nll, 3, d.n());
    let ks = ks_statistic(Family::Eipld, &fit.estimates, &d).map_err(|e| e.to_string())?;
    check(
        (nll - 89.45).abs() <= 0.05
            && (a - 184.91).abs() <= 0.10
            && (b - 189.97).abs() <= 0.10
            && (ks - 0.09537).abs() <= 0.003
            && elapsed <= Duration::from_secs(10),
        format!("-logL {nll:.5}, AIC {a:.4}, BIC {b:.4}, KS {ks:.5}, {elapsed:.2?}"),
    )
}

fn parameter_proximity() -> Outcome {
    let fit = fit_mle(Family::Eipld, &repair_times(), &FitConfig::default()).map_err(|e| e.to_string())?;
    let fitted = fit.eipld_params().ok_or("not an EIPLD fit")?;
    let published = p(1.20167, 25.94112, 0.06205);
    let mut sup = 0.0_f64;
    for i in 0..=4000 {
        let z = 0.4 + (25.0 - 0.4) * f64::from(i) / 4000.0;
        sup = sup.max((fitted.cdf(z).unwrap() - published.cdf(z).unwrap()).abs());
    }
    check(
        sup <= 0.005,
        format!("sup |F_fit - F_pub| on [0.4, 25] = {sup:.2e}; fit {:?}", fitted.to_array()),
    )
}

fn comparison_ranking() -> Outcome {
    let rows = compare(&repair_times(), &Family::COMPARISON, &FitConfig::default()).map_err(|e| e.to_string())?;
    let wd = rows.iter().find(|r| r.family == Family::Wd).ok_or("no WD row")?;
    let order: Vec<String> = rows.iter().map(|r| format!("{}={:.3}", r.family, r.aic)).collect();
    check(
        rows[0].family == Family::Eipld && (wd.neg_log_lik - 95.5114).abs() <= 0.05,
        format!("AIC order {}; WD -logL {:.4}", order.join(" "), wd.neg_log_lik),
    )
}

/// Inverse power Lindley density and CDF written out directly.
fn ipld(alpha: f64, beta: f64, z: f64) -> (f64, f64) {
    let za = z.powf(alpha);
    let pdf = alpha * beta * beta / (1.0 + beta) * (1.0 + za) / z.powf(2.0 * alpha + 1.0) * (-beta / za).exp();
    let cdf = (1.0 + beta / ((1.0 + beta) * za)) * (-beta / za).exp();
    (pdf, cdf)
}

/// Inverse Lindley density and CDF.
fn ild(beta: f64, z: f64) -> (f64, f64) {
    let pdf = beta * beta / (1.0 + beta) * (1.0 + z) / z.powi(3) * (-beta / z).exp();
    let cdf = (1.0 + beta / ((1.0 + beta) * z)) * (-beta / z).exp();
    (pdf, cdf)
}

fn reduction_equivalence() -> Outcome {
    let grid = log_grid(0.05, 50.0, 200);
    let mut worst = 0.0_f64;
    let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
    for (a, b) in [(0.5, 0.3), (1.0, 1.0), (1.7, 2.3), (3.0, 0.8), (2.2, 6.0)] {
        let q = p(a, b, 1.0);
        for &z in &grid {
            let (g, f) = ipld(a, b, z);
            if g < 1e-280 {
                continue;
            }
            worst = worst.max(rel(q.pdf(z).unwrap(), g)).max(rel(q.cdf(z).unwrap(), f));
        }
    }
    for b in [0.2, 1.0, 4.0] {
        let q = p(1.0, b, 1.0);
        for &z in &grid {
            let (g, f) = ild(b, z);
            if g < 1e-280 {
                continue;
            }
            worst = worst.max(rel(q.pdf(z).unwrap(), g)).max(rel(q.cdf(z).unwrap(), f));
        }
    }
    check(worst <= 1e-12, format!("max relative difference {worst:.2e}"))
}

fn quantile_correctness() -> Outcome {
    let triples = [
        (1.0, 1.0, 1.0),
        (1.0, 1.0, 2.0),
        (0.3, 0.05, 0.2),
        (5.0, 40.0, 8.0),
        (1.20167, 25.94112, 0.06205),
        (2.0, 3.0, 1.5),
        (1.5, 1.0, 0.5),
        (0.7, 500.0, 30.0),
        (10.0, 0.01, 0.05),
        (0.5, 2.0, 100.0),
    ];
    let mut worst = 0.0_f64;
    for (a, b, t) in triples {
        let q = p(a, b, t);
        for i in 1..=999 {
            let u = f64::from(i) / 1000.0;
            let z = q.quantile(Probability::new(u).unwrap()).map_err(|e| format!("({a},{b},{t}) u={u}: {e}"))?;
            worst = worst.max((q.cdf(z).unwrap() - u).abs());
        }
    }
    check(worst <= 1e-10, format!("max |F(Q(u)) - u| = {worst:.2e} over 999 x 10"))
}

fn moment_oracle() -> Outcome {
    let mut worst = 0.0_f64;
    let mut cases = 0;
    for theta in [1.0, 2.0, 3.0, 5.0] {
        for (alpha, beta) in [(2.5, 1.0), (4.0, 0.5), (6.0, 3.0)] {
            let q = p(alpha, beta, theta);
            for r in 1..=3u32 {
                if f64::from(r) >= alpha {
                    continue;
                }
                let quad = q.raw_moment(r).map_err(|e| e.to_string())?;
                let series = q.raw_moment_series(r, 64, 1e-15).map_err(|e| e.to_string())?;
                worst = worst.max(((quad - series) / series).abs());
                cases += 1;
            }
        }
    }
    let missing = [(1.0, 1), (2.0, 2), (2.5, 3)]
        .iter()
        .all(|&(a, r)| matches!(p(a, 1.0, 2.0).raw_moment(r), Err(Error::MomentDoesNotExist { .. }))
            && matches!(p(a, 1.0, 2.0).raw_moment_series(r, 64, 1e-12), Err(Error::MomentDoesNotExist { .. })));
    check(
        worst <= 1e-8 && missing,
        format!("{cases} cases, max relative difference {worst:.2e}; existence errors raised: {missing}"),
    )
}

fn sampling_fidelity() -> Outcome {
    let q = p(1.0, 1.0, 1.0);
    let xs = q.sample(100_000, 20_240_517).map_err(|e| e.to_string())?;
    let d = Dataset::new(xs, "draws").map_err(|e| e.to_string())?;
    let ks = ks_statistic(Family::Eipld, &q.into(), &d).map_err(|e| e.to_string())?;
    check(ks < 0.00515, format!("D_n = {ks:.5} (n = 100000)"))
}

fn gradient_hessian() -> Outcome {
    let datasets = [
        repair_times(),
        Dataset::new(p(2.0, 3.0, 1.5).sample(100, 11).unwrap(), "sim-a").unwrap(),
        Dataset::new(p(1.5, 1.0, 0.5).sample(60, 12).unwrap(), "sim-b").unwrap(),
    ];
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let mut worst_grad = 0.0_f64;
    let mut worst_sym = 0.0_f64;
    let mut theta_exact = true;
    for d in &datasets {
        for _ in 0..10 {
            let q = p(rng.random_range(0.5..3.0), rng.random_range(0.2..5.0), rng.random_range(0.3..4.0));
            let s = score(&q, d);
            let v = q.to_array();
            for j in 0..3 {
                let h = 1e-6 * v[j].abs().max(1.0);
                let mut up = v;
                let mut dn = v;
                up[j] += h;
                dn[j] -= h;
                let ll = |w: [f64; 3]| -> f64 { w_ll(&p(w[0], w[1], w[2]), d) };
                let fd = (ll(up) - ll(dn)) / (2.0 * h);
                worst_grad = worst_grad.max((s[j] - fd).abs() / s[j].abs().max(1.0));
            }
            let info = observed_information(&q, d);
            worst_sym = worst_sym.max(info.asymmetry());
            theta_exact &= info.entries[2][2] == d.n() as f64 / (v[2] * v[2]);
        }
    }
    let mut pd_ok = true;
    let mut fits = Vec::new();
    for d in &datasets {
        let fit = fit_mle(Family::Eipld, d, &FitConfig::default()).map_err(|e| e.to_string())?;
        if fit.converged && !fit.at_bound {
            pd_ok &= fit.info.positive_definite && fit.info.eigenvalues()[0] > 0.0;
        }
        fits.push(format!("{}:conv={},bound={},pd={}", d.label(), fit.converged, fit.at_bound, fit.info.positive_definite));
    }
    check(
        worst_grad <= 1e-6 && worst_sym <= 1e-8 && theta_exact && pd_ok,
        format!(
            "score vs FD {worst_grad:.1e}, asymmetry {worst_sym:.1e}, (theta,theta)=n/theta^2: {theta_exact}; fits {}",
            fits.join(" ")
        ),
    )
}

fn w_ll(q: &Params, d: &Dataset) -> f64 {
    eipld::estimation::log_likelihood(Family::Eipld, &(*q).into(), d).unwrap()
}

fn lr_ordering() -> Outcome {
    let grid = log_grid(0.01, 100.0, 200);
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..5 {
        let a = rng.random_range(0.3..4.0);
        let b = rng.random_range(0.1..5.0);
        let t1 = rng.random_range(0.1..5.0);
        let t2 = t1 + rng.random_range(0.0..5.0);
        if !lr_order_check(&p(a, b, t1), &p(a, b, t2), &grid).unwrap() {
            failures.push(format!("theta ({a:.3},{b:.3},{t1:.3}->{t2:.3})"));
        }
        let t = rng.random_range(0.1..5.0);
        let b1 = rng.random_range(0.1..5.0);
        let b2 = b1 + rng.random_range(0.0..5.0);
        if !lr_order_check(&p(a, b1, t), &p(a, b2, t), &grid).unwrap() {
            failures.push(format!("beta ({a:.3},{b1:.3}->{b2:.3},{t:.3})"));
        }
    }
    check(failures.is_empty(), format!("10 pairs checked; failures: {failures:?}"))
}

fn simulation_trend() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for truth in default_truths() {
        let r = run_study(&truth, &[25, 200], 100, 2024, &FitConfig::default()).map_err(|e| e.to_string())?;
        for name in PARAM_NAMES {
            let small = r.row(25, name).unwrap().mse;
            let large = r.row(200, name).unwrap().mse;
            ok &= large < small;
            notes.push(format!("{name} {small:.3e}->{large:.3e}"));
        }
    }
    let elapsed = start.elapsed();
    check(
        ok && elapsed <= Duration::from_secs(120),
        format!("reduced profile (reps 100, n 25->200) in {elapsed:.1?}: {}", notes.join(", ")),
    )
}

fn normalization() -> Outcome {
    let integrate = |f: &dyn Fn(f64) -> f64| HalfLine::with_abs_tol(1e-10).integrate(f).map(|r| r.value);
    let mut worst = 0.0_f64;
    let mut count = 0;
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let mut points = vec![p(1.20167, 25.94112, 0.06205), p(1.0, 1.0, 1.0)];
    for _ in 0..20 {
        points.push(p(rng.random_range(0.3..5.0), rng.random_range(0.05..20.0), rng.random_range(0.05..10.0)));
    }
    for q in &points {
        let v = integrate(&|z| q.pdf(z).unwrap()).map_err(|e| e.to_string())?;
        worst = worst.max((v - 1.0).abs());
        count += 1;
    }
    for q in points.iter().take(6) {
        for (k, n) in [(1, 5), (3, 5), (5, 5), (2, 10), (10, 10)] {
            let v = integrate(&|z| q.order_stat_pdf(z, k, n).unwrap()).map_err(|e| e.to_string())?;
            worst = worst.max((v - 1.0).abs());
            count += 1;
        }
    }
    for f in Family::ALL {
        let sets: Vec<Vec<f64>> = match f.n_params() {
            1 => vec![vec![0.05], vec![1.0], vec![20.0]],
            2 => vec![vec![0.6, 0.2], vec![1.0, 1.0], vec![3.0, 8.0]],
            _ => vec![vec![0.6, 0.3, 0.2], vec![1.0, 1.0, 1.0], vec![2.5, 6.0, 4.0]],
        };
        for v in sets {
            let gp = GenericParams::new(f, v).unwrap();
            let val = integrate(&|z| family_pdf(f, &gp, z).unwrap()).map_err(|e| e.to_string())?;
            worst = worst.max((val - 1.0).abs());
            count += 1;
        }
    }
    check(worst <= 1e-7, format!("{count} densities, max |integral - 1| = {worst:.2e}"))
}

fn main() {
    // libtest passes flags such as --nocapture; they have no meaning here.
    let criteria: [Criterion; 11] = [
        ("case-study reproduction", case_study),
        ("parameter proximity", parameter_proximity),
        ("comparison ranking", comparison_ranking),
        ("reduction equivalence", reduction_equivalence),
        ("quantile correctness", quantile_correctness),
        ("moment oracle agreement", moment_oracle),
        ("sampling fidelity", sampling_fidelity),
        ("gradient and Hessian checks", gradient_hessian),
        ("likelihood-ratio ordering", lr_ordering),
        ("simulation trend", simulation_trend),
        ("normalization suite", normalization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
