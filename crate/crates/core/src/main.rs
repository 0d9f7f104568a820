use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eipld::competitors::Family;
use eipld::data::{ingest, BUILTIN_REPAIR_TIMES};
use eipld::estimation::{fit_mle, FitConfig};
use eipld::model_selection::{aic, bic, compare, ks_statistic, to_json, to_tsv};
use eipld::simulation::{run_study, PARAM_NAMES};
use eipld::{Error, Params, Probability};

/// Exponentiated inverse power Lindley distribution toolkit.
#[derive(Parser)]
#[command(name = "eipld", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    Pdf,
    Cdf,
    Hazard,
    Revhazard,
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    theta: f64,
}

impl ParamArgs {
    fn params(&self) -> eipld::Result<Params> {
        Params::new(self.alpha, self.beta, self.theta)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fit one family by maximum likelihood.
    Fit {
        #[arg(long, default_value = BUILTIN_REPAIR_TIMES)]
        data: String,
        #[arg(long, default_value = "eipld")]
        family: String,
        #[arg(long)]
        ci_level: Option<f64>,
        /// TOML file with optimizer settings.
        #[arg(long)]
        config: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Fit several families and rank them by AIC.
    Compare {
        #[arg(long, default_value = BUILTIN_REPAIR_TIMES)]
        data: String,
        /// `all` or a comma-separated list of family tags.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long)]
        config: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Draw a seeded random sample, one value per line.
    Sample {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Inverse CDF at one or more probabilities.
    Quantile {
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<f64>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Two-column `z value` text for plotting.
    Curve {
        #[arg(long, value_enum)]
        what: Curve,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0.01)]
        zmin: f64,
        #[arg(long, default_value_t = 10.0)]
        zmax: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Bias, variance and MSE of the estimators over repeated samples.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_delimiter = ',', default_value = "25,50,100,200,300,500")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 500)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        config: Option<String>,
        #[arg(long, value_enum, default_value = "tsv")]
        out: Output,
    },
}

/// `v` to `digits` significant digits.
fn sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..=6).contains(&mag) {
        return format!("{:.*e}", digits - 1, v);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

fn load_config(path: Option<&str>) -> eipld::Result<FitConfig> {
    path.map_or_else(|| Ok(FitConfig::default()), FitConfig::from_file)
}

fn parse_families(spec: &str) -> eipld::Result<Vec<Family>> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(Family::COMPARISON.to_vec());
    }
    spec.split(',').map(str::parse).collect()
}

fn to_json_string(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn run(cmd: Command) -> eipld::Result<String> {
    match cmd {
        Command::Fit {
            data,
            family,
            ci_level,
            config,
            out,
        } => {
            let family: Family = family.parse()?;
            let mut cfg = load_config(config.as_deref())?;
            if let Some(level) = ci_level {
                cfg.ci_level = level;
            }
            let data = ingest(&data)?;
            let fit = fit_mle(family, &data, &cfg)?;
            let q = family.n_params();
            let nll = fit.neg_log_lik();
            let ks = ks_statistic(family, &fit.estimates, &data)?;
            let names = family.param_names();
            match out {
                Output::Json => {
                    let estimates: serde_json::Map<_, _> = names
                        .iter()
                        .zip(fit.estimates.values())
                        .map(|(k, v)| (k.to_string(), json!(v)))
                        .collect();
                    Ok(to_json_string(&json!({
                        "family": family,
                        "data": data.label(),
                        "n": data.n(),
                        "estimates": estimates,
                        "log_lik": fit.log_lik,
                        "neg_log_lik": nll,
                        "aic": aic(nll, q),
                        "bic": bic(nll, q, data.n()),
                        "ks": ks,
                        "score": fit.score_at_mle,
                        "info": fit.info,
                        "vcov": fit.vcov,
                        "ci_level": fit.ci_level,
                        "ci": fit.ci,
                        "converged": fit.converged,
                        "at_bound": fit.at_bound,
                        "n_restarts_used": fit.n_restarts_used,
                    })))
                }
                _ => {
                    let mut s = format!("{} fit to {} (n = {})\n", family.name(), data.label(), data.n());
                    s += &format!("{:<8}{:>12}{:>12}{:>12}\n", "param", "estimate", "lower", "upper");
                    for (i, name) in names.iter().enumerate() {
                        let est = fit.estimates.values()[i];
                        let (lo, hi) = fit
                            .ci
                            .as_ref()
                            .map(|c| (sig(c[i].lower, 5), sig(c[i].upper, 5)))
                            .unwrap_or_else(|| ("-".into(), "-".into()));
                        s += &format!("{name:<8}{:>12}{lo:>12}{hi:>12}\n", sig(est, 5));
                    }
                    s += &format!(
                        "-logL {}  AIC {}  BIC {}  KS {}\nconverged {}  at_bound {}\n",
                        sig(nll, 5),
                        sig(aic(nll, q), 5),
                        sig(bic(nll, q, data.n()), 5),
                        sig(ks, 4),
                        fit.converged,
                        fit.at_bound
                    );
                    Ok(s)
                }
            }
        }
        Command::Compare {
            data,
            families,
            config,
            out,
        } => {
            let cfg = load_config(config.as_deref())?;
            let data = ingest(&data)?;
            let rows = compare(&data, &parse_families(&families)?, &cfg)?;
            match out {
                Output::Json => to_json(&rows),
                Output::Tsv => Ok(to_tsv(&rows)),
                Output::Text => {
                    let mut s = format!(
                        "{:<6}{:>3}{:>11}{:>11}{:>11}{:>9}  {}\n",
                        "model", "q", "-logL", "AIC", "BIC", "KS", "params"
                    );
                    for r in &rows {
                        if let Some(e) = &r.error {
                            s += &format!("{:<6}{:>3}  fit failed: {e}\n", r.family.tag(), r.q);
                            continue;
                        }
                        let params: Vec<String> = r.params.iter().map(|v| sig(*v, 5)).collect();
                        let flag = if r.at_bound { " (at bound)" } else { "" };
                        s += &format!(
                            "{:<6}{:>3}{:>11}{:>11}{:>11}{:>9}  {}{}\n",
                            r.family.tag(),
                            r.q,
                            sig(r.neg_log_lik, 5),
                            sig(r.aic, 5),
                            sig(r.bic, 5),
                            sig(r.ks, 4),
                            params.join(", "),
                            flag
                        );
                    }
                    Ok(s)
                }
            }
        }
        Command::Sample { n, params, seed } => {
            let xs = params.params()?.sample(n, seed)?;
            Ok(xs.iter().map(|x| format!("{x:?}\n")).collect())
        }
        Command::Quantile { u, params } => {
            let p = params.params()?;
            u.iter()
                .map(|&u| Ok(format!("{:?}\n", p.quantile(Probability::new(u)?)?)))
                .collect()
        }
        Command::Curve {
            what,
            params,
            zmin,
            zmax,
            points,
        } => {
            let p = params.params()?;
            if !(zmin > 0.0 && zmax > zmin && zmax.is_finite()) || points < 2 {
                return Err(Error::Domain {
                    op: "curve",
                    detail: "need 0 < zmin < zmax and points >= 2".into(),
                });
            }
            let mut s = String::new();
            for i in 0..points {
                let z = zmin + (zmax - zmin) * i as f64 / (points - 1) as f64;
                let v = match what {
                    Curve::Pdf => p.pdf(z),
                    Curve::Cdf => p.cdf(z),
                    Curve::Hazard => p.hazard(z),
                    Curve::Revhazard => p.reversed_hazard(z),
                };
                match v {
                    Ok(v) => s += &format!("{z:?}\t{v:?}\n"),
                    Err(Error::Numeric { .. }) => s += &format!("{z:?}\tnan\n"),
                    Err(e) => return Err(e),
                }
            }
            Ok(s)
        }
        Command::Simulate {
            params,
            sizes,
            reps,
            seed,
            config,
            out,
        } => {
            let cfg = load_config(config.as_deref())?;
            let report = run_study(&params.params()?, &sizes, reps, seed, &cfg)?;
            match out {
                Output::Json => report.to_json(),
                Output::Tsv => Ok(report.to_tsv()),
                Output::Text => {
                    let mut s = format!(
                        "{:>6} {:<6}{:>12}{:>12}{:>12}{:>12}{:>9}\n",
                        "n", "param", "mean", "bias", "variance", "mse", "failed"
                    );
                    for &n in &report.sizes {
                        for name in PARAM_NAMES {
                            let r = report.row(n, name).expect("row exists");
                            s += &format!(
                                "{:>6} {:<6}{:>12}{:>12}{:>12}{:>12}{:>9}\n",
                                n,
                                name,
                                sig(r.mean, 5),
                                sig(r.bias, 5),
                                sig(r.variance, 5),
                                sig(r.mse, 5),
                                r.failures
                            );
                        }
                    }
                    Ok(s)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
