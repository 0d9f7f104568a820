//! Monte Carlo bias/variance/MSE study of the estimators.
//!
//! `cargo run --release --example simulation_study -- [reps] [sizes]`,
//! e.g. `-- 500 25,500` for the full profile.

use std::time::Instant;

use eipld::estimation::FitConfig;
use eipld::simulation::{default_truths, run_study};

fn main() -> eipld::Result<()> {
    let mut args = std::env::args().skip(1);
    let reps: usize = args.next().map_or(100, |s| s.parse().expect("reps"));
    let sizes: Vec<usize> = args
        .next()
        .map_or(vec![25, 200], |s| s.split(',').map(|v| v.parse().expect("size")).collect());
    for truth in default_truths() {
        let start = Instant::now();
        let report = run_study(&truth, &sizes, reps, 2024, &FitConfig::default())?;
        println!("truth {:?}, {reps} replications, {:.1?}", truth.to_array(), start.elapsed());
        print!("{}", report.to_tsv());
    }
    Ok(())
}
