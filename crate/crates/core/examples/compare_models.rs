//! Rank the candidate lifetime families on the repair-times sample.

use eipld::competitors::Family;
use eipld::data::repair_times;
use eipld::estimation::FitConfig;
use eipld::model_selection::compare;

fn main() -> eipld::Result<()> {
    let rows = compare(&repair_times(), &Family::COMPARISON, &FitConfig::default())?;
    println!("{:<6} {:>9} {:>9} {:>9} {:>8}", "model", "-logL", "AIC", "BIC", "KS");
    for r in rows {
        println!(
            "{:<6} {:>9.4} {:>9.3} {:>9.3} {:>8.5}{}",
            r.family.tag(),
            r.neg_log_lik,
            r.aic,
            r.bic,
            r.ks,
            if r.at_bound { "  (at bound)" } else { "" }
        );
    }
    Ok(())
}
