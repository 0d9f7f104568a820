//! Fit the EIPLD model to the built-in repair-times sample and print
//! estimates, Wald intervals and fit statistics.

use eipld::competitors::Family;
use eipld::data::repair_times;
use eipld::estimation::{fit_mle, FitConfig};
use eipld::model_selection::{aic, bic, ks_statistic};

fn main() -> eipld::Result<()> {
    let data = repair_times();
    let fit = fit_mle(Family::Eipld, &data, &FitConfig::default())?;
    for (i, name) in Family::Eipld.param_names().iter().enumerate() {
        let est = fit.estimates.values()[i];
        match &fit.ci {
            Some(ci) => println!("{name:>6} = {est:.6}  95% CI [{:.6}, {:.6}]", ci[i].lower, ci[i].upper),
            None => println!("{name:>6} = {est:.6}"),
        }
    }
    let nll = fit.neg_log_lik();
    println!("-logL = {nll:.4}");
    println!("AIC   = {:.3}", aic(nll, 3));
    println!("BIC   = {:.3}", bic(nll, 3, data.n()));
    println!("KS    = {:.5}", ks_statistic(Family::Eipld, &fit.estimates, &data)?);
    println!("converged = {}, at_bound = {}", fit.converged, fit.at_bound);
    Ok(())
}
