//! Densities of order statistics and a check that each integrates to one.

use eipld::special::integrate_positive_halfline;
use eipld::Params;

fn main() -> eipld::Result<()> {
    let p = Params::new(1.2, 2.0, 1.5)?;
    let n = 5;
    for k in 1..=n {
        let total = integrate_positive_halfline(|z| p.order_stat_pdf(z, k, n).unwrap(), 1e-10)?;
        let peak = (1..=400)
            .map(|i| 0.02 * f64::from(i))
            .max_by(|a, b| {
                let fa = p.order_stat_pdf(*a, k, n).unwrap();
                let fb = p.order_stat_pdf(*b, k, n).unwrap();
                fa.total_cmp(&fb)
            })
            .unwrap();
        println!("k = {k} of {n}: integral {:.10}, mode near z = {peak:.2}", total.value);
    }
    Ok(())
}
