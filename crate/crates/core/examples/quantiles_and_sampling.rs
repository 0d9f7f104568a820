//! Quantiles through the Lambert W function and reproducible sampling.

use eipld::{Params, Probability};

fn main() -> eipld::Result<()> {
    let p = Params::new(1.5, 2.0, 0.8)?;
    for u in [0.01, 0.25, 0.5, 0.75, 0.99] {
        let z = p.quantile(Probability::new(u)?)?;
        println!("Q({u:.2}) = {z:.6}   F(Q) = {:.12}", p.cdf(z)?);
    }
    let draws = p.sample(10_000, 42)?;
    let below = draws.iter().filter(|&&x| x <= p.median().unwrap()).count();
    println!("share of 10000 draws below the median: {:.4}", below as f64 / 1e4);
    println!("first draws: {:?}", &draws[..5]);
    Ok(())
}
