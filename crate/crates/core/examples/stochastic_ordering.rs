//! Likelihood-ratio ordering: raising theta or beta with the other
//! parameters fixed yields a stochastically larger variable.

use eipld::{lr_order_check, Params};

fn main() -> eipld::Result<()> {
    let grid: Vec<f64> = (0..200).map(|i| (-4.0 + 8.0 * f64::from(i) / 199.0_f64).exp()).collect();
    let base = Params::new(1.3, 1.0, 1.0)?;
    let pairs = [
        ("theta 1 -> 3", base, base.with_theta(3.0)?),
        ("beta 1 -> 2", base, Params::new(1.3, 2.0, 1.0)?),
        ("beta 2 -> 1", Params::new(1.3, 2.0, 1.0)?, base),
    ];
    for (label, p1, p2) in pairs {
        println!("{label}: g2/g1 nondecreasing = {}", lr_order_check(&p1, &p2, &grid)?);
    }
    Ok(())
}
