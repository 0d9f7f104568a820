//! Density, CDF, hazard and reversed hazard on a grid, as tab-separated
//! columns ready for plotting.

use eipld::Params;

fn main() -> eipld::Result<()> {
    let shapes = [(1.0, 1.0, 0.5), (1.0, 1.0, 2.0), (2.0, 3.0, 1.5)];
    println!("alpha\tbeta\ttheta\tz\tpdf\tcdf\thazard\trevhazard");
    for (a, b, t) in shapes {
        let p = Params::new(a, b, t)?;
        for i in 1..=40 {
            let z = 0.1 * f64::from(i);
            println!(
                "{a}\t{b}\t{t}\t{z:.1}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}",
                p.pdf(z)?,
                p.cdf(z)?,
                p.hazard(z)?,
                p.reversed_hazard(z)?
            );
        }
    }
    Ok(())
}
