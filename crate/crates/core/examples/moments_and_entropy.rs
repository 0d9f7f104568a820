//! Raw moments (quadrature and series), the truncated formal MGF, and
//! Rényi/Shannon entropies.

use eipld::Params;

fn main() -> eipld::Result<()> {
    let p = Params::new(5.0, 1.0, 2.0)?;
    for r in 1..=4 {
        println!(
            "E[Z^{r}]: quadrature {:.12}, series {:.12}",
            p.raw_moment(r)?,
            p.raw_moment_series(r, 64, 1e-15)?
        );
    }
    match p.raw_moment(5) {
        Err(e) => println!("E[Z^5]: {e}"),
        Ok(v) => println!("E[Z^5] = {v}"),
    }
    println!("formal MGF at t = -0.1 (5 terms): {:.8}", p.mgf_formal(-0.1, 5)?);
    println!("Shannon entropy: {:.8}", p.shannon_entropy()?);
    for g in [0.5, 2.0, 3.0] {
        println!("Renyi entropy, order {g}: {:.8}", p.renyi_entropy(g)?);
    }
    println!("Renyi order 2 by series: {:.8}", p.renyi_entropy_series(2.0)?);
    Ok(())
}
