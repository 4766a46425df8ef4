//! Isotropic chart with its dependent coordinates and the residual check.

use superflag::flag;

fn main() -> superflag::Result<()> {
    let ic = flag::isotropic_chart(2, 2, &[(1, 1)])?;
    println!("{}", ic.chart().render());
    for d in ic.chart().dependent() {
        println!("{d:?}");
    }
    println!("Z^ST Gamma Z = 0: {}", ic.is_isotropic()?);
    Ok(())
}
