//! Fundamental vector fields of osp(3|2) on the isotropic chart with
//! (k1, l1) = (2, 1) and a one-step tail.

use superflag::flag;
use superflag::osp::{self, Flavor};
use superflag::suites;

fn main() -> superflag::Result<()> {
    let (k1, l1) = (2, 1);
    let ic = flag::isotropic_chart(k1, l1, &suites::default_tail(k1, l1))?;
    for g in osp::basis(Flavor::Odd, k1 - 1, l1)?.generators() {
        let f = flag::fundamental_field(&g.matrix, ic.chart())?;
        println!("{:<10} {}", g.tag.to_string(), f.derivation);
    }
    let h = flag::fundamental_field(&suites::h_generator(k1, l1, 1)?, ic.chart())?;
    println!("h_1 = {}", h.derivation);
    Ok(())
}
