//! Two odd-block elements whose bracket leaves the image of the smaller
//! orthosymplectic algebra.

use superflag::suites;

fn main() -> superflag::Result<()> {
    let w = suites::imp_witness(2, 1)?;
    println!("X     = {}", w.first);
    println!("Y     = {}", w.second);
    println!("[X,Y] = {}", w.bracket);
    println!("{}", suites::suite_imp_witness(2, 1)?);
    Ok(())
}
