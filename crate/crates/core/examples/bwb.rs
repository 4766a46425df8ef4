//! Highest weights of the isotropy representation and the dominant filter.

use superflag::weights;

fn main() -> superflag::Result<()> {
    for (k1, l1) in [(1, 2), (3, 2)] {
        let rs = weights::root_system(k1 - 1, l1);
        println!("(k1, l1) = ({k1}, {l1})");
        for w in weights::psi_highest_weights(k1, l1) {
            match rs.violating_root(&w)? {
                None => println!("  {w}: dominant"),
                Some(a) => println!("  {w}: pairs negatively with {a}"),
            }
        }
        println!("  H0 fiber: {}", weights::w0_fiber_description(k1, l1)?);
    }
    Ok(())
}
