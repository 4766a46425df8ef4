//! Basis of osp(3|2) with its Gram form, dimension count and a bracket.

use superflag::osp::{self, Flavor};
use superflag::Parity;

fn main() -> superflag::Result<()> {
    let b = osp::basis(Flavor::Odd, 1, 1)?;
    println!("Gamma = {}", b.gram().unwrap().matrix());
    println!(
        "{} even + {} odd (expected {:?})",
        b.count(Parity::Even),
        b.count(Parity::Odd),
        osp::dimension(Flavor::Odd, 1, 1)
    );
    for g in b.generators() {
        println!("{:<10} {}", g.tag.to_string(), g.matrix);
    }
    // two odd generators: the bracket is their anticommutator
    let g = b.generators();
    let (x, y) = (&g[g.len() - 2], &g[g.len() - 1]);
    let br = x.matrix.superbracket(&y.matrix)?;
    println!("[{}, {}] = {br}", x.tag, y.tag);
    let coords = b.coordinates(&br).expect("osp is closed");
    for (c, gen) in coords.iter().zip(g) {
        if !c.is_zero() {
            println!("  {c} * {}", gen.tag);
        }
    }
    Ok(())
}
