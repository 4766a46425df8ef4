//! Membership test M^ST Γ + Γ M = 0 for numeric and symbolic matrices.

use superflag::osp::{self, Flavor};
use superflag::{BlockShape, Parity, RingContext, SuperMatrix};

fn main() -> superflag::Result<()> {
    let gram = osp::gram_form(Flavor::Odd, 0, 1)?;
    let shape = BlockShape::new(1, 2);
    for text in ["0, 0, 0; 0, 1, 0; 0, 0, -1", "1, 0, 0; 0, 0, 0; 0, 0, 0"] {
        let m = SuperMatrix::parse(text, shape.clone(), shape.clone(), None)?;
        println!("{text:<28} member: {}", osp::is_member(&m, &gram)?);
    }
    // an odd element with Grassmann coefficients
    let ctx = RingContext::new(&[("a", Parity::Even), ("b", Parity::Even)])?;
    let m = SuperMatrix::parse(
        "0, a, b; -b, 0, 0; a, 0, 0",
        shape.clone(),
        shape,
        Some(&ctx),
    )?;
    println!(
        "symbolic odd element member: {}",
        osp::is_member(&m, &gram)?
    );
    Ok(())
}
