//! Grassmann-valued supermatrices: products, supertranspose and inversion.

use superflag::{BlockShape, Parity, RingContext, SuperMatrix};

fn main() -> superflag::Result<()> {
    let ctx = RingContext::new(&[("x", Parity::Even), ("t", Parity::Odd), ("u", Parity::Odd)])?;
    let (x, t, u) = (
        ctx.var("x")?.poly(),
        ctx.var("t")?.poly(),
        ctx.var("u")?.poly(),
    );
    println!("t*u = {}, u*t = {}, t*t = {}", &t * &u, &u * &t, &t * &t);
    println!(
        "d/dt (t*u*x) = {}",
        (&(&t * &u) * &x).left_derivative(&ctx.var("t")?)?
    );

    // 1|1 matrix with a nilpotent correction
    let shape = BlockShape::new(1, 1);
    let m = SuperMatrix::parse("2 + t*u, t; u, 1", shape.clone(), shape, Some(&ctx))?;
    let inv = m.invert()?;
    println!("M      = {m}");
    println!("M^-1   = {inv}");
    println!("M M^-1 = {}", m.try_mul(&inv)?);
    println!("M^ST   = {}", m.supertranspose()?);
    Ok(())
}
