//! Coordinate chart of a flag supermanifold and the group action on it.

use superflag::flag::{self, FlagType, IndexSets};
use superflag::{BlockShape, SuperMatrix};

fn main() -> superflag::Result<()> {
    let ft = FlagType::new(vec![3, 1], vec![2, 1])?;
    let index = IndexSets::new(vec![(vec![2], vec![2])])?;
    let chart = flag::build_chart(&ft, &index)?;
    println!("{ft}  {index}  dimension {:?}", ft.dimension());
    println!("{}", chart.render());

    let shape = BlockShape::new(3, 2);
    let l = SuperMatrix::parse(
        "1, 0, 1, 0, 0; 0, 2, 0, 0, 0; 0, 0, 1, 0, 0; 0, 0, 0, 1, 3; 0, 0, 0, 0, 1",
        shape.clone(),
        shape,
        Some(chart.context()),
    )?;
    let moved = flag::act(&l, &chart, None)?;
    println!("after L:\n{}", moved.render());
    Ok(())
}
