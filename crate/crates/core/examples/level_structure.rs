//! How the modes of an 11×7 screen group into SU(2) multiplets by total
//! mode number.
//!
//! `cargo run --example level_structure`

use kravchuk_fourier::{CartesianBasis, ScreenShape, Spin};

fn main() -> kravchuk_fourier::Result<()> {
    let shape = ScreenShape::new(Spin::from_twice(10), Spin::from_twice(6));
    let basis = CartesianBasis::new(shape);
    println!("screen {}×{}, {} modes", shape.nx(), shape.ny(), shape.mode_count());
    let mut total = 0;
    for level in basis.levels() {
        let members: Vec<String> = level
            .members
            .iter()
            .map(|m| format!("({},{})", m.mode.nx, m.mode.ny))
            .collect();
        println!(
            "  n={:>2}  {:<14} λ={:<3} {}",
            level.n,
            format!("{:?}", shape.interval(level.n)?),
            level.lambda.to_string(),
            members.join(" ")
        );
        total += level.members.len();
    }
    println!("sum of 2λ+1 over levels = {total}");
    Ok(())
}
