//! Kravchuk functions of a 5-point oscillator and their basic identities.
//!
//! `cargo run --example kravchuk_functions`

use kravchuk_fourier::special::{kravchuk_function, kravchuk_table, Spin};

fn main() -> kravchuk_fourier::Result<()> {
    let j = Spin::from_twice(4);
    let table = kravchuk_table(j);

    println!("Ψ_n(q) for j = {j}; rows n, columns q = -2..2");
    for n in 0..=4 {
        let row: Vec<String> = table.row(n).iter().map(|v| format!("{v:+.5}")).collect();
        println!("  n={n}  {}", row.join("  "));
    }

    let gram = table.dot(&table.t());
    let off = gram
        .indexed_iter()
        .map(|((a, b), v)| (v - if a == b { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    println!("orthonormality defect: {off:.1e}");

    // mode n is even or odd under q → −q according to n
    for n in 0..=4 {
        let p = kravchuk_function(j, n, 4)? / kravchuk_function(j, n, -4)?;
        println!("  Ψ_{n}(2) / Ψ_{n}(-2) = {p:+.0}");
    }

    // large spins stay finite and normalized
    let big = kravchuk_table(Spin::from_twice(300));
    let norm: f64 = big.row(150).iter().map(|v| v * v).sum();
    println!("j = 150, n = 150: squared norm {norm:.15}");
    Ok(())
}
