//! Wigner little-d matrices and their π/2 link to the Kravchuk functions.
//!
//! `cargo run --example little_d`

use std::f64::consts::FRAC_PI_2;

use kravchuk_fourier::special::{kravchuk_table, little_d_entry, wigner_little_d, Spin};

fn main() -> kravchuk_fourier::Result<()> {
    let half = Spin::from_twice(1);
    let d = wigner_little_d(half, 0.6);
    println!("d^(1/2)(0.6), rows μ = 1/2, -1/2:");
    for row in d.entries().rows() {
        println!("  {:+.6} {:+.6}", row[0], row[1]);
    }
    println!("  cos 0.3 = {:.6}, sin 0.3 = {:.6}", 0.3f64.cos(), 0.3f64.sin());

    // the coupling recursion against the closed-form sum
    let l = Spin::from_twice(9);
    let d = wigner_little_d(l, 1.1);
    let mut worst: f64 = 0.0;
    for (a, two_mu) in (-9..=9).rev().step_by(2).enumerate() {
        for (b, two_nu) in (-9..=9).rev().step_by(2).enumerate() {
            worst = worst.max((d.entries()[[a, b]] - little_d_entry(l, two_mu, two_nu, 1.1)?).abs());
        }
    }
    println!("λ = 9/2: recursion vs closed form, max diff {worst:.1e}");

    // at β = π/2 the rows are Kravchuk functions, n = λ + μ
    let j = Spin::from_twice(12);
    let d = wigner_little_d(j, FRAC_PI_2);
    let psi = kravchuk_table(j);
    let mut gap: f64 = 0.0;
    for n in 0..=12 {
        for s in 0..=12 {
            gap = gap.max((d.entries()[[12 - n, 12 - s]] - psi[[n, s]]).abs());
        }
    }
    println!("j = 6: |d(π/2) - Ψ| ≤ {gap:.1e}");
    Ok(())
}
