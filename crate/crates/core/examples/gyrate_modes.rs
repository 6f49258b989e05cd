//! Gyration of a Cartesian mode: at γ = π/4 it becomes a Laguerre–Kravchuk
//! mode; intermediate angles interpolate.
//!
//! `cargo run --example gyrate_modes`

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use kravchuk_fourier::transforms::{gyrate_coeffs, gyrate_sandwich_coeffs};
use kravchuk_fourier::{CartesianBasis, ModeCoefficients, ModeIndex, ScreenShape};

fn main() -> kravchuk_fourier::Result<()> {
    let basis = CartesianBasis::new(ScreenShape::from_twice(22, 14));
    let start = ModeIndex::new(4, 0);
    let c = ModeCoefficients::delta(basis.shape(), start)?;
    let level = basis.level(start.n())?;
    println!("mode (4,0) lives on level n={} with λ={}", level.n, level.lambda);

    for k in 0..=4 {
        let gamma = k as f64 * PI / 16.0;
        let g = gyrate_coeffs(&basis, &c, gamma)?;
        let weights: Vec<String> = level
            .members
            .iter()
            .map(|m| format!("{:.3}", g.get(m.mode).norm_sqr()))
            .collect();
        let s = gyrate_sandwich_coeffs(&basis, &c, gamma)?;
        println!(
            "γ={k}π/16  |c|² = [{}]  (sandwich diff {:.0e})",
            weights.join(" "),
            g.max_abs_diff(&s)
        );
    }

    // at π/4 the result is a single Laguerre-Kravchuk mode of the level
    let g = gyrate_coeffs(&basis, &c, FRAC_PI_4)?;
    for m in (-4..=4).step_by(2) {
        let lk = basis.lk_coefficients(4, m)?;
        let overlap: Complex64 = g.coeffs().iter().zip(lk.coeffs()).map(|(a, b)| b.conj() * a).sum();
        println!("|<Λ(4,{m:+}), G(π/4)Ψ(4,0)>| = {:.12}", overlap.norm());
    }
    Ok(())
}
