//! Laguerre–Kravchuk modes on the 11×7 screen: conjugation symmetry,
//! realness of m = 0, and orthonormality.
//!
//! `cargo run --example laguerre_kravchuk`

use kravchuk_fourier::pipeline::verify::{lk_conjugation_defect, lk_gram_defect};
use kravchuk_fourier::{CartesianBasis, ScreenShape};

fn main() -> kravchuk_fourier::Result<()> {
    let basis = CartesianBasis::new(ScreenShape::from_twice(10, 6));
    let labels = basis.lk_labels();
    println!("{} Laguerre-Kravchuk modes", labels.len());

    for (n, m) in [(0, 0), (2, 0), (4, 2), (4, 0), (10, -4)] {
        let mode = basis.lk_mode(n, m)?;
        let peak = mode.pixels().iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "  Λ({n},{m:+}): norm {:.12}, peak |Λ| {peak:.4}, max |Im| {:.1e}",
            mode.norm(),
            mode.max_imag()
        );
    }
    println!("max |Λ(n,-m) - Λ(n,m)*| = {:.1e}", lk_conjugation_defect(&basis)?);
    println!("Gram and completeness defect = {:.1e}", lk_gram_defect(&basis)?);
    Ok(())
}
