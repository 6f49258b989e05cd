//! Composing and inverting Fourier-group elements, on parameters and on an
//! image.
//!
//! `cargo run --example fourier_group`

use std::f64::consts::PI;

use kravchuk_fourier::pipeline::verify::random_image;
use kravchuk_fourier::transforms::apply_element;
use kravchuk_fourier::{CartesianBasis, FourierGroupElement, ScreenShape};
use rand::SeedableRng;

fn main() -> kravchuk_fourier::Result<()> {
    let a = FourierGroupElement::new(0.4, PI / 3.0, 1.2, 0.25);
    let b = FourierGroupElement::new(2.0, 0.1, 2.5, PI);
    let ab = a.compose(&b);
    println!("a∘b   = {}", serde_json::to_string(&ab).unwrap());
    println!("a⁻¹   = {}", serde_json::to_string(&a.inverse()).unwrap());
    println!(
        "det U(a) = {:.6}, e^(-iχ) = {:.6}",
        a.to_matrix().det(),
        num_complex::Complex64::from_polar(1.0, -0.4)
    );

    let back = FourierGroupElement::from_matrix(&a.to_matrix())?;
    println!("a from its matrix: distance {:.1e}", back.distance(&a));

    let basis = CartesianBasis::new(ScreenShape::from_twice(10, 6));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let img = random_image(basis.shape(), &mut rng);
    let seq = apply_element(&basis, &apply_element(&basis, &img, &b)?, &a)?;
    let once = apply_element(&basis, &img, &ab)?;
    println!("D(a)D(b) vs D(a∘b) on an image: {:.1e}", seq.max_abs_diff(&once));
    let undo = apply_element(&basis, &once, &ab.inverse())?;
    println!("undo with the inverse: {:.1e}", undo.max_abs_diff(&img));
    Ok(())
}
