//! Reading PGM, writing the lossless complex format, and reading it back.
//!
//! `cargo run --example image_files`

use std::f64::consts::FRAC_PI_4;

use kravchuk_fourier::pipeline::io::{load_image, save_complex};
use kravchuk_fourier::transforms::gyrate;
use kravchuk_fourier::CartesianBasis;

fn main() -> kravchuk_fourier::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/glyph_f.pgm");
    let glyph = load_image(path.as_ref(), None)?;
    let shape = glyph.shape();
    println!(
        "{}×{} pixels, j = ({}, {})",
        shape.nx(),
        shape.ny(),
        shape.jx(),
        shape.jy()
    );

    // a gyrated image is complex; PGM would keep only one channel
    let g = gyrate(&CartesianBasis::new(shape), &glyph, FRAC_PI_4)?;
    let dir = std::env::temp_dir().join("kfourier_image_files");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let file = dir.join("gyrated.fk");
    save_complex(&file, &g)?;
    let back = load_image(&file, None)?;
    let identical = back
        .pixels()
        .iter()
        .zip(g.pixels())
        .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits());
    println!(
        "{} bytes, bit-identical after reload: {identical}",
        std::fs::metadata(&file).map(|m| m.len()).unwrap_or(0)
    );
    Ok(())
}
