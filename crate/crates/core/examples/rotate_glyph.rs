//! Rotates the bundled `F` glyph in steps of π/6 and writes each frame.
//!
//! `cargo run --example rotate_glyph -- [out_dir]`

use std::f64::consts::PI;
use std::path::PathBuf;

use kravchuk_fourier::pipeline::figures::glyph_f;
use kravchuk_fourier::pipeline::render::{render, RenderSpec};
use kravchuk_fourier::transforms::{analyze, rotate, rotate_coeffs, synthesize};
use kravchuk_fourier::CartesianBasis;

fn main() -> kravchuk_fourier::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "rotate_glyph_out".into()));
    std::fs::create_dir_all(&out).expect("output directory");

    let glyph = glyph_f();
    let basis = CartesianBasis::new(glyph.shape());
    let mut c = analyze(&basis, &glyph)?;
    for k in 1..=6 {
        c = rotate_coeffs(&basis, &c, PI / 6.0)?;
        let frame = synthesize(&basis, &c)?;
        let (lo, hi) = RenderSpec::ADAPTIVE.range(&frame);
        println!("k={k}: norm {:.12}, real range ({lo:+.4}, {hi:+.4})", frame.norm());
        render(&frame, &RenderSpec::ADAPTIVE, &out.join(format!("glyph_{k}.pgm")))?;
    }

    let once = rotate(&basis, &glyph, PI)?;
    println!(
        "six steps vs one half turn: {:.1e}",
        synthesize(&basis, &c)?.max_abs_diff(&once)
    );
    println!(
        "half turn vs pixel inversion: {:.3}",
        once.max_abs_diff(&glyph.inverted())
    );
    println!("frames in {}", out.display());
    Ok(())
}
