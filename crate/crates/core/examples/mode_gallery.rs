//! Regenerates every gallery and sheet into a directory.
//!
//! `cargo run --release --example mode_gallery -- [out_dir]`

use kravchuk_fourier::pipeline::figures::{figures, FigureOptions};

fn main() -> kravchuk_fourier::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "gallery_out".into());
    let report = figures(&FigureOptions::new(&out))?;
    println!(
        "{} Cartesian modes  -> {}",
        report.cartesian.modes,
        report.cartesian.sheet.display()
    );
    println!(
        "{} LK modes         -> {}",
        report.laguerre_kravchuk.modes,
        report.laguerre_kravchuk.sheet.display()
    );
    for row in &report.rotations.rows {
        println!(
            "level n={:>2}  λ={}  showing {} of {}",
            row.n,
            row.lambda,
            row.shown.len(),
            row.members
        );
    }
    let g = &report.glyph;
    println!(
        "glyph frames: {}, real range ({:.5}, {:.5})",
        g.frames, g.gray_range.0, g.gray_range.1
    );
    Ok(())
}
