//! Gray-level rendering of complex images and contact sheets.

use std::f64::consts::PI;
use std::path::Path;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::Result;
use crate::field::Image;
use crate::pipeline::io::{write_pgm, FileFormat, GrayImage};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scaling {
    /// `lo` maps to black and `hi` to white; values outside are clipped.
    Fixed { lo: f64, hi: f64 },
    /// Smallest value to black, largest to white; a constant image renders
    /// mid-gray.
    Adaptive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitDepth {
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn maxval(self) -> u16 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Real,
    Imag,
    Abs,
    /// Argument wrapped to `[−π, π)`, always on the fixed range `(−π, π)`.
    Phase,
}

impl Channel {
    pub fn of(self, z: Complex64) -> f64 {
        match self {
            Channel::Real => z.re,
            Channel::Imag => z.im,
            Channel::Abs => z.norm(),
            Channel::Phase => {
                let a = z.arg();
                // arg returns (−π, π]; move π to −π
                if a >= PI {
                    -PI
                } else {
                    a
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSpec {
    pub scaling: Scaling,
    pub depth: BitDepth,
    pub channel: Channel,
}

impl RenderSpec {
    /// The mode-gallery convention: real part, `(−1, 1)` to black–white.
    pub const GALLERY: RenderSpec = RenderSpec {
        scaling: Scaling::Fixed { lo: -1.0, hi: 1.0 },
        depth: BitDepth::Eight,
        channel: Channel::Real,
    };

    pub const ADAPTIVE: RenderSpec = RenderSpec {
        scaling: Scaling::Adaptive,
        depth: BitDepth::Eight,
        channel: Channel::Real,
    };

    pub fn with_channel(self, channel: Channel) -> Self {
        RenderSpec { channel, ..self }
    }

    pub fn with_scaling(self, scaling: Scaling) -> Self {
        RenderSpec { scaling, ..self }
    }

    /// The `(lo, hi)` range that maps to black and white for this image.
    pub fn range(&self, image: &Image) -> (f64, f64) {
        if self.channel == Channel::Phase {
            return (-PI, PI);
        }
        match self.scaling {
            Scaling::Fixed { lo, hi } => (lo, hi),
            Scaling::Adaptive => image
                .pixels()
                .iter()
                .map(|&z| self.channel.of(z))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v))),
        }
    }
}

/// Renders an image to gray levels, screen-oriented (`+q_y` up).
pub fn render_gray(image: &Image, spec: &RenderSpec) -> GrayImage {
    let maxval = spec.depth.maxval();
    let m = f64::from(maxval);
    let (lo, hi) = spec.range(image);
    let (nx, ny) = image.pixels().dim();
    let degenerate = !(hi - lo > f64::EPSILON * lo.abs().max(hi.abs()).max(1e-300));
    let gray = Array2::from_shape_fn((nx, ny), |(x, y)| {
        if degenerate {
            return maxval.div_ceil(2);
        }
        let v = spec.channel.of(image.pixels()[[x, ny - 1 - y]]);
        let t = ((v - lo) / (hi - lo)).clamp(0.0, 1.0);
        (t * m).round() as u16
    });
    GrayImage { maxval, gray }
}

pub fn render(image: &Image, spec: &RenderSpec, path: &Path) -> Result<()> {
    write_pgm(path, &render_gray(image, spec), FileFormat::PgmBinary)
}

/// Grid of tiles on a uniform background.
#[derive(Clone, Debug)]
pub struct ContactSheet {
    sheet: GrayImage,
    zoom: usize,
}

impl ContactSheet {
    pub fn new(width: usize, height: usize, maxval: u16, background: u16, zoom: usize) -> Self {
        ContactSheet {
            sheet: GrayImage {
                maxval,
                gray: Array2::from_elem((width, height), background),
            },
            zoom: zoom.max(1),
        }
    }

    /// Pastes a tile with its top-left corner at `(x0, y0)`, enlarged by
    /// the sheet's zoom. Parts outside the sheet are dropped.
    pub fn place(&mut self, tile: &GrayImage, x0: usize, y0: usize) {
        let z = self.zoom;
        let (w, h) = self.sheet.gray.dim();
        for ((tx, ty), &v) in tile.gray.indexed_iter() {
            for dx in 0..z {
                for dy in 0..z {
                    let (x, y) = (x0 + tx * z + dx, y0 + ty * z + dy);
                    if x < w && y < h {
                        self.sheet.gray[[x, y]] = v;
                    }
                }
            }
        }
    }

    pub fn zoom(&self) -> usize {
        self.zoom
    }

    pub fn gray(&self) -> &GrayImage {
        &self.sheet
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_pgm(path, &self.sheet, FileFormat::PgmBinary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{CartesianBasis, ModeIndex, ScreenShape};

    #[test]
    fn ground_mode_is_brighter_than_mid_gray() {
        let b = CartesianBasis::new(ScreenShape::from_twice(10, 6));
        // the corner values are ~0.004, so 8 bits would round them to mid-gray
        let spec = RenderSpec {
            depth: BitDepth::Sixteen,
            ..RenderSpec::GALLERY
        };
        let g = render_gray(&b.cartesian_mode(ModeIndex::new(0, 0)).unwrap(), &spec);
        assert!(g.gray.iter().all(|&v| f64::from(v) > 65535.0 / 2.0));
    }

    #[test]
    fn constant_image_is_mid_gray() {
        let shape = ScreenShape::from_twice(2, 2);
        for c in [0.0, 0.7, -3.0] {
            let img = Image::new(shape, Array2::from_elem((3, 3), Complex64::new(c, 0.0))).unwrap();
            let g = render_gray(&img, &RenderSpec::ADAPTIVE);
            assert!(g.gray.iter().all(|&v| v == 128));
            let g16 = render_gray(
                &img,
                &RenderSpec {
                    depth: BitDepth::Sixteen,
                    ..RenderSpec::ADAPTIVE
                },
            );
            assert!(g16.gray.iter().all(|&v| v == 32768));
        }
    }

    #[test]
    fn adaptive_hits_both_ends() {
        let shape = ScreenShape::from_twice(2, 1);
        let px = Array2::from_shape_fn((3, 2), |(i, k)| Complex64::new(i as f64 - k as f64 * 0.3, 0.0));
        let g = render_gray(&Image::new(shape, px).unwrap(), &RenderSpec::ADAPTIVE);
        assert_eq!(*g.gray.iter().min().unwrap(), 0);
        assert_eq!(*g.gray.iter().max().unwrap(), 255);
        // top row holds iy = 1
        assert_eq!(g.gray[[0, 0]], 0);
    }

    #[test]
    fn phase_wraps_into_half_open_range() {
        assert_eq!(Channel::Phase.of(Complex64::new(-1.0, 0.0)), -PI);
        let shape = ScreenShape::from_twice(0, 0);
        let img = Image::new(shape, Array2::from_elem((1, 1), Complex64::new(-1.0, 0.0))).unwrap();
        let spec = RenderSpec::ADAPTIVE.with_channel(Channel::Phase);
        assert_eq!(render_gray(&img, &spec).gray[[0, 0]], 0);
        let img = Image::new(shape, Array2::from_elem((1, 1), Complex64::new(0.0, 1.0))).unwrap();
        assert_eq!(render_gray(&img, &spec).gray[[0, 0]], 191);
    }

    #[test]
    fn sheet_places_zoomed_tiles() {
        let mut s = ContactSheet::new(10, 10, 255, 0, 2);
        let tile = GrayImage {
            maxval: 255,
            gray: Array2::from_elem((2, 1), 200),
        };
        s.place(&tile, 8, 9);
        assert_eq!(s.gray().gray[[9, 9]], 200);
        assert_eq!(s.gray().gray[[7, 9]], 0);
    }
}
