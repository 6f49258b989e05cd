//! Value types for pixel arrays and their Cartesian mode expansions.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{ModeIndex, ScreenShape};

fn check_dims(shape: ScreenShape, found: (usize, usize)) -> Result<()> {
    let expected = (shape.nx(), shape.ny());
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

fn l2_norm(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Complex pixel array on an `N_x × N_y` screen.
///
/// Indexed `[q_x + j_x, q_y + j_y]`; the first axis is horizontal.
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    shape: ScreenShape,
    pixels: Array2<Complex64>,
}

impl Image {
    pub fn new(shape: ScreenShape, pixels: Array2<Complex64>) -> Result<Self> {
        check_dims(shape, pixels.dim())?;
        Ok(Image { shape, pixels })
    }

    pub fn from_real(shape: ScreenShape, pixels: &Array2<f64>) -> Result<Self> {
        Self::new(shape, pixels.mapv(|v| Complex64::new(v, 0.0)))
    }

    pub fn zeros(shape: ScreenShape) -> Self {
        Image {
            shape,
            pixels: Array2::zeros((shape.nx(), shape.ny())),
        }
    }

    pub fn shape(&self) -> ScreenShape {
        self.shape
    }

    pub fn pixels(&self) -> &Array2<Complex64> {
        &self.pixels
    }

    pub fn into_pixels(self) -> Array2<Complex64> {
        self.pixels
    }

    /// Pixel at doubled coordinates `(2q_x, 2q_y)`.
    pub fn at(&self, two_qx: i32, two_qy: i32) -> Option<Complex64> {
        let ix = (two_qx + self.shape.jx().twice() as i32) / 2;
        let iy = (two_qy + self.shape.jy().twice() as i32) / 2;
        if (two_qx + self.shape.jx().twice() as i32) % 2 != 0 || (two_qy + self.shape.jy().twice() as i32) % 2 != 0 {
            return None;
        }
        self.pixels
            .get((usize::try_from(ix).ok()?, usize::try_from(iy).ok()?))
            .copied()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.pixels)
    }

    /// `Σ_q conj(self(q)) · other(q)`.
    pub fn inner(&self, other: &Image) -> Complex64 {
        self.pixels
            .iter()
            .zip(other.pixels.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Image) -> f64 {
        max_abs_diff(&self.pixels, &other.pixels)
    }

    pub fn max_imag(&self) -> f64 {
        self.pixels.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub fn conj(&self) -> Image {
        Image {
            shape: self.shape,
            pixels: self.pixels.mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Image {
        Image {
            shape: self.shape,
            pixels: self.pixels.mapv(|z| z * factor),
        }
    }

    /// The pixel map `(q_x, q_y) → (−q_x, −q_y)`.
    pub fn inverted(&self) -> Image {
        let (nx, ny) = self.pixels.dim();
        Image {
            shape: self.shape,
            pixels: Array2::from_shape_fn((nx, ny), |(i, k)| self.pixels[[nx - 1 - i, ny - 1 - k]]),
        }
    }

    /// Swaps the roles of the two screen axes.
    pub fn transposed(&self) -> Image {
        Image {
            shape: self.shape.transposed(),
            pixels: self.pixels.t().to_owned(),
        }
    }
}

/// Expansion coefficients `F_{n_x, n_y}` in the Cartesian Kravchuk basis,
/// indexed `[n_x, n_y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeCoefficients {
    shape: ScreenShape,
    coeffs: Array2<Complex64>,
}

impl ModeCoefficients {
    pub fn new(shape: ScreenShape, coeffs: Array2<Complex64>) -> Result<Self> {
        check_dims(shape, coeffs.dim())?;
        Ok(ModeCoefficients { shape, coeffs })
    }

    pub fn zeros(shape: ScreenShape) -> Self {
        ModeCoefficients {
            shape,
            coeffs: Array2::zeros((shape.nx(), shape.ny())),
        }
    }

    /// Unit coefficient on a single Cartesian mode.
    pub fn delta(shape: ScreenShape, idx: ModeIndex) -> Result<Self> {
        shape.check_mode(idx)?;
        let mut c = Self::zeros(shape);
        c.coeffs[[idx.nx as usize, idx.ny as usize]] = Complex64::new(1.0, 0.0);
        Ok(c)
    }

    pub fn shape(&self) -> ScreenShape {
        self.shape
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.coeffs
    }

    pub fn get(&self, idx: ModeIndex) -> Complex64 {
        self.coeffs[[idx.nx as usize, idx.ny as usize]]
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.coeffs)
    }

    pub fn max_abs_diff(&self, other: &ModeCoefficients) -> f64 {
        max_abs_diff(&self.coeffs, &other.coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> ModeCoefficients {
        ModeCoefficients {
            shape: self.shape,
            coeffs: self.coeffs.mapv(|z| z * factor),
        }
    }

    pub fn add(&self, other: &ModeCoefficients) -> Result<ModeCoefficients> {
        check_dims(self.shape, other.coeffs.dim())?;
        Ok(ModeCoefficients {
            shape: self.shape,
            coeffs: &self.coeffs + &other.coeffs,
        })
    }
}
