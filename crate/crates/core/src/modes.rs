//! Two-dimensional Cartesian Kravchuk modes on a rectangular screen, their
//! arrangement into SU(2) multiplets by total mode number, and the
//! Laguerre–Kravchuk modes obtained by gyrating each multiplet by π/4.
//!
//! # Levels
//!
//! Modes `Ψ_{n_x,n_y}` with the same total mode `n = n_x + n_y` form a
//! multiplet of effective spin `λ(n)`. With `j_min = min(j_x, j_y)` and
//! `j_max = max(j_x, j_y)` the rhomboid of modes splits into three intervals:
//!
//! | interval        | range                       | `λ(n)`              | `2μ`                              |
//! |-----------------|-----------------------------|---------------------|-----------------------------------|
//! | lower triangle  | `0 ≤ n ≤ 2j_min`            | `n/2`               | `n_x − n_y`                       |
//! | mid rhomboid    | `2j_min < n < 2j_max`       | `j_min`             | `2j_y − 2n_y` (or `2n_x − 2j_x`)  |
//! | upper triangle  | `2j_max ≤ n ≤ 2(j_x + j_y)` | `j_x + j_y − n/2`   | `n_x − n_y − 2j_x + 2j_y`         |
//!
//! In the mid rhomboid the projection is counted from the shorter axis; the
//! bracketed form applies when `j_x < j_y`. Both boundary levels belong to
//! the triangles. Within a level `μ` increases with `n_x`, and members are
//! stored in order of descending `μ` (ascending `n_y`).

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Image, ModeCoefficients};
use crate::special::{kravchuk_table, wigner_little_d, Spin};

/// Rectangular screen of `(2j_x + 1) × (2j_y + 1)` pixels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScreenShape {
    jx: Spin,
    jy: Spin,
}

impl ScreenShape {
    pub const fn new(jx: Spin, jy: Spin) -> Self {
        ScreenShape { jx, jy }
    }

    pub const fn from_twice(two_jx: u32, two_jy: u32) -> Self {
        ScreenShape::new(Spin::from_twice(two_jx), Spin::from_twice(two_jy))
    }

    /// Screen with the given pixel counts (any positive size, even or odd).
    pub fn from_pixels(nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::domain(format!("screen {nx}x{ny} has no pixels")));
        }
        let twice = |n: usize| u32::try_from(n - 1).map_err(|_| Error::domain(format!("dimension {n} too large")));
        Ok(Self::from_twice(twice(nx)?, twice(ny)?))
    }

    pub fn jx(self) -> Spin {
        self.jx
    }

    pub fn jy(self) -> Spin {
        self.jy
    }

    pub fn nx(self) -> usize {
        self.jx.dim()
    }

    pub fn ny(self) -> usize {
        self.jy.dim()
    }

    pub fn mode_count(self) -> usize {
        self.nx() * self.ny()
    }

    /// Largest total mode number `2(j_x + j_y)`.
    pub fn max_level(self) -> u32 {
        self.jx.twice() + self.jy.twice()
    }

    pub fn transposed(self) -> Self {
        ScreenShape::new(self.jy, self.jx)
    }

    pub fn check_mode(self, idx: ModeIndex) -> Result<()> {
        if idx.nx > self.jx.twice() || idx.ny > self.jy.twice() {
            return Err(Error::domain(format!(
                "mode ({}, {}) outside screen with 2j = ({}, {})",
                idx.nx,
                idx.ny,
                self.jx.twice(),
                self.jy.twice()
            )));
        }
        Ok(())
    }

    /// Which of the three intervals level `n` is adjudicated to.
    pub fn interval(self, n: u32) -> Result<LevelInterval> {
        if n > self.max_level() {
            return Err(Error::domain(format!("level {n} outside 0..={}", self.max_level())));
        }
        let two_min = self.jx.twice().min(self.jy.twice());
        let two_max = self.jx.twice().max(self.jy.twice());
        Ok(if n <= two_min {
            LevelInterval::LowerTriangle
        } else if n < two_max {
            LevelInterval::MidRhomboid
        } else {
            LevelInterval::UpperTriangle
        })
    }
}

/// Cartesian mode label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub nx: u32,
    pub ny: u32,
}

impl ModeIndex {
    pub const fn new(nx: u32, ny: u32) -> Self {
        ModeIndex { nx, ny }
    }

    /// Total mode `n = n_x + n_y`.
    pub const fn n(self) -> u32 {
        self.nx + self.ny
    }

    /// Difference `m = n_x − n_y`.
    pub const fn m(self) -> i32 {
        self.nx as i32 - self.ny as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelInterval {
    LowerTriangle,
    MidRhomboid,
    UpperTriangle,
}

impl LevelInterval {
    /// Applies this interval's `(λ, μ)` formulas to level `n`, whether or not
    /// `n` is adjudicated to it. Used to compare adjacent formulas at the
    /// boundary levels; the formulas are only meaningful inside (or on the
    /// edge of) their own interval.
    pub fn assignment(self, shape: ScreenShape, n: u32) -> Result<LevelSpectrum> {
        if n > shape.max_level() {
            return Err(Error::domain(format!("level {n} outside screen")));
        }
        let (tx, ty) = (shape.jx.twice() as i32, shape.jy.twice() as i32);
        let ni = n as i32;
        let two_lambda = match self {
            LevelInterval::LowerTriangle => ni,
            LevelInterval::MidRhomboid => tx.min(ty),
            LevelInterval::UpperTriangle => tx + ty - ni,
        };
        if two_lambda < 0 {
            return Err(Error::domain(format!("level {n} has negative spin under {self:?}")));
        }
        let ny_lo = (ni - tx).max(0);
        let ny_hi = ni.min(ty);
        let members = (ny_lo..=ny_hi)
            .map(|ny| {
                let nx = ni - ny;
                let two_mu = match self {
                    LevelInterval::LowerTriangle => nx - ny,
                    LevelInterval::MidRhomboid if tx >= ty => ty - 2 * ny,
                    LevelInterval::MidRhomboid => 2 * nx - tx,
                    LevelInterval::UpperTriangle => nx - ny - tx + ty,
                };
                LevelMember {
                    mode: ModeIndex::new(nx as u32, ny as u32),
                    two_mu,
                }
            })
            .collect();
        Ok(LevelSpectrum {
            n,
            lambda: Spin::from_twice(two_lambda as u32),
            members,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelMember {
    pub mode: ModeIndex,
    /// Doubled projection `2μ`.
    pub two_mu: i32,
}

/// One multiplet of the rhomboid: its spin and the `(n_x, n_y) ↔ μ` map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSpectrum {
    pub n: u32,
    pub lambda: Spin,
    /// Ordered by descending `μ`.
    pub members: Vec<LevelMember>,
}

impl LevelSpectrum {
    /// Position of the member with projection `2μ`, which is also the
    /// row index `λ − μ` in a little-d matrix.
    pub fn position(&self, two_mu: i32) -> Option<usize> {
        self.members.iter().position(|m| m.two_mu == two_mu)
    }
}

/// The multiplet at total mode `n`.
pub fn level_spectrum(shape: ScreenShape, n: u32) -> Result<LevelSpectrum> {
    shape.interval(n)?.assignment(shape, n)
}

/// Kravchuk function tables for both axes, plus the level structure.
#[derive(Clone, Debug)]
pub struct CartesianBasis {
    shape: ScreenShape,
    phi_x: Array2<f64>,
    phi_y: Array2<f64>,
    levels: Vec<LevelSpectrum>,
}

impl CartesianBasis {
    pub fn new(shape: ScreenShape) -> Self {
        let levels = (0..=shape.max_level())
            .map(|n| level_spectrum(shape, n).expect("level within range"))
            .collect();
        CartesianBasis {
            shape,
            phi_x: kravchuk_table(shape.jx),
            phi_y: kravchuk_table(shape.jy),
            levels,
        }
    }

    pub fn shape(&self) -> ScreenShape {
        self.shape
    }

    /// `Ψ_{n_x}^{(j_x)}(q_x)` indexed `[n_x, q_x + j_x]`.
    pub fn phi_x(&self) -> &Array2<f64> {
        &self.phi_x
    }

    /// `Ψ_{n_y}^{(j_y)}(q_y)` indexed `[n_y, q_y + j_y]`.
    pub fn phi_y(&self) -> &Array2<f64> {
        &self.phi_y
    }

    pub fn levels(&self) -> &[LevelSpectrum] {
        &self.levels
    }

    pub fn level(&self, n: u32) -> Result<&LevelSpectrum> {
        self.levels
            .get(n as usize)
            .ok_or_else(|| Error::domain(format!("level {n} outside screen")))
    }

    pub fn check_image(&self, image: &Image) -> Result<()> {
        self.check_shape(image.shape())
    }

    pub fn check_shape(&self, shape: ScreenShape) -> Result<()> {
        if shape != self.shape {
            return Err(Error::Dimension {
                expected: (self.shape.nx(), self.shape.ny()),
                found: (shape.nx(), shape.ny()),
            });
        }
        Ok(())
    }

    /// Real mode `Ψ_{n_x}(q_x) Ψ_{n_y}(q_y)`.
    pub fn cartesian_mode(&self, idx: ModeIndex) -> Result<Image> {
        self.shape.check_mode(idx)?;
        let row_x = self.phi_x.row(idx.nx as usize);
        let row_y = self.phi_y.row(idx.ny as usize);
        let pixels = Array2::from_shape_fn((self.shape.nx(), self.shape.ny()), |(i, k)| {
            Complex64::new(row_x[i] * row_y[k], 0.0)
        });
        Image::new(self.shape, pixels)
    }

    /// Cartesian coefficients of the Laguerre–Kravchuk mode `Λ_{n,m}`,
    /// `m = 2μ`.
    ///
    /// `Λ_{n,m} = ω_n e^{−iπ(n_x−n_y)/4} Σ_{n'} d^λ_{μ,μ'}(π/2) e^{iπ(n'_x−n'_y)/4} Ψ_{n'}`
    /// with the level phase `ω_n = e^{−iπλ(n)/2}`. The phase makes
    /// `Λ_{n,−m} = Λ_{n,m}^*` hold exactly (without it the two differ by
    /// `e^{iπλ}`) and leaves the `m = 0` modes real.
    pub fn lk_coefficients(&self, n: u32, m: i32) -> Result<ModeCoefficients> {
        let level = self.level(n)?;
        let a = level.position(m).ok_or_else(|| {
            Error::domain(format!(
                "m = {m} is not a projection 2μ of level {n} (λ = {})",
                level.lambda
            ))
        })?;
        let d = wigner_little_d(level.lambda, PI / 2.0);
        let omega = Complex64::from_polar(1.0, -PI * level.lambda.value() / 2.0);
        let source = level.members[a].mode;
        let mut out = ModeCoefficients::zeros(self.shape);
        for (b, member) in level.members.iter().enumerate() {
            let phase = PI * f64::from(member.mode.m() - source.m()) / 4.0;
            out.coeffs_mut()[[member.mode.nx as usize, member.mode.ny as usize]] =
                omega * Complex64::from_polar(d.entries()[[a, b]], phase);
        }
        Ok(out)
    }

    /// Laguerre–Kravchuk mode `Λ_{n,m}` as a pixel array.
    pub fn lk_mode(&self, n: u32, m: i32) -> Result<Image> {
        let coeffs = self.lk_coefficients(n, m)?;
        crate::transforms::synthesize(self, &coeffs)
    }

    /// All `(n, m)` labels of the Laguerre–Kravchuk basis, level by level.
    pub fn lk_labels(&self) -> Vec<(u32, i32)> {
        self.levels
            .iter()
            .flat_map(|l| l.members.iter().map(move |m| (l.n, m.two_mu)))
            .collect()
    }
}
