//! Desk-scale mode galleries and transform sheets.
//!
//! * mode gallery: every Cartesian mode of a screen laid out on the
//!   rhomboid, total mode `n` upward and `m = n_x − n_y` across;
//! * rotation rows: selected members of chosen levels rotated by several
//!   angles;
//! * glyph sheet: successive rotations of the shipped `F` glyph;
//! * gyration rows: selected members gyrated by several angles (modulus,
//!   plus the phase at the last angle);
//! * Laguerre–Kravchuk gallery: `Λ_{n,m}` on the rhomboid, real part for
//!   `m ≥ 0` and imaginary part of `Λ_{n,|m|}` for `m < 0`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::Image;
use crate::modes::{CartesianBasis, ModeIndex, ScreenShape};
use crate::pipeline::io::{gray_to_image, parse_pgm};
use crate::pipeline::render::{render, render_gray, Channel, ContactSheet, RenderSpec, Scaling};
use crate::special::Spin;
use crate::transforms::{analyze, gyrate_coeffs, rotate, rotate_coeffs, synthesize};

const GLYPH_PGM: &str = include_str!("../../data/glyph_f.pgm");

/// The shipped 41×25 `F` glyph, white (1) on black (0).
pub fn glyph_f() -> Image {
    gray_to_image(&parse_pgm(GLYPH_PGM.as_bytes()).expect("embedded glyph parses")).expect("glyph has pixels")
}

#[derive(Clone, Debug)]
pub struct FigureOptions {
    pub out_dir: PathBuf,
    /// Pixel replication factor for sheets.
    pub zoom: usize,
    /// Also write one PGM per mode for the galleries.
    pub mode_files: bool,
    pub gallery_shape: ScreenShape,
    pub multiplet_shape: ScreenShape,
    pub multiplet_levels: Vec<u32>,
}

impl FigureOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        FigureOptions {
            out_dir: out_dir.into(),
            zoom: 6,
            mode_files: false,
            gallery_shape: ScreenShape::from_twice(10, 6),
            multiplet_shape: ScreenShape::from_twice(22, 14),
            multiplet_levels: vec![4, 18, 32],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gallery {
    pub shape: ScreenShape,
    pub modes: usize,
    pub sheet: PathBuf,
    pub mode_files: Vec<PathBuf>,
}

/// One multiplet shown in a rotation or gyration sheet.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRow {
    pub n: u32,
    pub lambda: Spin,
    pub members: usize,
    pub shown: Vec<ModeIndex>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultipletSheet {
    pub shape: ScreenShape,
    pub angles: Vec<f64>,
    pub rows: Vec<LevelRow>,
    pub sheet: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlyphSheet {
    pub shape: ScreenShape,
    /// Frames after `k = 0..=6` rotations by `π/6`.
    pub frames: usize,
    /// Real-part range over the rotated frames.
    pub gray_range: (f64, f64),
    /// Six rotations by `π/6` against one by `π`.
    pub six_vs_half_turn: f64,
    /// One rotation by `π` against the pixel inversion `q → −q`.
    pub half_turn_vs_inversion: f64,
    pub max_imag: f64,
    pub sheet: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureReport {
    pub cartesian: Gallery,
    pub rotations: MultipletSheet,
    pub glyph: GlyphSheet,
    pub gyrations: MultipletSheet,
    pub laguerre_kravchuk: Gallery,
}

impl FigureReport {
    pub fn files(&self) -> Vec<&Path> {
        let mut out: Vec<&Path> = vec![
            &self.cartesian.sheet,
            &self.rotations.sheet,
            &self.glyph.sheet,
            &self.gyrations.sheet,
            &self.laguerre_kravchuk.sheet,
        ];
        out.extend(self.cartesian.mode_files.iter().map(PathBuf::as_path));
        out.extend(self.laguerre_kravchuk.mode_files.iter().map(PathBuf::as_path));
        out
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Tile placement on the rhomboid: `m` across (half-tile steps), `n` up.
struct Rhomboid {
    tile_w: usize,
    step_x: usize,
    step_y: usize,
    m_offset: i32,
    top_level: u32,
}

impl Rhomboid {
    fn new(shape: ScreenShape, zoom: usize, m_offset: i32, m_span: i32) -> (Self, usize, usize) {
        let (tile_w, tile_h) = (shape.nx() * zoom, shape.ny() * zoom);
        let gap = zoom.max(2);
        let r = Rhomboid {
            tile_w,
            step_x: tile_w + gap,
            step_y: tile_h + gap,
            m_offset,
            top_level: shape.max_level(),
        };
        let width = m_span as usize * r.step_x / 2 + tile_w + 2 * gap;
        let height = (r.top_level as usize + 1) * r.step_y + gap;
        (r, width, height)
    }

    #[cfg(test)]
    fn tile_h(&self) -> usize {
        self.step_y - (self.step_x - self.tile_w)
    }

    fn origin(&self, n: u32, m: i32) -> (usize, usize) {
        let gap = self.step_x - self.tile_w;
        let x = gap + (m + self.m_offset) as usize * self.step_x / 2;
        let y = gap + (self.top_level - n) as usize * self.step_y;
        (x, y)
    }
}

/// All Cartesian modes of `basis`, on the rhomboid with the `(−1, 1)` gray
/// scale.
pub fn cartesian_gallery(basis: &CartesianBasis, dir: &Path, zoom: usize, mode_files: bool) -> Result<Gallery> {
    ensure_dir(dir)?;
    let shape = basis.shape();
    let two_jy = shape.jy().twice() as i32;
    let (layout, w, h) = Rhomboid::new(shape, zoom, two_jy, shape.max_level() as i32);
    let spec = RenderSpec::GALLERY;
    let mut sheet = ContactSheet::new(w, h, spec.depth.maxval(), 0, zoom);
    let mut files = Vec::new();
    let mut modes = 0;
    for level in basis.levels() {
        for member in &level.members {
            let img = basis.cartesian_mode(member.mode)?;
            let (x, y) = layout.origin(level.n, member.mode.m());
            sheet.place(&render_gray(&img, &spec), x, y);
            if mode_files {
                let path = dir.join(format!("mode_{:02}_{:02}.pgm", member.mode.nx, member.mode.ny));
                render(&img, &spec, &path)?;
                files.push(path);
            }
            modes += 1;
        }
    }
    let path = dir.join("cartesian_modes.pgm");
    sheet.save(&path)?;
    Ok(Gallery {
        shape,
        modes,
        sheet: path,
        mode_files: files,
    })
}

/// All Laguerre–Kravchuk modes of `basis` on the rhomboid.
pub fn lk_gallery(basis: &CartesianBasis, dir: &Path, zoom: usize, mode_files: bool) -> Result<Gallery> {
    ensure_dir(dir)?;
    let shape = basis.shape();
    let two_min = shape.jx().twice().min(shape.jy().twice()) as i32;
    let (layout, w, h) = Rhomboid::new(shape, zoom, two_min, 2 * two_min);
    let labels = basis.lk_labels();
    let modes: Vec<Image> = labels
        .iter()
        .map(|&(n, m)| basis.lk_mode(n, m.abs()))
        .collect::<Result<_>>()?;
    let amp = modes
        .iter()
        .flat_map(|img| img.pixels().iter().map(|z| z.re.abs().max(z.im.abs())))
        .fold(0.0, f64::max);
    let scaled = RenderSpec::GALLERY.with_scaling(Scaling::Fixed { lo: -amp, hi: amp });
    let mut sheet = ContactSheet::new(w, h, scaled.depth.maxval(), 0, zoom);
    let mut files = Vec::new();
    for (&(n, m), img) in labels.iter().zip(&modes) {
        let channel = if m >= 0 { Channel::Real } else { Channel::Imag };
        let (x, y) = layout.origin(n, m);
        sheet.place(&render_gray(img, &scaled.with_channel(channel)), x, y);
        if mode_files {
            let path = dir.join(format!("lk_{n:02}_{m:+03}.pgm"));
            render(img, &scaled.with_channel(channel), &path)?;
            files.push(path);
        }
    }
    let path = dir.join("laguerre_kravchuk_modes.pgm");
    sheet.save(&path)?;
    Ok(Gallery {
        shape,
        modes: labels.len(),
        sheet: path,
        mode_files: files,
    })
}

/// Up to five members of a level, evenly spread from highest to lowest `μ`.
pub fn select_members(basis: &CartesianBasis, n: u32) -> Result<LevelRow> {
    let level = basis.level(n)?;
    let len = level.members.len();
    let picks = len.min(5);
    let shown = (0..picks)
        .map(|k| {
            let i = if picks == 1 {
                0
            } else {
                (k * (len - 1) + (picks - 1) / 2) / (picks - 1)
            };
            level.members[i].mode
        })
        .collect();
    Ok(LevelRow {
        n,
        lambda: level.lambda,
        members: len,
        shown,
    })
}

enum Action {
    Rotate,
    Gyrate,
}

fn multiplet_sheet(
    basis: &CartesianBasis,
    levels: &[u32],
    angles: &[f64],
    action: Action,
    zoom: usize,
    path: &Path,
) -> Result<MultipletSheet> {
    let rows: Vec<LevelRow> = levels
        .iter()
        .map(|&n| select_members(basis, n))
        .collect::<Result<_>>()?;
    // image grid: block per level (highest level on top), one row per angle
    let phase_row = matches!(action, Action::Gyrate);
    let rows_per_block = angles.len() + usize::from(phase_row);
    let mut grid: Vec<Vec<(Image, Channel)>> = Vec::new();
    for row in rows.iter().rev() {
        let mut block = vec![Vec::new(); rows_per_block];
        for &mode in &row.shown {
            let c = crate::field::ModeCoefficients::delta(basis.shape(), mode)?;
            for (r, &a) in angles.iter().enumerate() {
                let img = match action {
                    Action::Rotate => synthesize(basis, &rotate_coeffs(basis, &c, a)?)?,
                    Action::Gyrate => synthesize(basis, &gyrate_coeffs(basis, &c, a)?)?,
                };
                let channel = if phase_row { Channel::Abs } else { Channel::Real };
                if phase_row && r + 1 == angles.len() {
                    block[r + 1].push((img.clone(), Channel::Phase));
                }
                block[r].push((img, channel));
            }
        }
        grid.extend(block);
    }
    let amp = grid
        .iter()
        .flatten()
        .flat_map(|(img, _)| img.pixels().iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let shape = basis.shape();
    let gap = zoom.max(2);
    let (tw, th) = (shape.nx() * zoom + gap, shape.ny() * zoom + gap);
    let cols = rows.iter().map(|r| r.shown.len()).max().unwrap_or(0);
    let block_gap = 3 * gap;
    let height = grid.len() * th + rows.len() * block_gap + gap;
    let mut sheet = ContactSheet::new(cols * tw + gap, height, 255, 0, zoom);
    for (i, line) in grid.iter().enumerate() {
        let y = gap + i * th + (i / rows_per_block) * block_gap;
        for (k, (img, channel)) in line.iter().enumerate() {
            let scaling = match channel {
                Channel::Abs => Scaling::Fixed { lo: 0.0, hi: amp },
                _ => Scaling::Fixed { lo: -amp, hi: amp },
            };
            let spec = RenderSpec::GALLERY.with_scaling(scaling).with_channel(*channel);
            sheet.place(&render_gray(img, &spec), gap + k * tw, y);
        }
    }
    sheet.save(path)?;
    Ok(MultipletSheet {
        shape,
        angles: angles.to_vec(),
        rows,
        sheet: path.to_path_buf(),
    })
}

/// Selected members of `levels` rotated by each angle.
pub fn rotation_sheet(
    basis: &CartesianBasis,
    levels: &[u32],
    angles: &[f64],
    zoom: usize,
    path: &Path,
) -> Result<MultipletSheet> {
    multiplet_sheet(basis, levels, angles, Action::Rotate, zoom, path)
}

/// Selected members of `levels` gyrated by each angle; an extra row holds
/// the phase at the last angle.
pub fn gyration_sheet(
    basis: &CartesianBasis,
    levels: &[u32],
    angles: &[f64],
    zoom: usize,
    path: &Path,
) -> Result<MultipletSheet> {
    multiplet_sheet(basis, levels, angles, Action::Gyrate, zoom, path)
}

/// Seven frames: the glyph and its rotations by `k·π/6`, each applied as
/// successive steps of `π/6`; every frame scaled to its own range.
pub fn glyph_sheet(glyph: &Image, zoom: usize, path: &Path) -> Result<GlyphSheet> {
    let basis = CartesianBasis::new(glyph.shape());
    let mut frames = vec![glyph.clone()];
    let mut c = analyze(&basis, glyph)?;
    for _ in 0..6 {
        c = rotate_coeffs(&basis, &c, PI / 6.0)?;
        frames.push(synthesize(&basis, &c)?);
    }
    let half = rotate(&basis, glyph, PI)?;
    let gray_range = frames[1..]
        .iter()
        .flat_map(|f| f.pixels().iter().map(|z| z.re))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let max_imag = frames.iter().map(Image::max_imag).fold(0.0, f64::max);
    let shape = glyph.shape();
    let gap = zoom.max(2);
    let tw = shape.nx() * zoom + gap;
    let mut sheet = ContactSheet::new(frames.len() * tw + gap, shape.ny() * zoom + 2 * gap, 255, 0, zoom);
    for (k, f) in frames.iter().enumerate() {
        sheet.place(&render_gray(f, &RenderSpec::ADAPTIVE), gap + k * tw, gap);
    }
    sheet.save(path)?;
    Ok(GlyphSheet {
        shape,
        frames: frames.len(),
        gray_range,
        six_vs_half_turn: frames[6].max_abs_diff(&half),
        half_turn_vs_inversion: half.max_abs_diff(&glyph.inverted()),
        max_imag,
        sheet: path.to_path_buf(),
    })
}

/// Regenerates all five sheets into `opts.out_dir`.
pub fn figures(opts: &FigureOptions) -> Result<FigureReport> {
    let dir = &opts.out_dir;
    ensure_dir(dir)?;
    let gallery = CartesianBasis::new(opts.gallery_shape);
    let multiplets = CartesianBasis::new(opts.multiplet_shape);
    let cartesian = cartesian_gallery(&gallery, &dir.join("cartesian"), opts.zoom, opts.mode_files)?;
    let rotations = rotation_sheet(
        &multiplets,
        &opts.multiplet_levels,
        &[0.0, FRAC_PI_4, FRAC_PI_2],
        opts.zoom,
        &dir.join("rotations.pgm"),
    )?;
    let glyph = glyph_sheet(&glyph_f(), opts.zoom, &dir.join("glyph_rotations.pgm"))?;
    let gyrations = gyration_sheet(
        &multiplets,
        &opts.multiplet_levels,
        &[0.0, PI / 16.0, PI / 8.0, 3.0 * PI / 16.0, FRAC_PI_4],
        opts.zoom,
        &dir.join("gyrations.pgm"),
    )?;
    let laguerre_kravchuk = lk_gallery(&gallery, &dir.join("laguerre_kravchuk"), opts.zoom, opts.mode_files)?;
    Ok(FigureReport {
        cartesian,
        rotations,
        glyph,
        gyrations,
        laguerre_kravchuk,
    })
}
