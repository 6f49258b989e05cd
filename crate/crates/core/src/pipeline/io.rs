//! PGM (P2/P5) and the raw complex array format.
//!
//! Screen orientation: a PGM of width `N_x` and height `N_y` maps column
//! `c` to `q_x = c − j_x` and row `r` to `q_y = j_y − r`, so `+q_y` is up.

use std::fs;
use std::io::Write;
use std::path::Path;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Image;
use crate::modes::ScreenShape;

pub const COMPLEX_MAGIC: &[u8] = b"FKIMG1\n";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    PgmAscii,
    PgmBinary,
    Complex,
}

impl FileFormat {
    /// Guesses the format from the first bytes of a file.
    pub fn detect(bytes: &[u8]) -> Option<FileFormat> {
        if bytes.starts_with(COMPLEX_MAGIC) {
            Some(FileFormat::Complex)
        } else if bytes.starts_with(b"P2") {
            Some(FileFormat::PgmAscii)
        } else if bytes.starts_with(b"P5") {
            Some(FileFormat::PgmBinary)
        } else {
            None
        }
    }
}

/// Gray levels indexed `[column, row]` with their maxval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub maxval: u16,
    /// `[x, y]`, `y = 0` is the top row.
    pub gray: Array2<u16>,
}

impl GrayImage {
    pub fn width(&self) -> usize {
        self.gray.dim().0
    }

    pub fn height(&self) -> usize {
        self.gray.dim().1
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| io_err(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

/// Header tokenizer that skips `#` comments.
struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn skip_space(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::format("PGM", format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format("PGM", format!("{what} out of range")))
    }
}

pub fn parse_pgm(data: &[u8]) -> Result<GrayImage> {
    let format = FileFormat::detect(data);
    if !matches!(format, Some(FileFormat::PgmAscii | FileFormat::PgmBinary)) {
        return Err(Error::format("PGM", "missing P2/P5 magic"));
    }
    let mut t = Tokens { data, pos: 2 };
    let width = t.number("width")?;
    let height = t.number("height")?;
    let maxval = t.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::format("PGM", format!("non-positive size {width}x{height}")));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(Error::format("PGM", format!("maxval {maxval} not in 1..=65535")));
    }
    let (w, h) = (width as usize, height as usize);
    let count = w
        .checked_mul(h)
        .filter(|&n| n <= (1 << 28))
        .ok_or_else(|| Error::format("PGM", "dimensions too large"))?;
    let maxval = maxval as u16;
    let mut values = Vec::with_capacity(count);
    if format == Some(FileFormat::PgmAscii) {
        for _ in 0..count {
            let v = t.number("pixel")?;
            if v > u64::from(maxval) {
                return Err(Error::format("PGM", format!("pixel {v} exceeds maxval {maxval}")));
            }
            values.push(v as u16);
        }
    } else {
        // exactly one whitespace byte separates the header from the raster
        let start = t.pos + 1;
        let bytes_per = if maxval < 256 { 1 } else { 2 };
        let body = data
            .get(start..start + count * bytes_per)
            .ok_or_else(|| Error::format("PGM", "raster shorter than header says"))?;
        for chunk in body.chunks_exact(bytes_per) {
            let v = if bytes_per == 1 {
                u16::from(chunk[0])
            } else {
                u16::from_be_bytes([chunk[0], chunk[1]])
            };
            if v > maxval {
                return Err(Error::format("PGM", format!("pixel {v} exceeds maxval {maxval}")));
            }
            values.push(v);
        }
    }
    // raster is row-major (x fastest); store as [x, y]
    let rows = Array2::from_shape_vec((h, w), values).expect("length checked");
    Ok(GrayImage {
        maxval,
        gray: rows.reversed_axes().as_standard_layout().to_owned(),
    })
}

pub fn encode_pgm(img: &GrayImage, format: FileFormat) -> Result<Vec<u8>> {
    let (w, h) = (img.width(), img.height());
    let magic = match format {
        FileFormat::PgmAscii => "P2",
        FileFormat::PgmBinary => "P5",
        FileFormat::Complex => return Err(Error::format("PGM", "not a PGM encoding")),
    };
    let mut out = format!("{magic}\n{w} {h}\n{}\n", img.maxval).into_bytes();
    for y in 0..h {
        for x in 0..w {
            let v = img.gray[[x, y]];
            match format {
                FileFormat::PgmAscii => {
                    let sep = if x + 1 == w { "\n" } else { " " };
                    write!(out, "{v}{sep}").expect("writing to Vec");
                }
                _ if img.maxval < 256 => out.push(v as u8),
                _ => out.extend_from_slice(&v.to_be_bytes()),
            }
        }
    }
    Ok(out)
}

pub fn write_pgm(path: &Path, img: &GrayImage, format: FileFormat) -> Result<()> {
    write_bytes(path, &encode_pgm(img, format)?)
}

/// Gray levels as an image: value `g/maxval` at the pixel's position.
pub fn gray_to_image(gray: &GrayImage) -> Result<Image> {
    let shape = ScreenShape::from_pixels(gray.width(), gray.height())?;
    let (w, h) = (gray.width(), gray.height());
    let m = f64::from(gray.maxval);
    let pixels = Array2::from_shape_fn((w, h), |(ix, iy)| {
        Complex64::new(f64::from(gray.gray[[ix, h - 1 - iy]]) / m, 0.0)
    });
    Image::new(shape, pixels)
}

pub fn encode_complex(image: &Image) -> Vec<u8> {
    let (nx, ny) = image.pixels().dim();
    let mut out = COMPLEX_MAGIC.to_vec();
    out.extend_from_slice(format!("{nx} {ny}\n").as_bytes());
    out.reserve(16 * nx * ny);
    // [ix, iy] in standard layout is already row-major with q_y fastest
    for z in image.pixels().iter() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn parse_complex(data: &[u8]) -> Result<Image> {
    let rest = data
        .strip_prefix(COMPLEX_MAGIC)
        .ok_or_else(|| Error::format("FKIMG1", "missing magic"))?;
    let nl = rest
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::format("FKIMG1", "unterminated size line"))?;
    let line = std::str::from_utf8(&rest[..nl]).map_err(|_| Error::format("FKIMG1", "size line not ASCII"))?;
    let dims: Vec<usize> = line
        .split_ascii_whitespace()
        .map(|s| {
            s.parse()
                .map_err(|_| Error::format("FKIMG1", format!("bad size {s:?}")))
        })
        .collect::<Result<_>>()?;
    let [nx, ny] = dims[..] else {
        return Err(Error::format("FKIMG1", "size line must hold two numbers"));
    };
    let shape = ScreenShape::from_pixels(nx, ny)?;
    let payload = &rest[nl + 1..];
    let expect = nx
        .checked_mul(ny)
        .and_then(|n| n.checked_mul(16))
        .ok_or_else(|| Error::format("FKIMG1", "dimensions too large"))?;
    if payload.len() != expect {
        return Err(Error::format(
            "FKIMG1",
            format!("payload is {} bytes, expected {expect}", payload.len()),
        ));
    }
    let values: Vec<Complex64> = payload
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    Image::new(shape, Array2::from_shape_vec((nx, ny), values).expect("length checked"))
}

pub fn save_complex(path: &Path, image: &Image) -> Result<()> {
    write_bytes(path, &encode_complex(image))
}

/// Reads an image; `format = None` detects it from the file contents.
pub fn load_image(path: &Path, format: Option<FileFormat>) -> Result<Image> {
    let data = read_bytes(path)?;
    let format = match format.or_else(|| FileFormat::detect(&data)) {
        Some(f) => f,
        None => {
            return Err(Error::format(
                "image",
                format!("{} is neither PGM nor FKIMG1", path.display()),
            ))
        }
    };
    match format {
        FileFormat::Complex => parse_complex(&data),
        _ => {
            let gray = parse_pgm(&data)?;
            let expected = if data.starts_with(b"P2") {
                FileFormat::PgmAscii
            } else {
                FileFormat::PgmBinary
            };
            if expected != format {
                return Err(Error::format("PGM", format!("file is {expected:?}, not {format:?}")));
            }
            gray_to_image(&gray)
        }
    }
}
