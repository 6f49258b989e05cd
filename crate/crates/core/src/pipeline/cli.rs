//! `kfourier` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::field::Image;
use crate::group::FourierGroupElement;
use crate::modes::{CartesianBasis, ScreenShape};
use crate::pipeline::figures::{cartesian_gallery, figures, lk_gallery, FigureOptions};
use crate::pipeline::io::{load_image, save_complex};
use crate::pipeline::render::{render, BitDepth, Channel, RenderSpec, Scaling};
use crate::pipeline::verify::{self, VerifyOptions};
use crate::special::Spin;
use crate::transforms;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kfourier",
    version,
    about = "Unitary Fourier-group transforms of pixellated images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render the Cartesian and Laguerre-Kravchuk mode galleries of a screen.
    Modes {
        #[arg(long, value_parser = parse_shape)]
        shape: ScreenShape,
        #[arg(long, default_value = "modes")]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        zoom: usize,
    },
    /// Rotate an image by theta (radians; counterclockwise).
    Rotate {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[command(flatten)]
        io: ImageIo,
    },
    /// Gyrate an image by gamma.
    Gyrate {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        gamma: f64,
        #[command(flatten)]
        io: ImageIo,
    },
    /// Symmetric (chi) and antisymmetric (beta) fractional Fourier-Kravchuk transforms.
    Fourier {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
        chi: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
        beta: f64,
        #[command(flatten)]
        io: ImageIo,
    },
    /// Apply a group element given as JSON {chi, psi, theta, phi} (or @file).
    Apply {
        #[arg(long)]
        element: String,
        #[command(flatten)]
        io: ImageIo,
    },
    /// Print the composition a∘b (b acts first) as JSON.
    Compose { a: String, b: String },
    /// Print the inverse of an element as JSON.
    Invert { element: String },
    /// Run the invariant suite.
    Verify {
        /// Overrides both the unitary and the compositional tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Screens to test, separated by ';' (default "5,3;11,7;20,12").
        #[arg(long, value_delimiter = ';', value_parser = parse_shape)]
        shapes: Vec<ScreenShape>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        quiet: bool,
    },
    /// Regenerate the mode galleries, rotation/gyration rows and glyph sheet.
    Figures {
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        zoom: usize,
        /// Also write one PGM per gallery mode.
        #[arg(long)]
        mode_files: bool,
    },
}

#[derive(Args, Debug)]
struct ImageIo {
    /// PGM (P2/P5) or FKIMG1 file.
    #[arg(long, short)]
    input: PathBuf,
    /// `.pgm` renders the chosen channel; anything else writes FKIMG1.
    #[arg(long, short)]
    output: PathBuf,
    /// Require the input to have this screen shape.
    #[arg(long, value_parser = parse_shape)]
    shape: Option<ScreenShape>,
    #[arg(long, value_enum, default_value_t = ChannelArg::Real)]
    channel: ChannelArg,
    /// Gray range "lo,hi"; omitted means min-max adaptive.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(f64, f64)>,
    #[arg(long)]
    sixteen_bit: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Real,
    Imag,
    Abs,
    Phase,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Real => Channel::Real,
            ChannelArg::Imag => Channel::Imag,
            ChannelArg::Abs => Channel::Abs,
            ChannelArg::Phase => Channel::Phase,
        }
    }
}

/// Angles: plain numbers or multiples and fractions of `pi`, such as
/// `pi`, `-pi/6`, `3pi/16`, `0.25*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("angle {s:?} is not finite"))
        };
    }
    let bad = || format!("cannot read {s:?} as an angle (try 0.5, pi, -pi/6, 3pi/16)");
    let t = t.replace('π', "pi");
    let (sign, t) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().map_err(|_| bad())?
    };
    let v = sign * coeff * std::f64::consts::PI / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// `JX,JY` as spins (`5,3`, `2.5,1.5`) or `2j:TX,TY` as doubled spins.
pub fn parse_shape(s: &str) -> Result<ScreenShape, String> {
    let (doubled, body) = match s.trim().strip_prefix("2j:") {
        Some(rest) => (true, rest),
        None => (false, s.trim()),
    };
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(format!("shape {s:?} must be JX,JY"));
    };
    let spin = |v: &str| -> Result<Spin, String> {
        if doubled {
            v.parse::<u32>()
                .map(Spin::from_twice)
                .map_err(|_| format!("{v:?} is not a doubled spin"))
        } else {
            let x: f64 = v.parse().map_err(|_| format!("{v:?} is not a number"))?;
            Spin::from_f64(x).map_err(|e| e.to_string())
        }
    };
    Ok(ScreenShape::new(spin(a)?, spin(b)?))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("range {s:?} must be lo,hi"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad range bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad range bound {b:?}"))?;
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("range {s:?} is empty"))
    }
}

/// Reads an element from inline JSON or from `@path`.
pub fn parse_element(s: &str) -> Result<FourierGroupElement, Failure> {
    let text = match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::data(format!("cannot read {path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("bad element JSON {s:?}: {e}")))
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::data(e.to_string())
    }
}

fn transform_file(
    io: &ImageIo,
    f: impl FnOnce(&CartesianBasis, &Image) -> crate::Result<Image>,
) -> Result<(), Failure> {
    let image = load_image(&io.input, None)?;
    if let Some(shape) = io.shape {
        if shape != image.shape() {
            return Err(Failure::usage(format!(
                "{} is {}x{} pixels, --shape asks for {}x{}",
                io.input.display(),
                image.shape().nx(),
                image.shape().ny(),
                shape.nx(),
                shape.ny()
            )));
        }
    }
    let basis = CartesianBasis::new(image.shape());
    let out = f(&basis, &image)?;
    write_output(&io.output, &out, io)
}

fn write_output(path: &Path, image: &Image, io: &ImageIo) -> Result<(), Failure> {
    let is_pgm = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    if is_pgm {
        let spec = RenderSpec {
            scaling: io.range.map_or(Scaling::Adaptive, |(lo, hi)| Scaling::Fixed { lo, hi }),
            depth: if io.sixteen_bit {
                BitDepth::Sixteen
            } else {
                BitDepth::Eight
            },
            channel: io.channel.into(),
        };
        render(image, &spec, path)?;
    } else {
        save_complex(path, image)?;
    }
    Ok(())
}

fn element_json(el: &FourierGroupElement) -> String {
    serde_json::to_string(el).expect("plain struct serializes")
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Modes { shape, out, zoom } => {
            let basis = CartesianBasis::new(shape);
            let cart = cartesian_gallery(&basis, &out.join("cartesian"), zoom, true)?;
            let lk = lk_gallery(&basis, &out.join("laguerre_kravchuk"), zoom, true)?;
            println!(
                "{} Cartesian modes -> {}\n{} Laguerre-Kravchuk modes -> {}",
                cart.modes,
                cart.sheet.display(),
                lk.modes,
                lk.sheet.display()
            );
        }
        Command::Rotate { theta, io } => transform_file(&io, |b, img| transforms::rotate(b, img, theta))?,
        Command::Gyrate { gamma, io } => transform_file(&io, |b, img| transforms::gyrate(b, img, gamma))?,
        Command::Fourier { chi, beta, io } => transform_file(&io, |b, img| {
            let c = transforms::analyze(b, img)?;
            let c = transforms::ks_coeffs(&transforms::ka_coeffs(&c, beta), chi);
            transforms::synthesize(b, &c)
        })?,
        Command::Apply { element, io } => {
            let el = parse_element(&element)?;
            transform_file(&io, |b, img| transforms::apply_element(b, img, &el))?
        }
        Command::Compose { a, b } => {
            let (a, b) = (parse_element(&a)?, parse_element(&b)?);
            println!("{}", element_json(&a.compose(&b)));
        }
        Command::Invert { element } => {
            println!("{}", element_json(&parse_element(&element)?.inverse()));
        }
        Command::Verify {
            tolerance,
            shapes,
            samples,
            quiet,
        } => {
            let mut opts = VerifyOptions {
                samples,
                ..VerifyOptions::default()
            };
            if !shapes.is_empty() {
                opts.shapes = shapes;
            }
            if let Some(t) = tolerance {
                if !(t >= 0.0) {
                    return Err(Failure::usage("--tolerance must be non-negative"));
                }
                opts.unitary_tol = t;
                opts.compose_tol = t;
            }
            let report = verify::run(&opts)?;
            for c in &report.checks {
                if !quiet || !c.passed() {
                    println!("{c}");
                }
            }
            let failed = report.failures().count();
            println!("{} checks, {failed} failed", report.checks.len());
            if failed > 0 {
                return Err(Failure {
                    code: EXIT_VERIFY,
                    message: format!("{failed} invariant checks failed"),
                });
            }
        }
        Command::Figures { out, zoom, mode_files } => {
            let opts = FigureOptions {
                zoom,
                mode_files,
                ..FigureOptions::new(out)
            };
            let r = figures(&opts)?;
            println!(
                "Cartesian gallery: {} modes on {}",
                r.cartesian.modes,
                shape_str(r.cartesian.shape)
            );
            for sheet in [&r.rotations, &r.gyrations] {
                for row in &sheet.rows {
                    println!(
                        "level n={} lambda={} ({} members, {} shown) -> {}",
                        row.n,
                        row.lambda,
                        row.members,
                        row.shown.len(),
                        sheet.sheet.display()
                    );
                }
            }
            println!(
                "glyph: six pi/6 vs pi {:.2e}, pi vs inversion {:.2e}, range ({:.5}, {:.5})",
                r.glyph.six_vs_half_turn, r.glyph.half_turn_vs_inversion, r.glyph.gray_range.0, r.glyph.gray_range.1
            );
            println!("Laguerre-Kravchuk gallery: {} modes", r.laguerre_kravchuk.modes);
        }
    }
    Ok(())
}

fn shape_str(s: ScreenShape) -> String {
    format!("({},{})", s.jx(), s.jy())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("kfourier: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi/6").unwrap(), -PI / 6.0);
        assert_eq!(parse_angle("3pi/16").unwrap(), 3.0 * PI / 16.0);
        assert_eq!(parse_angle("0.25*pi").unwrap(), 0.25 * PI);
        assert_eq!(parse_angle("π/2").unwrap(), PI / 2.0);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/x").is_err());
        assert!(parse_angle("inf").is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(parse_shape("5,3").unwrap(), ScreenShape::from_twice(10, 6));
        assert_eq!(parse_shape("2.5, 1").unwrap(), ScreenShape::from_twice(5, 2));
        assert_eq!(parse_shape("2j:10,7").unwrap(), ScreenShape::from_twice(10, 7));
        assert!(parse_shape("5").is_err());
        assert!(parse_shape("5,0.3").is_err());
        assert!(parse_shape("2j:1.5,2").is_err());
    }

    #[test]
    fn element_json_in_and_out() {
        let el = parse_element(r#"{"chi":1,"psi":0,"theta":0.5,"phi":2}"#).unwrap();
        assert_eq!(el, FourierGroupElement::new(1.0, 0.0, 0.5, 2.0));
        assert_eq!(parse_element("{}").unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_element("@/nonexistent/e.json").unwrap_err().code, EXIT_DATA);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["kfourier", "rotate"]), EXIT_USAGE);
        assert_eq!(run(["kfourier", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["kfourier", "--help"]), EXIT_OK);
    }
}
