//! Invariant suite behind `kfourier verify`.
//!
//! Each check computes a defect (a maximum error, or 0/1 for exact
//! bookkeeping) and compares it with its tolerance.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{Image, ModeCoefficients};
use crate::group::FourierGroupElement;
use crate::modes::{level_spectrum, CartesianBasis, LevelInterval, ScreenShape};
use crate::special::{kravchuk_function, wigner_little_d, Spin};
use crate::transforms::{
    analyze, apply_element, gyrate_coeffs, gyrate_sandwich_coeffs, ka_coeffs, ks_coeffs, rotate_coeffs, synthesize,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub shapes: Vec<ScreenShape>,
    /// Bound for single unitary maps and orthonormality.
    pub unitary_tol: f64,
    /// Bound for compositions and cross-checks.
    pub compose_tol: f64,
    /// Random samples per randomized check.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            shapes: vec![
                ScreenShape::from_twice(10, 6),
                ScreenShape::from_twice(22, 14),
                ScreenShape::from_twice(40, 24),
            ],
            unitary_tol: 1e-10,
            compose_tol: 1e-9,
            samples: 5,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.defect <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "ok  " } else { "FAIL" };
        write!(
            f,
            "{tag} {:<52} {:.3e} (tol {:.1e})",
            self.name, self.defect, self.tolerance
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    fn push(&mut self, name: impl Into<String>, defect: f64, tolerance: f64) {
        // NaN never passes
        let defect = if defect.is_nan() { f64::INFINITY } else { defect };
        self.checks.push(Check {
            name: name.into(),
            defect,
            tolerance,
        });
    }
}

pub fn random_image(shape: ScreenShape, rng: &mut impl Rng) -> Image {
    let px = Array2::from_shape_fn((shape.nx(), shape.ny()), |_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    Image::new(shape, px).expect("dimensions from shape")
}

pub fn random_element(rng: &mut impl Rng) -> FourierGroupElement {
    FourierGroupElement::new(
        rng.random_range(0.0..4.0 * PI),
        rng.random_range(0.0..4.0 * PI),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..2.0 * PI),
    )
}

fn max_dev_from_identity(gram: &Array2<Complex64>) -> f64 {
    gram.indexed_iter()
        .map(|((i, k), z)| (z - if i == k { 1.0 } else { 0.0 }).norm())
        .fold(0.0, f64::max)
}

/// Largest `|d^j_{n−j,q}(π/2) − Ψ_n^{(j)}(q)|` over `2j ≤ max_two_j`.
pub fn kravchuk_little_d_defect(max_two_j: u32) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for two_j in 0..=max_two_j {
        let j = Spin::from_twice(two_j);
        let d = wigner_little_d(j, FRAC_PI_2);
        for n in 0..=two_j {
            for s in 0..=two_j {
                let two_q = 2 * s as i32 - two_j as i32;
                // row μ = n − j sits at λ − μ = 2j − n; column q at 2j − s
                let dv = d.entries()[[(two_j - n) as usize, (two_j - s) as usize]];
                worst = worst.max((dv - kravchuk_function(j, n, two_q)?).abs());
            }
        }
    }
    Ok(worst)
}

/// Gram deviation of the Cartesian modes, as pixel vectors.
pub fn cartesian_gram_defect(basis: &CartesianBasis) -> f64 {
    let gx = basis.phi_x().dot(&basis.phi_x().t());
    let gy = basis.phi_y().dot(&basis.phi_y().t());
    let dev = |g: &Array2<f64>| max_dev_from_identity(&g.mapv(|v| Complex64::new(v, 0.0)));
    // the 2D Gram matrix is the Kronecker product of the two 1D ones
    let (ex, ey) = (dev(&gx), dev(&gy));
    ex + ey + ex * ey
}

/// Matrix whose columns are the Laguerre–Kravchuk modes' Cartesian
/// coefficients (rows flattened `[n_x, n_y]`).
pub fn lk_coefficient_matrix(basis: &CartesianBasis) -> Result<Array2<Complex64>> {
    let labels = basis.lk_labels();
    let size = basis.shape().mode_count();
    let mut out = Array2::zeros((size, labels.len()));
    for (col, &(n, m)) in labels.iter().enumerate() {
        let c = basis.lk_coefficients(n, m)?;
        for (row, z) in c.coeffs().iter().enumerate() {
            out[[row, col]] = *z;
        }
    }
    Ok(out)
}

/// Gram deviation of the Laguerre–Kravchuk modes as pixel arrays.
pub fn lk_gram_defect(basis: &CartesianBasis) -> Result<f64> {
    let shape = basis.shape();
    let mut pixels = Array2::zeros((shape.mode_count(), shape.mode_count()));
    for (col, (n, m)) in basis.lk_labels().into_iter().enumerate() {
        for (row, z) in basis.lk_mode(n, m)?.pixels().iter().enumerate() {
            pixels[[row, col]] = *z;
        }
    }
    let gram = pixels.t().mapv(|z: Complex64| z.conj()).dot(&pixels);
    let completeness = pixels.dot(&pixels.t().mapv(|z: Complex64| z.conj()));
    Ok(max_dev_from_identity(&gram).max(max_dev_from_identity(&completeness)))
}

/// Largest `|Λ_{n,−m} − Λ_{n,m}^*|` over the screen.
pub fn lk_conjugation_defect(basis: &CartesianBasis) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (n, m) in basis.lk_labels() {
        if m > 0 {
            let a = basis.lk_mode(n, m)?;
            let b = basis.lk_mode(n, -m)?;
            worst = worst.max(b.max_abs_diff(&a.conj()));
        }
    }
    Ok(worst)
}

/// 0 when the levels of `shape` hold exactly `N_x N_y` modes and the
/// adjacent interval formulas agree on the boundary levels, 1 otherwise.
pub fn level_bookkeeping_defect(shape: ScreenShape) -> Result<f64> {
    let mut total = 0;
    for n in 0..=shape.max_level() {
        let lvl = level_spectrum(shape, n)?;
        let ok_mu = lvl
            .members
            .iter()
            .enumerate()
            .all(|(a, m)| m.two_mu == lvl.lambda.twice() as i32 - 2 * a as i32);
        if !ok_mu || lvl.members.len() != lvl.lambda.dim() {
            return Ok(1.0);
        }
        total += lvl.members.len();
    }
    let two_min = shape.jx().twice().min(shape.jy().twice());
    let two_max = shape.jx().twice().max(shape.jy().twice());
    let agree = |a: LevelInterval, b: LevelInterval, n: u32| -> Result<bool> {
        Ok(a.assignment(shape, n)? == b.assignment(shape, n)?)
    };
    let lower_mid = agree(LevelInterval::LowerTriangle, LevelInterval::MidRhomboid, two_min)?;
    let mid_upper = agree(LevelInterval::MidRhomboid, LevelInterval::UpperTriangle, two_max)?;
    Ok(if total == shape.mode_count() && lower_mid && mid_upper {
        0.0
    } else {
        1.0
    })
}

fn rel_norm_change(before: f64, after: f64) -> f64 {
    (after / before - 1.0).abs()
}

fn shape_label(shape: ScreenShape) -> String {
    format!("({},{})", shape.jx(), shape.jy())
}

/// Runs every check on every shape in `opts`.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (ut, ct) = (opts.unitary_tol, opts.compose_tol);

    report.push("Kravchuk = little-d(π/2), 2j ≤ 40", kravchuk_little_d_defect(40)?, ut);
    let mut d_orth: f64 = 0.0;
    for two_l in [1, 7, 24, 40] {
        let d = wigner_little_d(Spin::from_twice(two_l), 1.234).into_entries();
        let g = d.dot(&d.t()).mapv(|v| Complex64::new(v, 0.0));
        d_orth = d_orth.max(max_dev_from_identity(&g));
    }
    report.push("little-d orthogonality, 2λ ≤ 40", d_orth, ut);

    for &shape in &opts.shapes {
        let basis = CartesianBasis::new(shape);
        let tag = shape_label(shape);
        report.push(
            format!("{tag} level bookkeeping"),
            level_bookkeeping_defect(shape)?,
            0.0,
        );
        report.push(format!("{tag} Cartesian Gram"), cartesian_gram_defect(&basis), ut);
        report.push(format!("{tag} Laguerre-Kravchuk Gram"), lk_gram_defect(&basis)?, ut);
        report.push(
            format!("{tag} Λ(n,-m) = Λ(n,m)*"),
            lk_conjugation_defect(&basis)?,
            1e-12_f64.max(ut * 1e-2),
        );

        let mut unit = [0.0f64; 6];
        let mut round_trip: f64 = 0.0;
        let mut compose: [f64; 5] = [0.0; 5];
        let mut real_rot: f64 = 0.0;
        for _ in 0..opts.samples {
            let img = random_image(shape, &mut rng);
            let c = analyze(&basis, &img)?;
            let nrm = c.norm();
            round_trip = round_trip.max(synthesize(&basis, &c)?.max_abs_diff(&img));
            unit[0] = unit[0].max(rel_norm_change(img.norm(), nrm));
            let (t, g, chi, beta) = (
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
            );
            let el = random_element(&mut rng);
            unit[1] = unit[1].max(rel_norm_change(nrm, rotate_coeffs(&basis, &c, t)?.norm()));
            unit[2] = unit[2].max(rel_norm_change(nrm, ks_coeffs(&c, chi).norm()));
            unit[3] = unit[3].max(rel_norm_change(nrm, ka_coeffs(&c, beta).norm()));
            unit[4] = unit[4].max(rel_norm_change(nrm, gyrate_coeffs(&basis, &c, g)?.norm()));
            unit[5] = unit[5].max(rel_norm_change(img.norm(), apply_element(&basis, &img, &el)?.norm()));

            let rr = rotate_coeffs(&basis, &rotate_coeffs(&basis, &c, t)?, g)?;
            compose[0] = compose[0].max(rr.max_abs_diff(&rotate_coeffs(&basis, &c, t + g)?));
            let gg = gyrate_coeffs(&basis, &gyrate_coeffs(&basis, &c, t)?, g)?;
            compose[1] = compose[1].max(gg.max_abs_diff(&gyrate_coeffs(&basis, &c, t + g)?));
            compose[2] =
                compose[2].max(gyrate_coeffs(&basis, &c, g)?.max_abs_diff(&gyrate_sandwich_coeffs(&basis, &c, g)?));
            let el2 = random_element(&mut rng);
            let seq = apply_element(&basis, &apply_element(&basis, &img, &el2)?, &el)?;
            compose[3] = compose[3].max(seq.max_abs_diff(&apply_element(&basis, &img, &el.compose(&el2))?));
            let back = apply_element(&basis, &apply_element(&basis, &img, &el)?, &el.inverse())?;
            compose[4] = compose[4].max(back.max_abs_diff(&img));

            let re = Image::new(shape, img.pixels().mapv(|z| Complex64::new(z.re, 0.0)))?;
            let rc = analyze(&basis, &re)?;
            real_rot = real_rot.max(synthesize(&basis, &rotate_coeffs(&basis, &rc, t)?)?.max_imag());
        }
        let names = ["analysis (Parseval)", "R(θ)", "K_S(χ)", "K_A(β)", "G(γ)", "D(χ;ψ,θ,φ)"];
        for (name, v) in names.iter().zip(unit) {
            report.push(format!("{tag} unitarity {name}"), v, ut);
        }
        report.push(format!("{tag} synthesize∘analyze = 1"), round_trip, ut);
        let names = [
            "R(a)R(b) = R(a+b)",
            "G(a)G(b) = G(a+b)",
            "G block = K_A(π/4)R K_A(-π/4)",
            "D(a)D(b) = D(a∘b)",
            "D(a⁻¹)D(a) = 1",
        ];
        for (name, v) in names.iter().zip(compose) {
            report.push(format!("{tag} {name}"), v, ct);
        }
        report.push(format!("{tag} real images stay real under R(θ)"), real_rot, ut);

        let c = analyze(&basis, &random_image(shape, &mut rng))?;
        let mut six = c.clone();
        for _ in 0..6 {
            six = rotate_coeffs(&basis, &six, PI / 6.0)?;
        }
        let half = rotate_coeffs(&basis, &c, PI)?;
        report.push(format!("{tag} six R(π/6) = R(π)"), six.max_abs_diff(&half), ct);
        report.push(
            format!("{tag} R(π) = (-1)^(2λ) per level"),
            half_turn_sign_defect(&basis, &c, &half),
            ct,
        );
        report.push(
            format!("{tag} R(2π) = 1"),
            rotate_coeffs(&basis, &c, 2.0 * PI)?.max_abs_diff(&c),
            ct,
        );
        report.push(
            format!("{tag} checkerboard sign change"),
            checkerboard_defect(&basis)?,
            1e-12_f64.max(ut * 1e-2),
        );
    }

    // the pixel inversion coincides with R(π) when both axes have the same
    // spin (no mid rhomboid)
    let mut inv: f64 = 0.0;
    for &shape in &opts.shapes {
        let two_j = shape.jx().twice().min(shape.jy().twice());
        let square = CartesianBasis::new(ScreenShape::from_twice(two_j, two_j));
        let img = random_image(square.shape(), &mut rng);
        let r = crate::transforms::rotate(&square, &img, PI)?;
        inv = inv.max(r.max_abs_diff(&img.inverted()));
    }
    report.push("square screens: R(π) = inversion q → -q", inv, ct);
    Ok(report)
}

fn half_turn_sign_defect(basis: &CartesianBasis, c: &ModeCoefficients, half: &ModeCoefficients) -> f64 {
    let mut worst: f64 = 0.0;
    for level in basis.levels() {
        let sign = if level.lambda.twice() % 2 == 0 { 1.0 } else { -1.0 };
        for m in &level.members {
            worst = worst.max((half.get(m.mode) - c.get(m.mode) * sign).norm());
        }
    }
    worst
}

/// Mirror sign change of both axes, `Ψ_{2j−n}(q) = (−1)^{2j+s} Ψ_n(q)` with
/// `s = j + q`; for integer `j` this is `(−1)^{j+q}`, and the 2D checkerboard
/// is the product of the two axes.
pub fn checkerboard_defect(basis: &CartesianBasis) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for table in [basis.phi_x(), basis.phi_y()] {
        let two_j = table.nrows() - 1;
        for n in 0..=two_j {
            for s in 0..=two_j {
                let sign = if (two_j + s) % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((table[[two_j - n, s]] - sign * table[[n, s]]).abs());
            }
        }
    }
    Ok(worst)
}
