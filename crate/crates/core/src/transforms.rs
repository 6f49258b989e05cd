//! Unitary action of the Fourier group on mode coefficients and images.
//!
//! Everything here works on [`ModeCoefficients`]; the image-level functions
//! are `analyze → coefficient map → synthesize` wrappers. Rotations and
//! gyrations act block-diagonally, one SU(2) multiplet (level) at a time,
//! and never move amplitude between levels.
//!
//! # Conventions
//!
//! Within a level, coefficients are ordered by descending `μ` as in
//! [`LevelSpectrum`](crate::modes::LevelSpectrum). A rotation by `θ` maps
//! the level's coefficient vector `c` to `d^λ(2θ) c`; positive `θ` turns
//! images counterclockwise (the `+x` dipole goes to the `+y` dipole at
//! `θ = π/2`). With this convention the gyration sandwich
//! `K_A(π/4) R(γ) K_A(−π/4)` equals the phase–little-d–phase block form
//! exactly, so both are provided and cross-checked.
//!
//! Composition reads right to left: in `A·B`, `B` acts first.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::Result;
use crate::field::{Image, ModeCoefficients};
use crate::group::FourierGroupElement;
use crate::modes::{CartesianBasis, LevelSpectrum};
use crate::special::{wigner_little_d, LittleDMatrix, Spin};

fn complexify(re: &Array2<f64>, im: &Array2<f64>) -> Array2<Complex64> {
    let mut out = Array2::zeros(re.dim());
    ndarray::Zip::from(&mut out)
        .and(re)
        .and(im)
        .for_each(|o, &r, &i| *o = Complex64::new(r, i));
    out
}

/// Expansion coefficients `F_{n_x,n_y} = Σ_q F(q) Ψ_{n_x}(q_x) Ψ_{n_y}(q_y)`.
pub fn analyze(basis: &CartesianBasis, image: &Image) -> Result<ModeCoefficients> {
    basis.check_image(image)?;
    let (px, py) = (basis.phi_x(), basis.phi_y());
    let re = px.dot(&image.pixels().mapv(|z| z.re)).dot(&py.t());
    let im = px.dot(&image.pixels().mapv(|z| z.im)).dot(&py.t());
    ModeCoefficients::new(basis.shape(), complexify(&re, &im))
}

/// Inverse of [`analyze`]: `F(q) = Σ_n F_{n_x,n_y} Ψ_{n_x}(q_x) Ψ_{n_y}(q_y)`.
pub fn synthesize(basis: &CartesianBasis, coeffs: &ModeCoefficients) -> Result<Image> {
    basis.check_shape(coeffs.shape())?;
    let (px, py) = (basis.phi_x(), basis.phi_y());
    let re = px.t().dot(&coeffs.coeffs().mapv(|z| z.re)).dot(py);
    let im = px.t().dot(&coeffs.coeffs().mapv(|z| z.im)).dot(py);
    Image::new(basis.shape(), complexify(&re, &im))
}

/// Little-d blocks keyed by `2λ`, computed once per call.
struct LittleDCache {
    beta: f64,
    blocks: HashMap<u32, LittleDMatrix>,
}

impl LittleDCache {
    fn new(beta: f64) -> Self {
        LittleDCache {
            beta,
            blocks: HashMap::new(),
        }
    }

    fn get(&mut self, lambda: Spin) -> &Array2<f64> {
        let beta = self.beta;
        self.blocks
            .entry(lambda.twice())
            .or_insert_with(|| wigner_little_d(lambda, beta))
            .entries()
    }
}

/// Applies `block(level)` to each level's coefficient vector.
fn map_levels<F>(basis: &CartesianBasis, coeffs: &ModeCoefficients, mut block: F) -> Result<ModeCoefficients>
where
    F: FnMut(&LevelSpectrum) -> Array2<Complex64>,
{
    basis.check_shape(coeffs.shape())?;
    let mut out = ModeCoefficients::zeros(coeffs.shape());
    for level in basis.levels() {
        let idx: Vec<[usize; 2]> = level
            .members
            .iter()
            .map(|m| [m.mode.nx as usize, m.mode.ny as usize])
            .collect();
        let v: Array1<Complex64> = idx.iter().map(|&i| coeffs.coeffs()[i]).collect();
        let w = block(level).dot(&v);
        for (i, z) in idx.into_iter().zip(w) {
            out.coeffs_mut()[i] = z;
        }
    }
    Ok(out)
}

fn real_block(d: &Array2<f64>) -> Array2<Complex64> {
    d.mapv(|x| Complex64::new(x, 0.0))
}

/// Per-member phases `e^{−iα·k}` for a per-member weight `k`.
fn phases(level: &LevelSpectrum, alpha: f64, weight: impl Fn(i32, i32) -> f64) -> Vec<Complex64> {
    level
        .members
        .iter()
        .map(|m| Complex64::from_polar(1.0, -alpha * weight(m.mode.m(), m.two_mu)))
        .collect()
}

/// `diag(left) · block · diag(right)`.
fn sandwich(left: &[Complex64], block: &Array2<f64>, right: &[Complex64]) -> Array2<Complex64> {
    Array2::from_shape_fn(block.dim(), |(a, b)| left[a] * block[[a, b]] * right[b])
}

/// Imported rotation `R(θ)`: `d^{λ(n)}(2θ)` within each level.
pub fn rotate_coeffs(basis: &CartesianBasis, coeffs: &ModeCoefficients, theta: f64) -> Result<ModeCoefficients> {
    let mut cache = LittleDCache::new(2.0 * theta);
    map_levels(basis, coeffs, |level| real_block(cache.get(level.lambda)))
}

/// Symmetric fractional Fourier–Kravchuk transform `K_S(χ)`: phase
/// `e^{−iχ(n_x+n_y)}`.
pub fn ks_coeffs(coeffs: &ModeCoefficients, chi: f64) -> ModeCoefficients {
    phase_map(coeffs, |nx, ny| -chi * f64::from(nx + ny))
}

/// Antisymmetric fractional Fourier–Kravchuk transform `K_A(β)`: phase
/// `e^{−iβ(n_x−n_y)}`.
pub fn ka_coeffs(coeffs: &ModeCoefficients, beta: f64) -> ModeCoefficients {
    phase_map(coeffs, |nx, ny| -beta * (f64::from(nx) - f64::from(ny)))
}

/// `K_A(β)` with `n_x − n_y` replaced by the level projection `2μ`.
///
/// In the mid rhomboid and upper triangle `n_x − n_y` and `2μ` differ by a
/// constant per level; this version drops that level-dependent phase, so
/// that it composes with rotations and gyrations as a genuine SU(2)
/// rotation about the 3-axis. It is the form used by [`apply_element_coeffs`].
pub fn ka_level_coeffs(basis: &CartesianBasis, coeffs: &ModeCoefficients, beta: f64) -> Result<ModeCoefficients> {
    map_levels(basis, coeffs, |level| {
        Array2::from_diag(&Array1::from(phases(level, beta, |_, two_mu| f64::from(two_mu))))
    })
}

fn phase_map(coeffs: &ModeCoefficients, angle: impl Fn(u32, u32) -> f64) -> ModeCoefficients {
    let mut out = coeffs.clone();
    for ((nx, ny), z) in out.coeffs_mut().indexed_iter_mut() {
        *z *= Complex64::from_polar(1.0, angle(nx as u32, ny as u32));
    }
    out
}

/// Gyration `G(γ)` in block form: within each level the Cartesian mode
/// `Ψ_a` goes to `e^{−iπm_a/4} Σ_b d_{ab}(2γ) e^{iπm_b/4} Ψ_b` with
/// `m = n_x − n_y`.
pub fn gyrate_coeffs(basis: &CartesianBasis, coeffs: &ModeCoefficients, gamma: f64) -> Result<ModeCoefficients> {
    let mut cache = LittleDCache::new(2.0 * gamma);
    map_levels(basis, coeffs, |level| {
        let left = phases(level, FRAC_PI_4, |m, _| f64::from(m));
        let right: Vec<Complex64> = left.iter().map(|z| z.conj()).collect();
        // basis map M = diag(left) d diag(right); coefficients move by Mᵀ
        sandwich(&left, cache.get(level.lambda), &right).reversed_axes()
    })
}

/// Gyration as `K_A(π/4) R(γ) K_A(−π/4)`, composed from the individual
/// transforms. Agrees with [`gyrate_coeffs`].
pub fn gyrate_sandwich_coeffs(
    basis: &CartesianBasis,
    coeffs: &ModeCoefficients,
    gamma: f64,
) -> Result<ModeCoefficients> {
    let c = ka_coeffs(coeffs, -FRAC_PI_4);
    let c = rotate_coeffs(basis, &c, gamma)?;
    Ok(ka_coeffs(&c, FRAC_PI_4))
}

/// General element `D(χ; ψ, θ, φ) = K_S(χ/2) K_A(ψ/2) G(θ/2) K_A(φ/2)`,
/// with the level form of `K_A` (see [`ka_level_coeffs`]). Built as one
/// block per level.
pub fn apply_element_coeffs(
    basis: &CartesianBasis,
    coeffs: &ModeCoefficients,
    element: &FourierGroupElement,
) -> Result<ModeCoefficients> {
    let mut cache = LittleDCache::new(element.theta);
    map_levels(basis, coeffs, |level| {
        let central = Complex64::from_polar(1.0, -element.chi * f64::from(level.n) / 2.0);
        let gyr = phases(level, FRAC_PI_4, |m, _| f64::from(m));
        let left: Vec<Complex64> = phases(level, element.psi / 2.0, |_, two_mu| f64::from(two_mu))
            .into_iter()
            .zip(&gyr)
            .map(|(p, g)| central * p * g)
            .collect();
        let right: Vec<Complex64> = phases(level, element.phi / 2.0, |_, two_mu| f64::from(two_mu))
            .into_iter()
            .zip(&gyr)
            .map(|(p, g)| p * g.conj())
            .collect();
        // K_A(ψ/2)·G(θ/2)·K_A(φ/2) as a coefficient matrix is
        // diag(e^{−iψμ}) Φ d(θ) Φ* diag(e^{−iφμ}), Φ = diag(e^{−iπm/4})
        sandwich(&left, cache.get(level.lambda), &right)
    })
}

/// The same element through the rotation form
/// `K_S(χ/2) K_A(ψ/2 + π/4) R(θ/2) K_A(φ/2 − π/4)`, one transform at a
/// time. Used as an independent check of [`apply_element_coeffs`].
pub fn apply_element_rotation_form(
    basis: &CartesianBasis,
    coeffs: &ModeCoefficients,
    element: &FourierGroupElement,
) -> Result<ModeCoefficients> {
    let c = ka_level_coeffs(basis, coeffs, element.phi / 2.0 - FRAC_PI_4)?;
    let c = rotate_coeffs(basis, &c, element.theta / 2.0)?;
    let c = ka_level_coeffs(basis, &c, element.psi / 2.0 + FRAC_PI_4)?;
    Ok(ks_coeffs(&c, element.chi / 2.0))
}

fn via_coeffs<F>(basis: &CartesianBasis, image: &Image, f: F) -> Result<Image>
where
    F: FnOnce(&ModeCoefficients) -> Result<ModeCoefficients>,
{
    let c = analyze(basis, image)?;
    synthesize(basis, &f(&c)?)
}

/// Rotates an image by `θ` (counterclockwise for `θ > 0`).
pub fn rotate(basis: &CartesianBasis, image: &Image, theta: f64) -> Result<Image> {
    via_coeffs(basis, image, |c| rotate_coeffs(basis, c, theta))
}

pub fn gyrate(basis: &CartesianBasis, image: &Image, gamma: f64) -> Result<Image> {
    via_coeffs(basis, image, |c| gyrate_coeffs(basis, c, gamma))
}

/// `K_S(χ)` on an image.
pub fn fourier_symmetric(basis: &CartesianBasis, image: &Image, chi: f64) -> Result<Image> {
    via_coeffs(basis, image, |c| Ok(ks_coeffs(c, chi)))
}

/// `K_A(β)` on an image (literal `n_x − n_y` phases).
pub fn fourier_antisymmetric(basis: &CartesianBasis, image: &Image, beta: f64) -> Result<Image> {
    via_coeffs(basis, image, |c| Ok(ka_coeffs(c, beta)))
}

pub fn apply_element(basis: &CartesianBasis, image: &Image, element: &FourierGroupElement) -> Result<Image> {
    via_coeffs(basis, image, |c| apply_element_coeffs(basis, c, element))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{ModeIndex, ScreenShape};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn random_coeffs(shape: ScreenShape, rng: &mut ChaCha8Rng) -> ModeCoefficients {
        let a = Array2::from_shape_fn((shape.nx(), shape.ny()), |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        ModeCoefficients::new(shape, a).unwrap()
    }

    fn random_image(shape: ScreenShape, rng: &mut ChaCha8Rng) -> Image {
        Image::new(shape, random_coeffs(shape, rng).coeffs().clone()).unwrap()
    }

    fn basis(two_jx: u32, two_jy: u32) -> CartesianBasis {
        CartesianBasis::new(ScreenShape::from_twice(two_jx, two_jy))
    }

    #[test]
    fn analyze_mode_gives_delta() {
        let b = basis(10, 6);
        let img = b.cartesian_mode(ModeIndex::new(2, 1)).unwrap();
        let c = analyze(&b, &img).unwrap();
        let want = ModeCoefficients::delta(b.shape(), ModeIndex::new(2, 1)).unwrap();
        assert!(c.max_abs_diff(&want) < 1e-13);
    }

    #[test]
    fn analysis_round_trip_and_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for b in [basis(10, 6), basis(5, 2), basis(3, 8)] {
            let img = random_image(b.shape(), &mut rng);
            let c = analyze(&b, &img).unwrap();
            assert!((c.norm() - img.norm()).abs() < 1e-12);
            assert!(synthesize(&b, &c).unwrap().max_abs_diff(&img) < 1e-12);
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let b = basis(10, 6);
        let img = Image::zeros(ScreenShape::from_twice(6, 10));
        assert!(analyze(&b, &img).is_err());
        assert!(rotate_coeffs(&b, &ModeCoefficients::zeros(ScreenShape::from_twice(4, 4)), 0.1).is_err());
    }

    #[test]
    fn rotation_by_zero_and_full_turn() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = basis(10, 6);
        let c = random_coeffs(b.shape(), &mut rng);
        assert!(rotate_coeffs(&b, &c, 0.0).unwrap().max_abs_diff(&c) < 1e-14);
        assert!(rotate_coeffs(&b, &c, 2.0 * PI).unwrap().max_abs_diff(&c) < 1e-12);
    }

    #[test]
    fn rotation_by_half_turn_is_level_sign() {
        // d^λ(2π) = (−1)^{2λ}
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = basis(4, 2);
        let c = random_coeffs(b.shape(), &mut rng);
        let r = rotate_coeffs(&b, &c, PI).unwrap();
        for level in b.levels() {
            let sign = if level.lambda.twice() % 2 == 0 { 1.0 } else { -1.0 };
            for m in &level.members {
                assert!((r.get(m.mode) - c.get(m.mode) * sign).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn half_turn_inverts_square_screens() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for two_j in [1, 2, 5, 8] {
            let b = basis(two_j, two_j);
            let img = random_image(b.shape(), &mut rng);
            let r = rotate(&b, &img, PI).unwrap();
            assert!(r.max_abs_diff(&img.inverted()) < 1e-12, "2j = {two_j}");
        }
    }

    #[test]
    fn half_turn_on_rectangle_differs_from_inversion_on_mixed_parity_levels() {
        // On (2j_x, 2j_y) = (4, 2) the mid level n = 3 has 2λ = 2 even but
        // odd Cartesian parity, so R(π) keeps it while inversion flips it.
        let b = basis(4, 2);
        let img = b.cartesian_mode(ModeIndex::new(2, 1)).unwrap();
        let r = rotate(&b, &img, PI).unwrap();
        assert!(r.max_abs_diff(&img) < 1e-12);
        assert!(img.inverted().max_abs_diff(&img.scale(Complex64::new(-1.0, 0.0))) < 1e-12);
    }

    #[test]
    fn quarter_turn_is_counterclockwise() {
        // Ψ_{1,0} is odd in q_x: after θ = π/2 it must be odd in q_y with
        // the same orientation, i.e. Ψ_{0,1}.
        let b = basis(2, 2);
        let c = ModeCoefficients::delta(b.shape(), ModeIndex::new(1, 0)).unwrap();
        let r = rotate_coeffs(&b, &c, FRAC_PI_2).unwrap();
        let want = ModeCoefficients::delta(b.shape(), ModeIndex::new(0, 1)).unwrap();
        assert!(r.max_abs_diff(&want) < 1e-14);
        // the positive lobe of Ψ_{1,0} at +x lands on the positive lobe of Ψ_{0,1} at +y
        let x = b.cartesian_mode(ModeIndex::new(1, 0)).unwrap();
        let y = b.cartesian_mode(ModeIndex::new(0, 1)).unwrap();
        assert!(x.at(2, 0).unwrap().re > 0.0 && y.at(0, 2).unwrap().re > 0.0);
    }

    #[test]
    fn six_sixth_turns_equal_half_turn() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = basis(40, 24);
        let c = random_coeffs(b.shape(), &mut rng);
        let mut r = c.clone();
        for _ in 0..6 {
            r = rotate_coeffs(&b, &r, PI / 6.0).unwrap();
        }
        assert!(r.max_abs_diff(&rotate_coeffs(&b, &c, PI).unwrap()) < 1e-10);
    }

    #[test]
    fn rotation_keeps_real_images_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let b = basis(10, 6);
        let re = Array2::from_shape_fn((11, 7), |_| rng.random_range(0.0..1.0));
        let img = Image::from_real(b.shape(), &re).unwrap();
        assert!(rotate(&b, &img, 0.37).unwrap().max_imag() < 1e-13);
    }

    #[test]
    fn levels_do_not_mix() {
        let b = basis(10, 6);
        let c = ModeCoefficients::delta(b.shape(), ModeIndex::new(6, 3)).unwrap();
        let el = FourierGroupElement::new(0.3, 1.0, 0.7, 2.2);
        for out in [
            rotate_coeffs(&b, &c, 0.4).unwrap(),
            gyrate_coeffs(&b, &c, 0.4).unwrap(),
            apply_element_coeffs(&b, &c, &el).unwrap(),
        ] {
            for ((nx, ny), z) in out.coeffs().indexed_iter() {
                if nx + ny != 9 {
                    assert_eq!(*z, Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn transposed_screen_rotates_the_other_way() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = basis(7, 4);
        let bt = basis(4, 7);
        let img = random_image(b.shape(), &mut rng);
        let lhs = rotate(&bt, &img.transposed(), 0.45).unwrap();
        let rhs = rotate(&b, &img, -0.45).unwrap().transposed();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn phase_transforms() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let b = basis(10, 6);
        let c = random_coeffs(b.shape(), &mut rng);
        assert!(ks_coeffs(&c, 2.0 * PI).max_abs_diff(&c) < 1e-12);
        let k = ka_coeffs(&c, PI);
        for ((nx, ny), z) in k.coeffs().indexed_iter() {
            let sign = if (nx + ny) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((z - c.coeffs()[[nx, ny]] * sign).norm() < 1e-12);
        }
        let two = ka_coeffs(&ka_coeffs(&c, 0.3), 0.9);
        assert!(two.max_abs_diff(&ka_coeffs(&c, 1.2)) < 1e-12);
        let a = ks_coeffs(&rotate_coeffs(&b, &c, 0.5).unwrap(), 0.8);
        let z = rotate_coeffs(&b, &ks_coeffs(&c, 0.8), 0.5).unwrap();
        assert!(a.max_abs_diff(&z) < 1e-12);
    }

    #[test]
    fn gyration_block_equals_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for b in [basis(22, 14), basis(14, 22), basis(5, 5), basis(7, 2)] {
            let c = random_coeffs(b.shape(), &mut rng);
            for k in 1..=4 {
                let g = PI * f64::from(k) / 16.0;
                let direct = gyrate_coeffs(&b, &c, g).unwrap();
                let sandwich = gyrate_sandwich_coeffs(&b, &c, g).unwrap();
                assert!(direct.max_abs_diff(&sandwich) < 1e-12);
            }
        }
    }

    #[test]
    fn gyration_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let b = basis(10, 6);
        let c = random_coeffs(b.shape(), &mut rng);
        let two = gyrate_coeffs(&b, &gyrate_coeffs(&b, &c, 0.3).unwrap(), 0.5).unwrap();
        assert!(two.max_abs_diff(&gyrate_coeffs(&b, &c, 0.8).unwrap()) < 1e-12);
        assert!(gyrate_coeffs(&b, &c, 0.0).unwrap().max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn quarter_gyration_produces_lk_modes() {
        // G(π/4) δ_a = e^{iπλ/2} Λ_{n,m}: Λ carries a level phase.
        let b = basis(10, 6);
        for level in b.levels() {
            let omega = Complex64::from_polar(1.0, PI * level.lambda.value() / 2.0);
            for m in &level.members {
                let c = ModeCoefficients::delta(b.shape(), m.mode).unwrap();
                let g = gyrate_coeffs(&b, &c, FRAC_PI_4).unwrap();
                let lk = b.lk_coefficients(level.n, m.two_mu).unwrap().scale(omega);
                assert!(g.max_abs_diff(&lk) < 1e-13);
            }
        }
    }

    #[test]
    fn spin_half_gyration_mixes_dipoles() {
        let b = basis(1, 1);
        let c = ModeCoefficients::delta(b.shape(), ModeIndex::new(1, 0)).unwrap();
        let g = gyrate_coeffs(&b, &c, FRAC_PI_4).unwrap();
        assert!((g.get(ModeIndex::new(1, 0)).norm() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((g.get(ModeIndex::new(0, 1)).norm() - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn element_reduces_to_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = basis(10, 6);
        let c = random_coeffs(b.shape(), &mut rng);
        let id = apply_element_coeffs(&b, &c, &FourierGroupElement::IDENTITY).unwrap();
        assert!(id.max_abs_diff(&c) < 1e-13);
        let g = apply_element_coeffs(&b, &c, &FourierGroupElement::new(0.0, 0.0, 0.9, 0.0)).unwrap();
        assert!(g.max_abs_diff(&gyrate_coeffs(&b, &c, 0.45).unwrap()) < 1e-12);
        let el = FourierGroupElement::new(0.7, 1.3, 0.0, 0.4);
        let p = apply_element_coeffs(&b, &c, &el).unwrap();
        let want = ks_coeffs(&ka_level_coeffs(&b, &c, (1.3 + 0.4) / 2.0).unwrap(), 0.35);
        assert!(p.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn level_ka_matches_literal_ka_in_lower_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let b = basis(10, 6);
        let c = random_coeffs(b.shape(), &mut rng);
        let lit = ka_coeffs(&c, 0.6);
        let lvl = ka_level_coeffs(&b, &c, 0.6).unwrap();
        for n in 0..=6u32 {
            for m in &b.level(n).unwrap().members {
                assert!((lit.get(m.mode) - lvl.get(m.mode)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn element_rotation_form_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let b = basis(22, 14);
        let c = random_coeffs(b.shape(), &mut rng);
        for _ in 0..5 {
            let el = FourierGroupElement::new(
                rng.random_range(0.0..4.0 * PI),
                rng.random_range(0.0..4.0 * PI),
                rng.random_range(0.0..PI),
                rng.random_range(0.0..2.0 * PI),
            );
            let a = apply_element_coeffs(&b, &c, &el).unwrap();
            let z = apply_element_rotation_form(&b, &c, &el).unwrap();
            assert!(a.max_abs_diff(&z) < 1e-11);
        }
    }

    #[test]
    fn operations_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let b = basis(22, 14);
        let c = random_coeffs(b.shape(), &mut rng);
        let el = FourierGroupElement::new(1.0, 2.0, 0.5, 3.0);
        let outs = [
            rotate_coeffs(&b, &c, 0.77).unwrap(),
            gyrate_coeffs(&b, &c, 0.77).unwrap(),
            ks_coeffs(&c, 0.77),
            ka_coeffs(&c, 0.77),
            apply_element_coeffs(&b, &c, &el).unwrap(),
        ];
        for o in outs {
            assert!((o.norm() / c.norm() - 1.0).abs() < 1e-12);
        }
    }
}
