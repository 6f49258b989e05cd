//! Parameters of the Fourier group `U(2)_F`, their 2×2 unitary
//! representation, composition, inversion and Euler-angle extraction.
//!
//! An element `(χ; ψ, θ, φ)` stands for
//! `U = e^{−iχ/2} · e^{−iψσ₃/2} e^{−iθσ₂/2} e^{−iφσ₃/2}`.
//!
//! On images the element acts level by level through `e^{−iχn/2}` and the
//! spin-`λ(n)` representation of the SU(2) part. Levels whose `n` and `2λ`
//! have different parity (mid rhomboid of a rectangle) tell `(χ, u)` apart
//! from `(χ + 2π, −u)`, which share the same 2×2 matrix. Composition and
//! inversion therefore track the covering pair: `χ` modulo `4π` and the
//! SU(2) factor `u` itself, with canonical ranges
//! `χ, ψ ∈ [0, 4π)`, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;
const GIMBAL_EPS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierGroupElement {
    pub chi: f64,
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

/// A complex 2×2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryRep2x2 {
    pub entries: [[Complex64; 2]; 2],
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period`
    if r >= period {
        0.0
    } else {
        r
    }
}

impl UnitaryRep2x2 {
    pub const IDENTITY: UnitaryRep2x2 = UnitaryRep2x2 {
        entries: [[c_const(1.0), c_const(0.0)], [c_const(0.0), c_const(1.0)]],
    };

    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        UnitaryRep2x2 { entries }
    }

    pub fn mul(&self, other: &UnitaryRep2x2) -> UnitaryRep2x2 {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, z) in row.iter_mut().enumerate() {
                *z = a[i][0] * b[0][k] + a[i][1] * b[1][k];
            }
        }
        UnitaryRep2x2 { entries: out }
    }

    pub fn adjoint(&self) -> UnitaryRep2x2 {
        let e = &self.entries;
        UnitaryRep2x2 {
            entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]],
        }
    }

    pub fn scale(&self, z: Complex64) -> UnitaryRep2x2 {
        UnitaryRep2x2 {
            entries: self.entries.map(|row| row.map(|x| x * z)),
        }
    }

    pub fn det(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// Largest entry of `|U U† − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&UnitaryRep2x2::IDENTITY)
    }

    pub fn max_abs_diff(&self, other: &UnitaryRep2x2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                let d = (self.entries[i][k] - other.entries[i][k]).norm();
                // f64::max would swallow a NaN
                if d.is_nan() {
                    return f64::NAN;
                }
                m = m.max(d);
            }
        }
        m
    }
}

const fn c_const(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `e^{−iψσ₃/2} e^{−iθσ₂/2} e^{−iφσ₃/2}`.
fn su2(psi: f64, theta: f64, phi: f64) -> UnitaryRep2x2 {
    let (s, co) = (theta / 2.0).sin_cos();
    let ep = Complex64::from_polar(1.0, -(psi + phi) / 2.0);
    let em = Complex64::from_polar(1.0, -(psi - phi) / 2.0);
    UnitaryRep2x2::new([[ep * co, -em * s], [em.conj() * s, ep.conj() * co]])
}

/// Euler angles of `u ∈ SU(2)`, `ψ ∈ [0, 4π)`, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
fn su2_angles(u: &UnitaryRep2x2) -> (f64, f64, f64) {
    let (u00, u10) = (u.entries[0][0], u.entries[1][0]);
    let theta = 2.0 * u10.norm().atan2(u00.norm());
    let (psi, phi) = if u10.norm() < GIMBAL_EPS {
        (-2.0 * u00.arg(), 0.0)
    } else if u00.norm() < GIMBAL_EPS {
        (2.0 * u10.arg(), 0.0)
    } else {
        let sum = -2.0 * u00.arg(); // ψ + φ
        let diff = 2.0 * u10.arg(); // ψ − φ
        let (psi, phi) = ((sum + diff) / 2.0, (sum - diff) / 2.0);
        // (ψ, φ) and (ψ + 2π, φ + 2π) give the same u
        let shift = TAU * (phi / TAU).floor();
        (psi - shift, phi - shift)
    };
    (wrap(psi, 2.0 * TAU), theta, wrap(phi, TAU))
}

impl FourierGroupElement {
    pub const IDENTITY: FourierGroupElement = FourierGroupElement {
        chi: 0.0,
        psi: 0.0,
        theta: 0.0,
        phi: 0.0,
    };

    pub const fn new(chi: f64, psi: f64, theta: f64, phi: f64) -> Self {
        FourierGroupElement { chi, psi, theta, phi }
    }

    fn su2_part(&self) -> UnitaryRep2x2 {
        su2(self.psi, self.theta, self.phi)
    }

    fn from_cover(chi: f64, u: &UnitaryRep2x2) -> Self {
        let (psi, theta, phi) = su2_angles(u);
        FourierGroupElement::new(wrap(chi, 2.0 * TAU), psi, theta, phi)
    }

    /// `U = e^{−iχ/2} e^{−iψσ₃/2} e^{−iθσ₂/2} e^{−iφσ₃/2}`.
    pub fn to_matrix(&self) -> UnitaryRep2x2 {
        self.su2_part().scale(Complex64::from_polar(1.0, -self.chi / 2.0))
    }

    /// Canonical parameters of a unitary matrix. Since `U` alone does not
    /// fix the `4π` branch of `χ`, the result always has `ψ < 2π`.
    pub fn from_matrix(u: &UnitaryRep2x2) -> Result<Self> {
        let defect = u.unitarity_defect();
        if !(defect <= 1e-10) {
            return Err(Error::NotUnitary(defect));
        }
        let chi = wrap(-u.det().arg(), TAU);
        let su = u.scale(Complex64::from_polar(1.0, chi / 2.0));
        let mut el = FourierGroupElement::from_cover(chi, &su);
        if el.psi >= TAU {
            el.psi -= TAU;
            el.chi = wrap(el.chi + TAU, 2.0 * TAU);
        }
        Ok(el)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &FourierGroupElement) -> FourierGroupElement {
        let u = self.su2_part().mul(&other.su2_part());
        FourierGroupElement::from_cover(self.chi + other.chi, &u)
    }

    pub fn inverse(&self) -> FourierGroupElement {
        FourierGroupElement::from_cover(-self.chi, &self.su2_part().adjoint())
    }

    /// Same parameters brought to the canonical ranges.
    pub fn canonical(&self) -> FourierGroupElement {
        FourierGroupElement::from_cover(self.chi, &self.su2_part())
    }

    /// Largest difference between the two elements as covering-group
    /// points: `|Δχ|` modulo `4π` against the SU(2) matrix difference.
    pub fn distance(&self, other: &FourierGroupElement) -> f64 {
        let dchi = wrap(self.chi - other.chi + TAU, 2.0 * TAU) - TAU;
        dchi.abs().max(self.su2_part().max_abs_diff(&other.su2_part()))
    }
}

impl Default for FourierGroupElement {
    fn default() -> Self {
        FourierGroupElement::IDENTITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{wigner_little_d, Spin};
    use proptest::prelude::*;

    fn angles() -> impl Strategy<Value = FourierGroupElement> {
        (0.0..2.0 * TAU, 0.0..2.0 * TAU, 0.0..PI, 0.0..TAU)
            .prop_map(|(chi, psi, theta, phi)| FourierGroupElement::new(chi, psi, theta, phi))
    }

    #[test]
    fn identity_matrix() {
        let u = FourierGroupElement::IDENTITY.to_matrix();
        assert!(u.max_abs_diff(&UnitaryRep2x2::IDENTITY) < 1e-15);
        assert_eq!(
            FourierGroupElement::from_matrix(&u).unwrap(),
            FourierGroupElement::IDENTITY
        );
    }

    #[test]
    fn half_turn_matches_spin_half_little_d() {
        let u = FourierGroupElement::new(0.0, 0.0, PI, 0.0).to_matrix();
        let d = wigner_little_d(Spin::from_twice(1), PI);
        for i in 0..2 {
            for k in 0..2 {
                assert!((u.entries[i][k] - c(d.entries()[[i, k]], 0.0)).norm() < 1e-15);
            }
        }
        assert!((u.entries[0][1] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn central_element() {
        let a = 0.8;
        let z = Complex64::from_polar(1.0, -a);
        let u = UnitaryRep2x2::new([[z, c(0.0, 0.0)], [c(0.0, 0.0), z]]);
        let el = FourierGroupElement::from_matrix(&u).unwrap();
        assert!((el.chi - 2.0 * a).abs() < 1e-14);
        assert!(el.psi.abs() < 1e-14 && el.theta.abs() < 1e-14 && el.phi.abs() < 1e-14);
    }

    #[test]
    fn non_unitary_rejected() {
        let u = UnitaryRep2x2::IDENTITY.scale(c(1.1, 0.0));
        assert!(matches!(
            FourierGroupElement::from_matrix(&u),
            Err(Error::NotUnitary(_))
        ));
        let nan = UnitaryRep2x2::IDENTITY.scale(c(f64::NAN, 0.0));
        assert!(FourierGroupElement::from_matrix(&nan).is_err());
    }

    #[test]
    fn gimbal_cases_fold_into_psi() {
        let el = FourierGroupElement::new(0.0, 0.4, 0.0, 0.9).canonical();
        assert!((el.psi - 1.3).abs() < 1e-14 && el.phi == 0.0);
        let el = FourierGroupElement::new(0.0, 0.4, PI, 0.9).canonical();
        assert!(el.phi == 0.0 && (el.theta - PI).abs() < 1e-14);
        assert!(el.distance(&FourierGroupElement::new(0.0, 0.4, PI, 0.9)) < 1e-14);
    }

    #[test]
    fn rotations_about_same_axis_add() {
        let a = FourierGroupElement::new(0.0, 0.0, 0.5, 0.0);
        let b = FourierGroupElement::new(0.0, 0.0, 0.9, 0.0);
        let ab = a.compose(&b);
        assert!(ab.distance(&FourierGroupElement::new(0.0, 0.0, 1.4, 0.0)) < 1e-14);
        assert!((ab.theta - 1.4).abs() < 1e-14);
    }

    #[test]
    fn chi_only_inverse_negates_chi() {
        let el = FourierGroupElement::new(1.0, 0.0, 0.0, 0.0).inverse();
        assert!((el.chi - (2.0 * TAU - 1.0)).abs() < 1e-14);
        assert_eq!(FourierGroupElement::IDENTITY.inverse(), FourierGroupElement::IDENTITY);
    }

    #[test]
    fn chi_period_is_four_pi() {
        let a = FourierGroupElement::new(TAU, 0.0, 0.0, 0.0);
        assert!(a.compose(&a).distance(&FourierGroupElement::IDENTITY) < 1e-14);
        assert!(a.distance(&FourierGroupElement::IDENTITY) > 6.0);
    }

    #[test]
    fn json_shape() {
        let el = FourierGroupElement::new(0.1, 0.2, 0.3, 0.4);
        let s = serde_json::to_string(&el).unwrap();
        assert_eq!(s, r#"{"chi":0.1,"psi":0.2,"theta":0.3,"phi":0.4}"#);
        assert_eq!(serde_json::from_str::<FourierGroupElement>(&s).unwrap(), el);
    }

    proptest! {
        #[test]
        fn canonical_round_trip(el in angles()) {
            let back = el.canonical();
            prop_assert!((back.chi - el.chi).abs() < 1e-10);
            prop_assert!((back.psi - el.psi).abs() < 1e-10);
            prop_assert!((back.theta - el.theta).abs() < 1e-10);
            prop_assert!((back.phi - el.phi).abs() < 1e-10);
        }

        #[test]
        fn matrix_round_trip(el in angles()) {
            let u = el.to_matrix();
            let back = FourierGroupElement::from_matrix(&u).unwrap();
            prop_assert!(back.psi < TAU && back.chi < 2.0 * TAU && back.phi < TAU);
            prop_assert!(back.theta >= 0.0 && back.theta <= PI);
            prop_assert!(back.to_matrix().max_abs_diff(&u) < 1e-10);
        }

        #[test]
        fn to_matrix_is_homomorphism(a in angles(), b in angles()) {
            let lhs = a.compose(&b).to_matrix();
            let rhs = a.to_matrix().mul(&b.to_matrix());
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn compose_with_inverse(a in angles()) {
            prop_assert!(a.compose(&a.inverse()).distance(&FourierGroupElement::IDENTITY) < 1e-10);
            prop_assert!(a.inverse().compose(&a).distance(&FourierGroupElement::IDENTITY) < 1e-10);
            prop_assert!(a.compose(&FourierGroupElement::IDENTITY).distance(&a) < 1e-12);
        }

        #[test]
        fn compose_is_associative(a in angles(), b in angles(), e in angles()) {
            let l = a.compose(&b).compose(&e);
            let r = a.compose(&b.compose(&e));
            prop_assert!(l.distance(&r) < 1e-10);
        }

        #[test]
        fn extraction_ranges(a in angles(), b in angles()) {
            let e = a.compose(&b);
            prop_assert!((0.0..2.0 * TAU).contains(&e.chi));
            prop_assert!((0.0..2.0 * TAU).contains(&e.psi));
            prop_assert!((0.0..=PI).contains(&e.theta));
            prop_assert!((0.0..TAU).contains(&e.phi));
        }
    }
}
