// `!(x <= tol)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod field;
pub mod group;
pub mod modes;
pub mod pipeline;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use field::{Image, ModeCoefficients};
pub use group::{FourierGroupElement, UnitaryRep2x2};
pub use modes::{level_spectrum, CartesianBasis, LevelSpectrum, ModeIndex, ScreenShape};
pub use special::Spin;
