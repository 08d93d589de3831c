//! Interbasis transformations for the nine-dimensional MICZ-Kepler problem.
//!
//! The crate computes the matrices connecting the spherical, parabolic and
//! prolate spheroidal eigenbases of a degenerate block (a [`Sector`]), both in
//! exact `c·√d` arithmetic and in `f64`, together with independent numeric
//! oracles (quadrature, Clebsch–Gordan sums, ODE residuals) that cross-check
//! every closed form.
//!
//! ```
//! use micz_core::{interbasis, Sector};
//!
//! let s = Sector::new(1, 0, 0, 0, 1).unwrap();
//! let w = interbasis::w_matrix(&s).unwrap();
//! assert!((w.to_f64()[(0, 0)] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
//! ```

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod exact;
pub mod halfint;
pub mod interbasis;
pub mod sector;
pub mod spheroidal;
pub mod verify;
pub mod wavefield;

pub use error::{ErrorCategory, MiczError, Result};
pub use exact::{BinaryFloat, RadicalScalar, RadicalSum};
pub use halfint::HalfInt;
pub use sector::{Basis, PassiveLabels, Sector, StateLabel};
pub use spheroidal::{SpheroidalSpectrum, SymTridiagonal};
