//! Biparameter Haar analysis on shifted dyadic grids.
//!
//! The crate provides the computational machinery for studying how the
//! biparameter (product) BMO structure of the plane interacts with
//! rotations:
//!
//! - exact planar geometry for rotated rectangles ([`geometry`]),
//! - shifted dyadic grids with exact rational realizations ([`dyadic`]),
//! - 1D/2D Haar coefficients and fast orthogonal transforms ([`haar`]),
//! - exact rotated-wavelet inner products `⟨h_S∘φ, h_T⟩` with case
//!   classification and cancellation bounds ([`rotated`]),
//! - oscillation / BMO / Sobolev norm estimators ([`norms`]),
//! - strong maximal function, enlargements and Journé decompositions
//!   ([`maximal`]),
//! - counting numbers and Γ cancellation sums ([`estimates`]),
//! - directional Hilbert transform and the rough homogeneous operator
//!   ([`transforms`]).
//!
//! Every estimator that reports a BMO value reports a certified *lower*
//! bound together with the witness open set that attains it.
//!
//! Run `cargo run --bin bihaar -- --help` for the experiment driver, or
//! see the `examples/` directory for one runnable demo per subsystem.

pub mod dyadic;
pub mod error;
pub mod estimates;
pub mod experiments;
pub mod geometry;
pub mod haar;
pub mod maximal;
pub mod norms;
pub mod openset;
pub mod quad;
pub mod rotated;
pub mod suites;
pub mod transforms;

pub use error::{Error, Result};

/// Default shift parameter of the second dyadic grid family.
///
/// Any value in (0, 1/2) is admissible; 1/3 keeps all grid arithmetic in
/// rationals with denominator 3.
pub fn default_delta() -> num_rational::Ratio<i128> {
    num_rational::Ratio::new(1, 3)
}
