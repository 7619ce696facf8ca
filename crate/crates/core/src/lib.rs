//! Computational companion to the classification of contact structures on
//! circle bundles over closed surfaces.
//!
//! The crate is split by subject:
//!
//! - [`circle_dynamics`]: lifts of circle homeomorphisms to the real line,
//!   exact piecewise-linear arithmetic, sup-displacement and translation
//!   numbers, relator words and Euler-number extraction.
//! - [`hyperbolic`]: the Poincaré disk, `PSL₂(ℝ)` elements, symmetric
//!   `4g`-gons, side pairings and their commutator holonomy.
//! - [`formcalc`]: a small symbolic engine for differential 1-forms (parser,
//!   exterior derivative, pullback, contact sign on a sampling grid) and the
//!   catalog of model contact forms.
//! - [`classify`]: exact evaluation of the existence, counting and bound
//!   formulas (Euler-number inequalities, enrollment spectra, divisor counts
//!   and the symplectic orbit oracle).
//! - [`multicurve`]: multicurves encoded by complementary decompositions,
//!   tightness criteria for invariant structures and convex surfaces, torus
//!   intersection numbers and the semi-local Bennequin bound.

pub mod circle_dynamics;
pub mod classify;
pub mod formcalc;
pub mod hyperbolic;
pub mod multicurve;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Builds an exact rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
