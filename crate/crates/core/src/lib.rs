//! Exact computation of Hirzebruch classes, virtual classes, Steenbrink
//! spectra and Hirzebruch–Milnor classes of projective hyperplane
//! arrangements.
//!
//! The scalar layer in [`coeffs`] is generic over an exact coefficient field;
//! the aliases below pin the field to arbitrary-precision rationals, which is
//! what every other module works with.

pub mod ambient;
pub mod arrangement;
pub mod cli;
pub mod coeffs;
pub mod corpus;
pub mod error;
pub mod genera;
pub mod milnor;
pub mod ring;
pub mod spectra;
pub mod strata;

pub use error::{Error, Result};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials in `y` over [`Rational`].
pub type PolyY = coeffs::Poly<Rational>;
/// Rational functions in `y` over [`Rational`].
pub type RatFuncY = coeffs::RatFunc<Rational>;
/// Truncated power series in a nilpotent variable with [`RatFuncY`] coefficients.
pub type SeriesA = coeffs::Series<RatFuncY>;
/// Elements of an intersection ring with [`RatFuncY`] coefficients.
pub type RingElemY = ring::RingElem<RatFuncY>;
