//! Exact scalar layer: rationals, univariate polynomials and rational
//! functions in `y`, and truncated power series in a nilpotent variable.
//!
//! Everything here is generic over a coefficient [`Field`]. The crate root
//! fixes the concrete choice (`BigRational`) through type aliases; nothing in
//! this module assumes it. Floating point types are deliberately not given a
//! `Field` impl: normalisation of rational functions relies on exact gcds.

mod poly;
mod ratfunc;
pub mod rational;
mod series;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

pub use poly::Poly;
pub use ratfunc::{ratfunc_arith, RatFunc, RatFuncOp};
pub use series::{series_arith, Series, SeriesOp};

/// Commutative ring with unit, as needed by series and intersection rings.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;
}

/// A ring in which every nonzero element has an inverse.
pub trait Field: Ring + Div<Output = Self> {
    fn inverse(&self) -> Option<Self>;
}

/// Coefficient rings that may have non-units; used by power-series inversion.
pub trait MaybeInvertible: Ring {
    fn try_inverse(&self) -> Option<Self>;
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + Send + Sync,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for coefficient type"))
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + Send + Sync,
{
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl<T> MaybeInvertible for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + Send + Sync,
{
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}
