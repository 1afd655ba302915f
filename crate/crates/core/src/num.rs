//! Scalar abstraction shared by the geometry and functional-calculus code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar usable by the generic geometry and piecewise-linear code.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + Sum + 'static
{
    /// Relative tolerance for orientation (collinearity) predicates.
    const ORIENT_EPS: f64;

    /// Converts an `f64` literal. Every `f64` literal used in this crate fits `f32` as well.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn orient_eps() -> Self {
        Self::lit(Self::ORIENT_EPS)
    }
}

impl Scalar for f64 {
    const ORIENT_EPS: f64 = 1e-12;
}

impl Scalar for f32 {
    const ORIENT_EPS: f64 = 1e-6;
}
