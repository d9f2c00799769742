//! Floating-point abstraction shared by the closed-form and covariance code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the region math is written against: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lifts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Relative eigenvalue cutoff below which a direction counts as degenerate.
    ///
    /// `1e-12` for `f64`; a few hundred ulps for narrower types where `1e-12`
    /// sits below machine precision.
    #[inline]
    fn degeneracy_cutoff() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(128.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
