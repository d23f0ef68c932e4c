//! Scalar abstraction shared by every floating-point routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point: f32 or f64.
///
/// All tolerances quoted in the tests assume `f64`; `f32` is supported for
/// quick exploratory runs where six digits are plenty.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossless for every integer this crate feeds in (primes and counts below 2^53).
    fn of_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 always converts to a float")
    }

    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 always converts to a float")
    }

    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 literal converts")
    }
}

impl Real for f32 {}
impl Real for f64 {}
