//! Scalar abstraction for scoring math.
//!
//! BM25 scores, cosine similarities, and evaluation metrics are generic
//! over the floating-point type; `f32` and `f64` both satisfy [`Scalar`].

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable for scores and similarities.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + std::fmt::Debug
    + std::fmt::Display
    + serde::Serialize
    + serde::de::DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from `f64` for constants and defaults.
    fn from_f64_const(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant must convert")
    }

    /// Conversion from a count.
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("usize must convert to scalar")
    }

    /// Widening view as `f64`, used when aggregating into reports.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + std::fmt::Debug
        + std::fmt::Display
        + serde::Serialize
        + serde::de::DeserializeOwned
        + Send
        + Sync
        + 'static
{
}
