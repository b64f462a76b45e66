//! The real scalar type underlying all complex arithmetic in this crate.
//!
//! Every matrix, state, and channel is generic over a [`Scalar`], so the same
//! code runs in `f32` or `f64`. The crate root exposes `f64` aliases
//! ([`crate::Matrix`], [`crate::Channel`], ...) which is what the default
//! tolerances are calibrated for; `f32` callers should pass their own
//! tolerances to the `*_with_tol` entry points.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable as the real/imaginary part of our complex
/// matrices: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant (tolerances, weights, ...) into `Self`.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must be representable")
    }

    /// Lossy view as `f64`, for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_constants_in_both_widths() {
        assert_eq!(f64::real(1e-9), 1e-9);
        assert!((f32::real(0.25) - 0.25f32).abs() == 0.0);
        assert_eq!(0.5f64.as_f64(), 0.5);
    }
}
