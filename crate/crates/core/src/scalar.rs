use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Real scalar the solver is generic over.
///
/// Implemented for `f32` and `f64`. The numerical tolerances used throughout
/// the crate are stated for double precision; single precision builds run the
/// same algorithms but only meet correspondingly looser tolerances.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + Sum + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion used for reporting and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
