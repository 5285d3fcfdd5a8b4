//! Floating-point scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst};

/// Real scalar the simulator is generic over (`f64` in practice, `f32` for
/// cheap smoke runs).
pub trait Scalar:
    Float + FloatConst + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(value: f64) -> Self {
        // Every Float impl can represent (or round) an f64.
        Self::from(value).unwrap()
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Both parts finite. `Complex::is_finite` needs `FloatCore`, which the
/// generic bound does not provide.
#[inline]
pub fn complex_is_finite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl<T> Scalar for T where T: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {}
