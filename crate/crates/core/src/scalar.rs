//! Scalar abstraction shared by every numeric type in the crate.

use nalgebra::{Complex, RealField};
use num_traits::ToPrimitive;
use serde::Serialize;

/// Real scalar the channel algebra is generic over.
///
/// Implemented for `f32` and `f64`. The tolerance hooks scale the structural
/// checks (trace preservation, Hermiticity, Choi equality) to the precision
/// of the type; the f64 values are the ones the crate's guarantees are
/// stated in.
pub trait Real: RealField + Copy + ToPrimitive + Serialize {
    /// Entrywise tolerance for CPTP, Hermiticity and Choi comparisons.
    fn structural_tol() -> Self;
    /// Tolerance on probability sums and partial traces.
    fn normalization_tol() -> Self;
    /// Choi eigenvalues at or below this are dropped when extracting Kraus operators.
    fn eigen_cutoff() -> Self;
    /// Smallest negative probability that is silently clamped to zero.
    fn clamp_tol() -> Self;
    /// Grid on which similarity scores are compared when classifying, so
    /// exact ties survive rounding noise.
    fn tie_resolution() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-10
    }
    fn normalization_tol() -> Self {
        1e-9
    }
    fn eigen_cutoff() -> Self {
        1e-12
    }
    fn clamp_tol() -> Self {
        1e-15
    }
    fn tie_resolution() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-5
    }
    fn normalization_tol() -> Self {
        1e-4
    }
    fn eigen_cutoff() -> Self {
        1e-6
    }
    fn clamp_tol() -> Self {
        1e-6
    }
    fn tie_resolution() -> Self {
        1e-6
    }
}

pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub(crate) fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
