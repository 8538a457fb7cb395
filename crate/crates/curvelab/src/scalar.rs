//! Scalar abstraction: the library is generic over the real base type.
//!
//! Everything downstream works with `Complex<T>` where `T: Scalar`. The
//! concrete aliases at the crate root (`C64`, `Poly64`, ...) pin `f64`,
//! which is what the CLI and the default tolerances assume.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` constant (tolerances, grid fractions) into `T`.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex constant from `f64` parts.
pub fn cx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::c(re), T::c(im))
}

/// Lexicographic (real, imaginary) comparison. No NaNs are expected in
/// any value this is applied to; ties break toward `Equal`.
pub fn lex_cmp<T: Scalar>(a: &Complex<T>, b: &Complex<T>) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

/// Sort complex values canonically by (real, imaginary).
pub fn lex_sort<T: Scalar>(values: &mut [Complex<T>]) {
    values.sort_by(lex_cmp);
}
