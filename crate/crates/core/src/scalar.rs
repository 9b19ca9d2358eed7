//! Real scalar abstraction used throughout the crate.

use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar the numerics are generic over.
///
/// `nalgebra::RealField` supplies the transcendental functions and linear
/// algebra support; `FromPrimitive`/`ToPrimitive` supply conversion to and
/// from literal constants. Implemented by `f32` and `f64` (tolerances in this
/// crate are chosen for `f64`; `f32` is usable for rough work only).
pub trait Scalar: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

impl<T: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy> Scalar for T {}

/// Convert an `f64` constant into the working scalar type.
#[inline]
pub fn cv<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Convert the working scalar into `f64` (for diagnostics and tolerances).
#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().expect("scalar must convert into f64")
}

/// Complex number over the working scalar type.
pub type C<T> = Complex<T>;

/// i as a complex constant.
#[inline]
pub fn im<T: Scalar>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

/// Complex exponential built from the real field operations (the inherent
/// `Complex::exp` needs `num_traits::Float`, which would clash with
/// `RealField` method resolution).
#[inline]
pub fn cexp<T: Scalar>(z: C<T>) -> C<T> {
    let m = z.re.exp();
    Complex::new(m * z.im.cos(), m * z.im.sin())
}

/// Complex modulus built from the real field operations.
#[inline]
pub fn cabs<T: Scalar>(z: C<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}
