//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands.

use crate::error::{Error, Result};
use crate::scalar::{cabs, cv, Scalar, C};
use num_complex::Complex;

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) with the embedded
// 7-point Gauss rule, as in QUADPACK's qk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One Gauss–Kronrod 15-point evaluation on [a, b].
///
/// Returns the Kronrod estimate and the |K15 - G7| error estimate.
fn gk15<T: Scalar, F: Fn(T) -> C<T>>(f: &F, a: T, b: T) -> (C<T>, T) {
    let half = (b - a) * cv::<T>(0.5);
    let mid = (a + b) * cv::<T>(0.5);

    let mut kron = Complex::new(T::zero(), T::zero());
    let mut gauss = Complex::new(T::zero(), T::zero());
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let dx = half * cv::<T>(x);
        let val = if x == 0.0 {
            f(mid)
        } else {
            f(mid - dx) + f(mid + dx)
        };
        kron += val * cv::<T>(wk);
        // Odd Kronrod indices are the embedded Gauss nodes.
        if j % 2 == 1 {
            gauss += val * cv::<T>(WG[j / 2]);
        }
    }
    let kron = kron * half;
    let gauss = gauss * half;
    (kron, cabs(kron - gauss))
}

/// Adaptively integrate `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Returns the integral estimate together with the accumulated error
/// estimate. Errors out if the interval budget is exhausted before the
/// tolerance is met.
pub fn adaptive<T: Scalar, F: Fn(T) -> C<T>>(f: F, a: T, b: T, tol: T) -> Result<(C<T>, T)> {
    adaptive_with_budget(f, a, b, tol, 40_000)
}

/// [`adaptive`] with an explicit cap on the number of subintervals.
pub fn adaptive_with_budget<T: Scalar, F: Fn(T) -> C<T>>(
    f: F,
    a: T,
    b: T,
    tol: T,
    max_intervals: usize,
) -> Result<(C<T>, T)> {
    struct Interval<T: Scalar> {
        a: T,
        b: T,
        value: C<T>,
        err: T,
    }

    let (value, err) = gk15(&f, a, b);
    let mut intervals = vec![Interval { a, b, value, err }];
    loop {
        let total_err: T = intervals.iter().fold(T::zero(), |s, iv| s + iv.err);
        if total_err <= tol {
            let total: C<T> = intervals
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |s, iv| s + iv.value);
            return Ok((total, total_err));
        }
        if intervals.len() >= max_intervals {
            return Err(Error::Quadrature {
                error: num_traits::ToPrimitive::to_f64(&total_err).unwrap_or(f64::NAN),
                tol: num_traits::ToPrimitive::to_f64(&tol).unwrap_or(f64::NAN),
            });
        }
        // Split the interval with the largest error estimate.
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.err.partial_cmp(&y.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Interval { a, b, .. } = intervals.swap_remove(worst);
        let mid = (a + b) * cv::<T>(0.5);
        let (v1, e1) = gk15(&f, a, mid);
        let (v2, e2) = gk15(&f, mid, b);
        intervals.push(Interval {
            a,
            b: mid,
            value: v1,
            err: e1,
        });
        intervals.push(Interval {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }
}

/// Real-valued convenience wrapper around [`adaptive`].
pub fn adaptive_real<T: Scalar, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<(T, T)> {
    let (v, e) = adaptive(|x| Complex::new(f(x), T::zero()), a, b, tol)?;
    Ok((v.re, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn integrates_polynomial_exactly() {
        let (v, _) = adaptive_real(|x: f64| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn integrates_oscillatory_complex() {
        // int_0^{2 pi} e^{i 40 x} dx = 0
        let (v, _) = adaptive(
            |x: f64| Complex::new(0.0, 40.0 * x).exp(),
            0.0,
            2.0 * PI,
            1e-10,
        )
        .unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn reports_budget_exhaustion() {
        let r = adaptive_with_budget(
            |x: f64| Complex::new((1e6 * x).sin(), 0.0),
            0.0,
            1.0,
            1e-14,
            8,
        );
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
