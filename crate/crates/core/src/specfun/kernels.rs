//! Trigonometric kernels of the image sums.
//!
//! Every closed-form rate and shift integrand is built from
//! `sinc x = sin x / x` and
//!
//! ```text
//! C(x) = cos x / x² − sin x / x³
//! A(x) = sinc x + C(x)        B(x) = C(x) − sinc x
//! D(x) = sinc x − C(x)        E(x) = sinc x + 2 C(x)
//! ```
//!
//! Below [`SERIES_THRESHOLD`] both `sinc` and `C` come from their Maclaurin
//! series, so the singular terms of `C` never cancel in floating point.

use crate::error::{require_non_negative, Result};

/// Arguments below this value use the power series.
pub const SERIES_THRESHOLD: f64 = 1.0;

const SERIES_TERMS: usize = 11;

/// `sinc x = Σ (−1)^j x^{2j} / (2j+1)!`
const SINC_COEFFS: [f64; SERIES_TERMS] = series_coeffs(false);
/// `C(x) = −Σ (−1)^j (2j+2) x^{2j} / (2j+3)!`
const C_COEFFS: [f64; SERIES_TERMS] = series_coeffs(true);

const fn series_coeffs(c_kernel: bool) -> [f64; SERIES_TERMS] {
    let mut out = [0.0; SERIES_TERMS];
    let mut j = 0;
    while j < SERIES_TERMS {
        let top = if c_kernel { 2 * j + 3 } else { 2 * j + 1 };
        let mut fact = 1.0;
        let mut k = 2;
        while k <= top {
            fact *= k as f64;
            k += 1;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        out[j] = if c_kernel {
            -sign * (2 * j + 2) as f64 / fact
        } else {
            sign / fact
        };
        j += 1;
    }
    out
}

#[inline]
fn horner(coeffs: &[f64; SERIES_TERMS], x2: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x2 + c)
}

/// `sinc` and `C` at one argument; every other kernel is a fixed combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Kernels {
    pub sinc: f64,
    pub c: f64,
}

impl Kernels {
    /// Evaluates at `x ≥ 0` without validation.
    #[inline]
    pub(crate) fn at(x: f64) -> Self {
        if x < SERIES_THRESHOLD {
            Self::series(x)
        } else {
            Self::direct(x)
        }
    }

    #[inline]
    pub(crate) fn series(x: f64) -> Self {
        let x2 = x * x;
        Self {
            sinc: horner(&SINC_COEFFS, x2),
            c: horner(&C_COEFFS, x2),
        }
    }

    #[inline]
    pub(crate) fn direct(x: f64) -> Self {
        let (s, co) = libm::sincos(x);
        Self {
            sinc: s / x,
            c: (co - s / x) / (x * x),
        }
    }

    #[inline]
    pub(crate) fn a(self) -> f64 {
        self.sinc + self.c
    }

    #[inline]
    pub(crate) fn b(self) -> f64 {
        self.c - self.sinc
    }

    #[inline]
    pub(crate) fn d(self) -> f64 {
        self.sinc - self.c
    }

    #[inline]
    pub(crate) fn e(self) -> f64 {
        self.sinc + 2.0 * self.c
    }
}

/// Values of `A`, `B` and `C` at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTriple {
    pub a_val: f64,
    pub b_val: f64,
    pub c_val: f64,
}

impl KernelTriple {
    pub fn new(x: f64) -> Result<Self> {
        require_non_negative("x", x)?;
        let k = Kernels::at(x);
        Ok(Self {
            a_val: k.a(),
            b_val: k.b(),
            c_val: k.c,
        })
    }
}

/// `sin x / x`, with the removable singularity filled in. Defined for all finite `x`.
pub fn sinc(x: f64) -> f64 {
    Kernels::at(x.abs()).sinc
}

pub fn kernel_a(x: f64) -> Result<f64> {
    require_non_negative("x", x).map(|x| Kernels::at(x).a())
}

pub fn kernel_b(x: f64) -> Result<f64> {
    require_non_negative("x", x).map(|x| Kernels::at(x).b())
}

pub fn kernel_c(x: f64) -> Result<f64> {
    require_non_negative("x", x).map(|x| Kernels::at(x).c)
}

pub fn kernel_d(x: f64) -> Result<f64> {
    require_non_negative("x", x).map(|x| Kernels::at(x).d())
}

pub fn kernel_e(x: f64) -> Result<f64> {
    require_non_negative("x", x).map(|x| Kernels::at(x).e())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    #[test]
    fn limits_at_origin() {
        let close = |got: f64, want: f64| (got - want).abs() <= f64::EPSILON * want.abs();
        assert!(close(kernel_a(0.0).unwrap(), 2.0 / 3.0));
        assert!(close(kernel_b(0.0).unwrap(), -4.0 / 3.0));
        assert_eq!(kernel_c(0.0).unwrap(), -1.0 / 3.0);
        assert!(close(kernel_d(0.0).unwrap(), 4.0 / 3.0));
        assert!(close(kernel_e(0.0).unwrap(), 1.0 / 3.0));
    }

    #[test]
    fn values_at_pi() {
        let expect = -1.0 / (PI * PI);
        assert!((kernel_a(PI).unwrap() - expect).abs() < 1e-15);
        assert!((kernel_b(PI).unwrap() - expect).abs() < 1e-15);
        assert!((kernel_c(PI).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn second_order_taylor_coefficient() {
        // A(x) = 2/3 − 2x²/15 + O(x⁴)
        let x = 1e-4;
        let a = kernel_a(x).unwrap();
        assert!((a - (2.0 / 3.0 - 2.0 * x * x / 15.0)).abs() < 2e-16);
    }

    #[test]
    fn e_identity_on_sample_points() {
        for x in [0.5, 2.0, 7.0] {
            let e = kernel_e(x).unwrap();
            let s = libm::sin(x) / x;
            let c = kernel_c(x).unwrap();
            assert!((e - (s + 2.0 * c)).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn branches_agree_across_threshold() {
        let mut x = 0.5;
        while x <= 2.0 {
            let s = Kernels::series(x);
            let d = Kernels::direct(x);
            assert!((s.sinc - d.sinc).abs() < 1e-15, "sinc at {x}");
            assert!((s.c - d.c).abs() < 1e-14, "C at {x}");
            x += 0.01;
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(kernel_a(f64::NAN).is_err());
        assert!(kernel_a(f64::INFINITY).is_err());
        assert!(kernel_c(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn algebraic_glue(x in 0.0f64..200.0) {
            let t = KernelTriple::new(x).unwrap();
            let s = sinc(x);
            prop_assert!((t.a_val - s - t.c_val).abs() <= 1e-13);
            prop_assert!((t.b_val - t.c_val + s).abs() <= 1e-13);
        }

        #[test]
        fn decay_envelope(x in 1.0f64..1e6) {
            let t = KernelTriple::new(x).unwrap();
            let bound = 3.0 / x;
            prop_assert!(t.a_val.abs() <= bound);
            prop_assert!(t.b_val.abs() <= bound);
            prop_assert!(t.c_val.abs() <= bound);
        }
    }
}
