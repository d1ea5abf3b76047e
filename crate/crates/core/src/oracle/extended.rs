//! Double-double (≈ 32 digit) evaluation of the kernels straight from their
//! three-term definitions, used to spot-check the production branches.

use crate::error::{domain, Error, Result};
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Largest argument for which the unreduced Taylor series keeps ~20 digits.
pub const MAX_EXTENDED_ARGUMENT: f64 = 32.0;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * Self::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Self::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

/// `(sin x, cos x)` from their Maclaurin series in double-double arithmetic.
fn sin_cos(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = x * x;
    let mut sin = x;
    let mut cos = DoubleDouble::ONE;
    let mut s_term = x;
    let mut c_term = DoubleDouble::ONE;
    let mut k = 1.0;
    loop {
        // s_term = (−1)^j x^{2j+1}/(2j+1)!, c_term = (−1)^j x^{2j}/(2j)!
        c_term = -(c_term * x2) / DoubleDouble::from_f64(k * (k + 1.0));
        s_term = -(s_term * x2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
        cos = cos + c_term;
        sin = sin + s_term;
        if s_term.abs().hi < 1e-36 && c_term.abs().hi < 1e-36 {
            return (sin, cos);
        }
        k += 2.0;
    }
}

/// Which kernel [`kernel_extended`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    A,
    B,
    C,
    D,
    E,
}

/// The kernel at `x ∈ (0, 32]` from `sin x/x`, `cos x/x²`, `sin x/x³` in double-double.
pub fn kernel_extended(kind: KernelKind, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "x",
            x,
            "extended evaluation needs a positive argument",
        ));
    }
    if x > MAX_EXTENDED_ARGUMENT {
        return Err(Error::Capability {
            name: "x",
            value: x,
            limit: MAX_EXTENDED_ARGUMENT,
        });
    }
    let xd = DoubleDouble::from_f64(x);
    let (s, c) = sin_cos(xd);
    let sinc = s / xd;
    let c_kernel = c / (xd * xd) - s / (xd * xd * xd);
    let two = DoubleDouble::from_f64(2.0);
    let v = match kind {
        KernelKind::A => sinc + c_kernel,
        KernelKind::B => c_kernel - sinc,
        KernelKind::C => c_kernel,
        KernelKind::D => sinc - c_kernel,
        KernelKind::E => sinc + two * c_kernel,
    };
    Ok(v.to_f64())
}
