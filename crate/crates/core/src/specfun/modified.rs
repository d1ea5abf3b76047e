//! Modified Bessel functions `I_n` and `K_n` for integer order and positive argument.
//!
//! High orders overflow or underflow long before the products `I_n(x₁) K_n(x₂)`
//! do, so both are carried internally as a mantissa with a separate binary
//! exponent ([`Scaled`]) and only the final product is rounded to `f64`.

use super::bessel::MAX_ORDER;
use crate::error::{domain, require_finite, Error, Result};
use core::f64::consts::LN_2;

/// Largest argument accepted; `I₀` overflows shortly beyond it.
pub const MAX_ARGUMENT: f64 = 700.0;

/// `mant · 2^exp2` with `mant` kept in `[0.5, 1)` (or zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mant: f64,
    exp2: i64,
}

impl core::ops::Mul for Scaled {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Self {
            mant: self.mant * other.mant,
            exp2: self.exp2 + other.exp2,
        }
        .normalized()
    }
}

impl Scaled {
    pub const ZERO: Self = Self { mant: 0.0, exp2: 0 };

    pub fn new(v: f64) -> Self {
        Self { mant: v, exp2: 0 }.normalized()
    }

    fn normalized(self) -> Self {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return Self {
                mant: self.mant,
                exp2: 0,
            };
        }
        let (m, e) = libm::frexp(self.mant);
        Self {
            mant: m,
            exp2: self.exp2 + e as i64,
        }
    }

    pub fn mul_f64(self, v: f64) -> Self {
        Self {
            mant: self.mant * v,
            exp2: self.exp2,
        }
        .normalized()
    }

    /// Natural logarithm of the magnitude.
    pub fn ln(self) -> f64 {
        libm::log(self.mant.abs()) + self.exp2 as f64 * LN_2
    }

    /// The value as `f64`, or `None` if it would overflow. Underflow rounds toward zero.
    pub fn to_f64(self) -> Option<f64> {
        if self.mant == 0.0 {
            return Some(0.0);
        }
        if self.exp2 > 1024 {
            return None;
        }
        if self.exp2 < -1100 {
            return Some(0.0);
        }
        let v = libm::ldexp(self.mant, self.exp2 as i32);
        v.is_finite().then_some(v)
    }

    /// The value if it is a normal `f64`.
    fn to_normal_f64(self) -> Option<f64> {
        self.to_f64()
            .filter(|v| *v == 0.0 && self.mant == 0.0 || v.is_normal())
    }
}

fn check(order: u32, x: f64) -> Result<()> {
    require_finite("x", x)?;
    if order > MAX_ORDER {
        return Err(Error::Capability {
            name: "order",
            value: order as f64,
            limit: MAX_ORDER as f64,
        });
    }
    if x > MAX_ARGUMENT {
        return Err(Error::Capability {
            name: "x",
            value: x,
            limit: MAX_ARGUMENT,
        });
    }
    Ok(())
}

fn unrepresentable(x: f64) -> Error {
    Error::Capability {
        name: "x",
        value: x,
        limit: f64::MAX,
    }
}

/// `I_order(x)` for `x ≥ 0`; values outside the normal `f64` range are a capability error.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    if x < 0.0 {
        return Err(domain("x", x, "argument of I must be non-negative"));
    }
    if x == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    i_scaled(order, x)
        .to_normal_f64()
        .ok_or_else(|| unrepresentable(x))
}

/// `K_order(x)` for `x > 0`; values outside the normal `f64` range are a capability error.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    if x <= 0.0 {
        return Err(domain("x", x, "argument of K must be positive"));
    }
    k_scaled(order, x)
        .to_normal_f64()
        .ok_or_else(|| unrepresentable(x))
}

/// `ln I_order(x)` for `x > 0`.
pub fn ln_bessel_i(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    if x <= 0.0 {
        return Err(domain("x", x, "logarithm needs a positive argument"));
    }
    Ok(i_scaled(order, x).ln())
}

/// `ln K_order(x)` for `x > 0`.
pub fn ln_bessel_k(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    if x <= 0.0 {
        return Err(domain("x", x, "argument of K must be positive"));
    }
    Ok(k_scaled(order, x).ln())
}

/// `I_order(x_i) · K_order(x_k)` formed without intermediate overflow.
pub fn bessel_ik_product(order: u32, x_i: f64, x_k: f64) -> Result<f64> {
    check(order, x_i)?;
    check(order, x_k)?;
    if x_i < 0.0 {
        return Err(domain("x_i", x_i, "argument of I must be non-negative"));
    }
    if x_k <= 0.0 {
        return Err(domain("x_k", x_k, "argument of K must be positive"));
    }
    if x_i == 0.0 {
        return Ok(if order == 0 {
            k_scaled(0, x_k).to_f64().unwrap_or(0.0)
        } else {
            0.0
        });
    }
    (i_scaled(order, x_i) * k_scaled(order, x_k))
        .to_f64()
        .ok_or_else(|| unrepresentable(x_i))
}

/// `(x/2)^n / n! · Σ (x²/4)^k / (k! (n+k)!/n!)`; all terms positive.
pub(crate) fn i_scaled(n: u32, x: f64) -> Scaled {
    let half = 0.5 * x;
    let mut lead = Scaled::new(1.0);
    for k in 1..=n {
        lead = lead.mul_f64(half / k as f64);
    }
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (n as f64 + k));
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    lead.mul_f64(sum)
}

/// `K₀` and `K₁` from the trapezoid rule on `∫₀^∞ e^{−x cosh t} cosh(νt) dt`,
/// which converges geometrically in the step for this entire integrand.
fn k01(x: f64) -> (f64, f64) {
    let h = 0.125 / (0.5 * libm::sqrt(x)).max(1.0);
    let mut s0 = 0.5;
    let mut s1 = 0.5;
    let mut j = 1.0;
    loop {
        let t = j * h;
        let ch = libm::cosh(t);
        let decay = -x * (ch - 1.0);
        let e = libm::exp(decay);
        s0 += e;
        s1 += e * ch;
        if decay + t < -46.0 {
            break;
        }
        j += 1.0;
    }
    let scale = h * libm::exp(-x);
    (s0 * scale, s1 * scale)
}

/// `K_n(x)` via upward recurrence on the ratio `K_{k+1}/K_k`, which is stable.
pub(crate) fn k_scaled(n: u32, x: f64) -> Scaled {
    let (k0, k1) = k01(x);
    match n {
        0 => Scaled::new(k0),
        1 => Scaled::new(k1),
        _ => {
            let mut value = Scaled::new(k1);
            let mut ratio = k1 / k0;
            for k in 1..n {
                ratio = 1.0 / ratio + 2.0 * k as f64 / x;
                value = value.mul_f64(ratio);
            }
            value
        }
    }
}
