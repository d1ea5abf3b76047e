//! Numerical check of the addition theorem used to fold the wedge images:
//!
//! ```text
//! Σ_{n=0}^{p−1} K₀(ζ R_n) = 2p Σ'_{m≥0} I_{mp}(ζ r₁) K_{mp}(ζ r₂) cos(m p φ)
//! R_n = √(r₁² + r₂² − 2 r₁ r₂ cos(φ + 2nπ/p))
//! ```

use crate::error::{domain, require_finite, Result};
use crate::specfun::{bessel_ik_product, k_scaled};
use crate::sum::CompensatedSum;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrafCase {
    p: u32,
    zeta: f64,
    r1: f64,
    r2: f64,
    phi: f64,
}

impl GrafCase {
    pub fn new(p: u32, zeta: f64, r1: f64, r2: f64, phi: f64) -> Result<Self> {
        if p == 0 {
            return Err(domain("p", 0.0, "must be at least 1"));
        }
        require_finite("phi", phi)?;
        for (name, v) in [("zeta", zeta), ("r1", r1), ("r2", r2)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(domain(name, v, "must be positive"));
            }
        }
        if r1 >= r2 {
            return Err(domain("r1", r1, "must be strictly below r2"));
        }
        Ok(Self {
            p,
            zeta,
            r1,
            r2,
            phi,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Distance to the `n`-th rotated source.
    pub fn distance(&self, n: u32) -> f64 {
        let angle = self.phi + 2.0 * PI * n as f64 / self.p as f64;
        let (r1, r2) = (self.r1, self.r2);
        // (r₂ − r₁)² + 2 r₁ r₂ (1 − cos) avoids cancellation when the points nearly coincide.
        let half = libm::sin(0.5 * angle);
        libm::sqrt((r2 - r1) * (r2 - r1) + 4.0 * r1 * r2 * half * half)
    }

    /// `Σ_n K₀(ζ R_n)`
    pub fn lhs(&self) -> f64 {
        (0..self.p)
            .map(|n| {
                k_scaled(0, self.zeta * self.distance(n))
                    .to_f64()
                    .unwrap_or(0.0)
            })
            .collect::<CompensatedSum>()
            .value()
    }

    /// `2p Σ'_{m=0}^{m_max} I_{mp}(ζr₁) K_{mp}(ζr₂) cos(mpφ)`
    pub fn rhs(&self, m_max: u32) -> Result<f64> {
        let p = self.p;
        let mut acc = CompensatedSum::new();
        for m in 0..=m_max {
            let nu = m * p;
            let prime = if m == 0 { 0.5 } else { 1.0 };
            let ik = bessel_ik_product(nu, self.zeta * self.r1, self.zeta * self.r2)?;
            acc.add(prime * ik * libm::cos(nu as f64 * self.phi));
        }
        Ok(2.0 * p as f64 * acc.value())
    }
}

/// `|LHS − RHS|` with the right side truncated at `m_max`.
pub fn graf_residual(case: &GrafCase, m_max: u32) -> Result<f64> {
    if m_max < 4 {
        return Err(domain("m_max", m_max as f64, "must be at least 4"));
    }
    Ok((case.lhs() - case.rhs(m_max)?).abs())
}

/// Order cutoff at which the neglected terms fall below double precision.
pub fn graf_m_max(case: &GrafCase) -> u32 {
    let ratio = case.r1 / case.r2;
    // Past the turnover order ζr₂ the terms fall like (r₁/r₂)^ν.
    let turnover = case.zeta * case.r2;
    let decay_orders = 40.0 * core::f64::consts::LN_10 / -libm::log(ratio);
    let orders = turnover + decay_orders + 10.0;
    (libm::ceil(orders / case.p as f64) as u32).max(4)
}
