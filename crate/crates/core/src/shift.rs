//! Bethe-logarithm normalization of the energy-level shift.
//!
//! A shift ratio is `(1/ln Λ) ∫₀^Λ s/(s²+1) · bracket(s) ds` where `s` is the
//! photon wavenumber in units of the cutoff scale `γ` and the bracket carries
//! the geometry.

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};

pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;
pub const RYDBERG_ENERGY_EV: f64 = 13.6057;
/// Bethe's mean excitation energy of hydrogen in Rydberg units.
pub const BETHE_MEAN_EXCITATION_RYDBERGS: f64 = 17.8;

/// Default `Λ`, the rounded value of [`bethe_cutoff_ratio`].
pub const DEFAULT_CUTOFF_RATIO: f64 = 2110.0;

/// `mc² / (17.8 R∞)`.
pub fn bethe_cutoff_ratio() -> f64 {
    ELECTRON_REST_ENERGY_EV / (BETHE_MEAN_EXCITATION_RYDBERGS * RYDBERG_ENERGY_EV)
}

/// The upper cutoff `Λ` of the shift integral and its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParams {
    cutoff_ratio: f64,
    log_norm: f64,
}

impl ShiftParams {
    pub fn new(cutoff_ratio: f64) -> Result<Self> {
        if !(cutoff_ratio > 1.0) || !cutoff_ratio.is_finite() {
            return Err(domain(
                "cutoff_ratio",
                cutoff_ratio,
                "must be finite and above 1",
            ));
        }
        Ok(Self {
            cutoff_ratio,
            log_norm: libm::log(cutoff_ratio),
        })
    }

    pub fn cutoff_ratio(&self) -> f64 {
        self.cutoff_ratio
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// `½ ln(1 + Λ²) / ln Λ`, the ratio for a bracket identically 1.
    pub fn unit_bracket_ratio(&self) -> f64 {
        0.5 * libm::log1p(self.cutoff_ratio * self.cutoff_ratio) / self.log_norm
    }
}

impl Default for ShiftParams {
    fn default() -> Self {
        Self::new(DEFAULT_CUTOFF_RATIO).expect("default cutoff is valid")
    }
}

/// The geometry-dependent bracket of a shift integral.
pub trait ShiftIntegrand {
    fn bracket(&self, s: f64) -> f64;

    /// Period in `s` of the fastest oscillation, if the bracket oscillates.
    fn oscillation_period(&self) -> Option<f64> {
        None
    }
}

impl<F: Fn(f64) -> f64> ShiftIntegrand for F {
    fn bracket(&self, s: f64) -> f64 {
        self(s)
    }
}

/// A shift ratio with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftValue {
    pub ratio: f64,
    pub est_error: f64,
    pub panels: usize,
}

/// Quadrature settings used when the caller has no preference.
pub fn default_shift_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-11,
        max_panels: 1 << 22,
        oscillation_period_hint: None,
    }
}

/// `(1/ln Λ) ∫₀^Λ s/(s²+1) · bracket(s) ds`.
///
/// The integrand's own oscillation period, if any, overrides the hint in `spec`;
/// initial panels then span one such period.
pub fn shift_weighted_integral<I: ShiftIntegrand + ?Sized>(
    integrand: &I,
    sp: &ShiftParams,
    spec: &QuadratureSpec,
) -> Result<ShiftValue> {
    let mut spec = *spec;
    if let Some(period) = integrand.oscillation_period() {
        spec.oscillation_period_hint = Some(2.0 * period);
    }
    // The weight alone varies on the scale s ~ 1.
    let weight_scale = 2.0;
    spec.oscillation_period_hint = Some(
        spec.oscillation_period_hint
            .map_or(weight_scale, |p| p.min(weight_scale)),
    );
    let r = integrate(
        |s| s / (s * s + 1.0) * integrand.bracket(s),
        0.0,
        sp.cutoff_ratio,
        &spec,
    )?;
    let ratio = r.value / sp.log_norm;
    let est_error = r.est_error / sp.log_norm;
    if !r.converged {
        return Err(Error::NotConverged {
            what: "shift integral",
            partial: ratio,
            est_error,
        });
    }
    Ok(ShiftValue {
        ratio,
        est_error,
        panels: r.panels,
    })
}
