//! Decay rates near the edge of a conducting half-sheet (a wedge of exterior angle 2π).
//!
//! The sheet occupies `θ = 0 ≡ 2π`. With `w = χ sin θ₀` (height above the sheet
//! plane) and `L = χ cos θ₀` (signed distance along it), the rates reduce to
//! finite integrals of `Λ_n(z) = J_n(z)/z^n` over `z = √(x² + w²)`:
//!
//! ```text
//! Γ_z/Γ₀ = 1/2 − 3/4 [A(|w|) + ∫₀^L (Λ₁ − Λ₂)(z) dx − ∫₀^χ (Λ₁ − Λ₂)(x) dx]
//! ```
//!
//! and a longer expression for `Γ_y` (see [`halfsheet_decay_y`]). The reduced
//! forms are finite at `z = 0`, so no cancellation occurs near the edge.

use crate::error::{domain, require_positive, Result};
use crate::quadrature::{integrate, QuadratureResult, QuadratureSpec};
use crate::rate::{Dipole, RateResult, SheetAxis};
use crate::shift::{default_shift_quadrature, shift_weighted_integral, ShiftParams, ShiftValue};
use crate::specfun::{reduced_123, Kernels};
use core::f64::consts::{PI, TAU};

/// Atom position around the sheet edge: `chi = 2 q r₀`, `theta0 ∈ (0, 2π)` from the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSheetLocation {
    chi: f64,
    theta0: f64,
}

impl HalfSheetLocation {
    pub fn new(chi: f64, theta0: f64) -> Result<Self> {
        require_positive("chi", chi)?;
        if !theta0.is_finite() || theta0 <= 0.0 || theta0 >= TAU {
            return Err(domain(
                "theta0",
                theta0,
                "must lie in (0, 2pi); the sheet itself is excluded",
            ));
        }
        Ok(Self { chi, theta0 })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// The angle folded onto `(0, π]`; both rates are even about `θ₀ = π`.
    fn folded_angle(&self) -> f64 {
        if self.theta0 > PI {
            TAU - self.theta0
        } else {
            self.theta0
        }
    }

    /// `|w| = χ |sin θ₀|`
    pub fn w(&self) -> f64 {
        self.chi * libm::sin(self.folded_angle())
    }

    /// `L = χ cos θ₀`, negative in the shadow half `π/2 < θ₀ < 3π/2`.
    pub fn l(&self) -> f64 {
        self.chi * libm::cos(self.folded_angle())
    }
}

/// Quadrature settings for the edge integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSheetKernelState {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for HalfSheetKernelState {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_panels: 1 << 20,
        }
    }
}

impl HalfSheetKernelState {
    fn spec(&self) -> Result<QuadratureSpec> {
        let spec = QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_panels: self.max_panels,
            // Along x the Bessel phase advances no faster than x itself.
            oscillation_period_hint: Some(TAU),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `J₁(z)/z − J₁(z)/z³ + J₀(z)/(2z²) − J₂(z)/(2z²)`, which equals `Λ₁(z) − Λ₂(z)`.
pub(crate) fn edge_kernel(z: f64) -> f64 {
    let [l1, l2, _] = reduced_123(z);
    l1 - l2
}

/// `[z³J₀ − (2z² + w²z² − z⁴)J₁ + 4w²zJ₂]/z⁵`, which equals `Λ₁ − Λ₂ + w²Λ₃`.
pub(crate) fn normal_kernel(z: f64, w2: f64) -> f64 {
    let [l1, l2, l3] = reduced_123(z);
    l1 - l2 + w2 * l3
}

fn edge_integral(
    f: impl FnMut(f64) -> f64,
    upper: f64,
    spec: &QuadratureSpec,
    what: &'static str,
) -> Result<QuadratureResult> {
    integrate(f, 0.0, upper, spec)?.require_converged(what)
}

/// `∫₀^χ (Λ₁ − Λ₂)(x) dx`, shared by both orientations.
fn chi_integral(chi: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    edge_integral(
        edge_kernel,
        chi,
        spec,
        "half-sheet edge integral over [0, chi]",
    )
}

/// `Γ_z/Γ₀` for a dipole parallel to the edge.
pub fn halfsheet_decay_z(loc: &HalfSheetLocation, ks: &HalfSheetKernelState) -> Result<RateResult> {
    let spec = ks.spec()?;
    let (w, l) = (loc.w(), loc.l());
    let w2 = w * w;
    let i1 = edge_integral(
        |x| edge_kernel(libm::sqrt(x * x + w2)),
        l,
        &spec,
        "half-sheet edge integral over [0, L]",
    )?;
    let i2 = chi_integral(loc.chi, &spec)?;
    let a = Kernels::at(w).a();
    let ratio = 0.5 - 0.75 * (a + i1.value - i2.value);
    Ok(RateResult::new(
        ratio,
        Dipole::Sheet(SheetAxis::Z),
        i1.panels + i2.panels,
        0.75 * (i1.est_error + i2.est_error),
    ))
}

/// `Γ_y/Γ₀` for a dipole normal to the sheet:
///
/// ```text
/// 1/2 − 3/2 [ C(|w|) + T₁ J₁(χ)/χ² − (sin²θ₀/4) J₂(χ)/χ − (2cos⁴(θ₀/2) + sin²θ₀/4) J₀(χ)/χ
///             − ½∫₀^χ (Λ₁ − Λ₂)(x) dx − ½∫₀^L (Λ₁ − Λ₂ + w²Λ₃)(z) dx ]
/// T₁ = 2cos(θ₀/2)cos(3θ₀/2) − cos θ₀/2 − cos 2θ₀/2 + sin²θ₀/2
/// ```
pub fn halfsheet_decay_y(loc: &HalfSheetLocation, ks: &HalfSheetKernelState) -> Result<RateResult> {
    let spec = ks.spec()?;
    let (w, l, chi) = (loc.w(), loc.l(), loc.chi);
    let w2 = w * w;
    let i1 = edge_integral(
        |x| normal_kernel(libm::sqrt(x * x + w2), w2),
        l,
        &spec,
        "half-sheet normal-dipole integral over [0, L]",
    )?;
    let i2 = chi_integral(chi, &spec)?;

    let t = loc.folded_angle();
    let (sin_t, cos_t) = libm::sincos(t);
    let sin2 = sin_t * sin_t;
    let half_cos = libm::cos(0.5 * t);
    let t1 =
        2.0 * half_cos * libm::cos(1.5 * t) - 0.5 * cos_t - 0.5 * libm::cos(2.0 * t) + 0.5 * sin2;
    let hc2 = half_cos * half_cos;
    let t0 = 2.0 * hc2 * hc2 + 0.25 * sin2;

    let [l1, l2, _] = reduced_123(chi);
    let j0 = crate::specfun::j_unchecked(0, chi);
    let bessel_terms = t1 * l1 / chi - 0.25 * sin2 * chi * l2 - t0 * j0 / chi;

    let c = Kernels::at(w).c;
    let ratio = 0.5 - 1.5 * (c + bessel_terms - 0.5 * i2.value - 0.5 * i1.value);
    Ok(RateResult::new(
        ratio,
        Dipole::Sheet(SheetAxis::Y),
        i1.panels + i2.panels,
        0.75 * (i1.est_error + i2.est_error),
    ))
}

/// Single-plane limits far from the edge: `(1 − 3C(w), 1 − (3/2)A(w))`, i.e. (normal, parallel).
pub fn halfsheet_far_limits(w: f64) -> Result<(f64, f64)> {
    crate::error::require_non_negative("w", w)?;
    let k = Kernels::at(w);
    Ok((1.0 - 3.0 * k.c, 1.0 - 1.5 * k.a()))
}

/// `ΔE/ΔE⁰` far from the edge at `w_gamma = 2 γ d`: the single-plane bracket `1 − E(w_gamma · s)`.
pub fn halfsheet_shift_far(w_gamma: f64, sp: &ShiftParams) -> Result<ShiftValue> {
    halfsheet_shift_far_with(w_gamma, sp, &default_shift_quadrature())
}

/// [`halfsheet_shift_far`] with explicit quadrature settings.
pub fn halfsheet_shift_far_with(
    w_gamma: f64,
    sp: &ShiftParams,
    spec: &QuadratureSpec,
) -> Result<ShiftValue> {
    require_positive("w_gamma", w_gamma)?;
    let spec = spec.with_period_hint(TAU / w_gamma);
    shift_weighted_integral(&|s: f64| 1.0 - Kernels::at(w_gamma * s).e(), sp, &spec)
}
