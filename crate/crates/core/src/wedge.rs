//! Decay rates and level shifts inside a perfectly conducting wedge of apex angle `π/p`.
//!
//! For integer `p` the image construction closes after `p` rotations, so every
//! rate is a finite sum over `n = 0 … p−1` of kernels evaluated at
//! `x_n = χ sin(nπ/p)` (rotated images) and `xθ_n = χ sin(θ₀ + nπ/p)` (reflected
//! images), where `χ = 2 q r₀`.

use crate::error::{domain, require_non_negative, require_positive, Result};
use crate::quadrature::QuadratureSpec;
use crate::rate::{Dipole, Orientation, RateResult, SurfaceOrientation};
use crate::shift::{
    default_shift_quadrature, shift_weighted_integral, ShiftIntegrand, ShiftParams, ShiftValue,
};
use crate::specfun::Kernels;
use crate::sum::CompensatedSum;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Absolute accuracy of one kernel evaluation, used for error bookkeeping.
const KERNEL_ABS_ERROR: f64 = 2e-15;

/// Wedge with apex angle `α = π/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeConfig {
    p: u32,
}

impl WedgeConfig {
    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(domain("p", 0.0, "wedge index must be at least 1"));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `α = π/p`
    pub fn apex_angle(&self) -> f64 {
        PI / self.p as f64
    }

    /// Clamps `theta0` onto `[0, α]` if it lies within rounding distance, else errors.
    fn wall_angle(&self, theta0: f64) -> Result<f64> {
        let alpha = self.apex_angle();
        let slack = 8.0 * f64::EPSILON * alpha;
        if !theta0.is_finite() || theta0 < -slack || theta0 > alpha + slack {
            return Err(domain(
                "theta0",
                theta0,
                "must lie between the walls, in [0, pi/p]",
            ));
        }
        Ok(theta0.clamp(0.0, alpha))
    }

    /// `sin(nπ/p)` for `n = 0 … p−1`, reduced into `[0, π/2]` before evaluation.
    fn rotation_sines(&self) -> impl Iterator<Item = f64> + '_ {
        let p = self.p;
        (0..p).map(move |n| {
            let k = n.min(p - n);
            libm::sin(PI * k as f64 / p as f64)
        })
    }

    /// `sin(θ₀ + nπ/p)` for `n = 0 … p−1`; `θ₀ ∈ [0, α]` keeps every angle in `[0, π]`.
    fn reflection_sines(&self, theta0: f64) -> impl Iterator<Item = f64> + '_ {
        let p = self.p;
        (0..p).map(move |n| {
            let forward = theta0 + PI * n as f64 / p as f64;
            if forward <= 0.5 * PI {
                libm::sin(forward)
            } else {
                libm::sin((PI * (p - n) as f64 / p as f64 - theta0).max(0.0))
            }
        })
    }
}

/// Atom position: `chi = 2 q r₀` and polar angle `theta0` from the lower wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomLocation {
    pub chi: f64,
    pub theta0: f64,
}

impl AtomLocation {
    pub fn new(chi: f64, theta0: f64) -> Result<Self> {
        require_non_negative("chi", chi)?;
        if !theta0.is_finite() {
            return Err(domain("theta0", theta0, "must be finite"));
        }
        Ok(Self { chi, theta0 })
    }
}

/// The three wedge-frame rates at one location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeRates {
    pub radial: RateResult,
    pub polar: RateResult,
    pub axial: RateResult,
}

impl WedgeRates {
    pub fn get(&self, o: Orientation) -> RateResult {
        match o {
            Orientation::Radial => self.radial,
            Orientation::Polar => self.polar,
            Orientation::Axial => self.axial,
        }
    }
}

/// All three rates from one pass over the images.
pub fn wedge_rates(cfg: &WedgeConfig, loc: &AtomLocation) -> Result<WedgeRates> {
    require_non_negative("chi", loc.chi)?;
    let theta0 = cfg.wall_angle(loc.theta0)?;
    let chi = loc.chi;

    let mut radial = CompensatedSum::new();
    let mut polar = CompensatedSum::new();
    let mut axial = CompensatedSum::new();
    for (s, st) in cfg.rotation_sines().zip(cfg.reflection_sines(theta0)) {
        let k = Kernels::at(chi * s);
        let kt = Kernels::at(chi * st);
        let (s2, st2) = (s * s, st * st);
        axial.add(k.a() - kt.a());
        radial.add(k.a() + s2 * k.b() - kt.a() - st2 * kt.b());
        polar.add(2.0 * k.c - s2 * k.b() + 2.0 * kt.c - st2 * kt.b());
    }

    let terms = cfg.p as usize;
    let err = 1.5 * 6.0 * terms as f64 * KERNEL_ABS_ERROR;
    let make = |sum: CompensatedSum, scale: f64, o| {
        RateResult::new(scale * sum.value(), Dipole::Wedge(o), terms, err)
    };
    Ok(WedgeRates {
        radial: make(radial, 1.5, Orientation::Radial),
        polar: make(polar, -1.5, Orientation::Polar),
        axial: make(axial, 1.5, Orientation::Axial),
    })
}

/// `Γ/Γ₀` for one dipole orientation inside the wedge.
pub fn wedge_decay(cfg: &WedgeConfig, loc: &AtomLocation, o: Orientation) -> Result<RateResult> {
    wedge_rates(cfg, loc).map(|r| r.get(o))
}

/// `Γ/Γ₀` above a single conducting plane at `chi_perp = 2 q d`.
pub fn plane_decay(chi_perp: f64, o: SurfaceOrientation) -> Result<RateResult> {
    require_non_negative("chi_perp", chi_perp)?;
    let k = Kernels::at(chi_perp);
    let ratio = match o {
        SurfaceOrientation::Parallel => 1.0 - 1.5 * k.a(),
        SurfaceOrientation::Perpendicular => 1.0 - 3.0 * k.c,
    };
    Ok(RateResult::new(
        ratio,
        Dipole::Surface(o),
        1,
        3.0 * KERNEL_ABS_ERROR,
    ))
}

/// Trace bracket `Σ_n [sinc(x_n) − sin²(nπ/p) D(x_n) − E(xθ_n)]` of the wedge shift integral,
/// with `x_n = scaled_r · s · sin(nπ/p)` and `xθ_n = scaled_r · s · sin(θ₀ + nπ/p)`.
#[derive(Debug, Clone)]
pub struct WedgeTraceBracket {
    scaled_r: f64,
    /// Distinct `sin(nπ/p)` with their multiplicities.
    rotations: Vec<(f64, f64)>,
    /// Distinct `sin(θ₀ + nπ/p)` with their multiplicities.
    reflections: Vec<(f64, f64)>,
}

/// Merges sines that agree to rounding; images `n` and `p − n` pair up this way.
fn tally(mut sines: Vec<f64>) -> Vec<(f64, f64)> {
    sines.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(sines.len());
    for s in sines {
        match out.last_mut() {
            Some((v, w)) if (s - *v).abs() <= 4.0 * f64::EPSILON * s.abs() => *w += 1.0,
            _ => out.push((s, 1.0)),
        }
    }
    out
}

impl WedgeTraceBracket {
    pub fn new(cfg: &WedgeConfig, scaled_r: f64, theta0: f64) -> Result<Self> {
        require_positive("scaled_r", scaled_r)?;
        let theta0 = cfg.wall_angle(theta0)?;
        Ok(Self {
            scaled_r,
            rotations: tally(cfg.rotation_sines().collect()),
            reflections: tally(cfg.reflection_sines(theta0).collect()),
        })
    }
}

impl ShiftIntegrand for WedgeTraceBracket {
    fn bracket(&self, s: f64) -> f64 {
        let t = self.scaled_r * s;
        let mut acc = CompensatedSum::new();
        for &(sn, w) in &self.rotations {
            let k = Kernels::at(t * sn);
            acc.add(w * (k.sinc - sn * sn * k.d()));
        }
        for &(st, w) in &self.reflections {
            acc.add(-w * Kernels::at(t * st).e());
        }
        acc.value()
    }

    fn oscillation_period(&self) -> Option<f64> {
        let fastest = self
            .rotations
            .iter()
            .chain(&self.reflections)
            .map(|&(v, _)| v)
            .fold(0.0, f64::max)
            * self.scaled_r;
        (fastest > 0.0).then(|| 2.0 * PI / fastest)
    }
}

/// `ΔE/ΔE⁰` inside the wedge at `scaled_r = 2 γ r₀`.
pub fn wedge_shift_ratio(
    cfg: &WedgeConfig,
    scaled_r: f64,
    theta0: f64,
    sp: &ShiftParams,
) -> Result<ShiftValue> {
    wedge_shift_ratio_with(cfg, scaled_r, theta0, sp, &default_shift_quadrature())
}

/// [`wedge_shift_ratio`] with explicit quadrature settings.
pub fn wedge_shift_ratio_with(
    cfg: &WedgeConfig,
    scaled_r: f64,
    theta0: f64,
    sp: &ShiftParams,
    spec: &QuadratureSpec,
) -> Result<ShiftValue> {
    let bracket = WedgeTraceBracket::new(cfg, scaled_r, theta0)?;
    shift_weighted_integral(&bracket, sp, spec)
}
