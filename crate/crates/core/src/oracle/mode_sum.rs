//! Brute-force cylindrical mode sum for the wedge Green tensor at coincidence.
//!
//! Inside the wedge the scattering part of the Green tensor expands in
//! `J_{mp}(η r) H_{mp}(η r)` over axial wavenumbers `k`. Only the propagating
//! band `|k| < q` has an imaginary part, where `Im[J H] = J²`. Substituting
//! `k = q sin φ` gives, with `ρ = χ/2`, `y = ρ cos φ` and `ν = m p`,
//!
//! ```text
//! Im 𝒟_zz = 4p ∫₀^{π/2} cos φ · cos²φ Σ'_m J_ν(y)² sin²(νθ₀) dφ
//! Im 𝒟_rr = 4p ∫₀^{π/2} cos φ · Σ'_m [ν²/y² J_ν² + sin²φ J'_ν²] sin²(νθ₀) dφ
//! Im 𝒟_θθ = 4p ∫₀^{π/2} cos φ · Σ'_m [sin²φ ν²/y² J_ν² + J'_ν²] cos²(νθ₀) dφ
//! ```
//!
//! The primed sum halves `m = 0`, and `Γ/Γ₀ = (3/2) Im 𝒟`.

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::rate::{Dipole, Orientation, RateResult};
use crate::specfun::{fill_orders, j_unchecked, MAX_ORDER};
use crate::wedge::{AtomLocation, WedgeConfig};
use alloc::vec;
use core::f64::consts::{FRAC_PI_2, PI};

/// Sign of the literal `−2ip` prefactor's contribution, fixed by requiring `+2/3`
/// per component in free space (see the `calibration` test).
pub const CALIBRATED_SIGN: f64 = -1.0;

/// Truncation tail, relative to the leading term, below which `m_max` is accepted.
const TAIL_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSumControl {
    /// Angular orders `m p` run up to `m_max · p`.
    pub m_max: u32,
    pub k_quadrature: QuadratureSpec,
}

impl ModeSumControl {
    /// Smallest `m_max` whose first omitted order is negligible at the largest Bessel argument.
    pub fn adaptive(cfg: &WedgeConfig, loc: &AtomLocation) -> Result<Self> {
        let rho = 0.5 * loc.chi;
        let p = cfg.p();
        let mut m = 1;
        while tail_size(p, m, rho) > TAIL_TOLERANCE {
            m += 1;
            if (m + 1) * p > MAX_ORDER {
                return Err(Error::Capability {
                    name: "chi",
                    value: loc.chi,
                    limit: 2.0 * MAX_ORDER as f64,
                });
            }
        }
        Ok(Self {
            m_max: m,
            k_quadrature: QuadratureSpec {
                rel_tol: 1e-12,
                abs_tol: 1e-14,
                max_panels: 1 << 16,
                oscillation_period_hint: Some(if rho > 1.0 { PI / rho } else { FRAC_PI_2 }),
            },
        })
    }
}

/// Largest neglected contribution, `J_{(m+1)p}(ρ)²` and its derivative squared.
fn tail_size(p: u32, m: u32, rho: f64) -> f64 {
    let nu = (m + 1) * p;
    let j = j_unchecked(nu, rho);
    let jp = 0.5 * (j_unchecked(nu - 1, rho) - j_unchecked(nu + 1, rho));
    let lead = (nu as f64 / rho.max(1e-300)).max(1.0);
    (j * j * lead * lead).max(jp * jp)
}

/// `Γ/Γ₀` from the truncated mode sum.
pub fn mode_sum_decay(
    cfg: &WedgeConfig,
    loc: &AtomLocation,
    o: Orientation,
    ctl: &ModeSumControl,
) -> Result<RateResult> {
    let alpha = cfg.apex_angle();
    if !(loc.chi > 0.0) || !loc.chi.is_finite() {
        return Err(domain("chi", loc.chi, "must be positive"));
    }
    if !(loc.theta0 > 0.0 && loc.theta0 < alpha) {
        return Err(domain(
            "theta0",
            loc.theta0,
            "must lie strictly between the walls",
        ));
    }
    if ctl.m_max < 1 {
        return Err(domain("m_max", 0.0, "must be at least 1"));
    }
    let p = cfg.p();
    let top = ctl
        .m_max
        .checked_mul(p)
        .filter(|&t| t < MAX_ORDER)
        .ok_or(Error::Capability {
            name: "m_max * p",
            value: ctl.m_max as f64 * p as f64,
            limit: MAX_ORDER as f64,
        })?;
    let rho = 0.5 * loc.chi;
    let tail = tail_size(p, ctl.m_max, rho);
    if tail > 1e3 * TAIL_TOLERANCE {
        return Err(Error::NotConverged {
            what: "mode sum truncation (increase m_max)",
            partial: f64::NAN,
            est_error: tail,
        });
    }

    let weights: alloc::vec::Vec<f64> = (0..=ctl.m_max)
        .map(|m| {
            let s = libm::sin((m * p) as f64 * loc.theta0);
            let prime = if m == 0 { 0.5 } else { 1.0 };
            prime
                * match o {
                    Orientation::Polar => 1.0 - s * s,
                    _ => s * s,
                }
        })
        .collect();

    let mut j = vec![0.0; top as usize + 2];
    let integrand = |phi: f64| {
        let (sin_phi, cos_phi) = libm::sincos(phi);
        let y = rho * cos_phi;
        fill_orders(y, &mut j);
        let mut acc = 0.0;
        for (m, w) in weights.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            let nu = m * p as usize;
            let jn = j[nu];
            let jd = if nu == 0 {
                -j[1]
            } else {
                0.5 * (j[nu - 1] - j[nu + 1])
            };
            let order_term = if nu == 0 { 0.0 } else { nu as f64 / y * jn };
            let term = match o {
                Orientation::Axial => cos_phi * cos_phi * jn * jn,
                Orientation::Radial => order_term * order_term + sin_phi * sin_phi * jd * jd,
                Orientation::Polar => sin_phi * sin_phi * order_term * order_term + jd * jd,
            };
            acc += w * term;
        }
        cos_phi * acc
    };
    let r = integrate(integrand, 0.0, FRAC_PI_2, &ctl.k_quadrature)?
        .require_converged("mode sum k-integral")?;

    // Literal prefactor: Im(−2i p · 2∫...) over the even φ range.
    let raw = -4.0 * p as f64 * r.value;
    let ratio = 1.5 * CALIBRATED_SIGN * raw;
    let est_error = 1.5 * 4.0 * p as f64 * (r.est_error + tail);
    Ok(RateResult::new(
        ratio,
        Dipole::Wedge(o),
        top as usize + 1,
        est_error,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rate::SurfaceOrientation;
    use crate::wedge::{plane_decay, wedge_decay};

    fn run(p: u32, theta0: f64, chi: f64, o: Orientation) -> f64 {
        let cfg = WedgeConfig::new(p).unwrap();
        let loc = AtomLocation::new(chi, theta0).unwrap();
        let ctl = ModeSumControl::adaptive(&cfg, &loc).unwrap();
        mode_sum_decay(&cfg, &loc, o, &ctl).unwrap().ratio
    }

    #[test]
    fn calibration() {
        // A half-space far from its wall is free space: every component tends to 1.
        for o in Orientation::ALL {
            let r = run(1, PI / 2.0, 2000.0, o);
            assert!((r - 1.0).abs() < 5e-3, "{o:?}: {r}");
        }
    }

    #[test]
    fn plane_agreement() {
        let chi = 10.0;
        let perp = plane_decay(chi, SurfaceOrientation::Perpendicular)
            .unwrap()
            .ratio;
        let par = plane_decay(chi, SurfaceOrientation::Parallel)
            .unwrap()
            .ratio;
        assert!((run(1, PI / 2.0, chi, Orientation::Radial) - perp).abs() < 1e-6);
        assert!((run(1, PI / 2.0, chi, Orientation::Polar) - par).abs() < 1e-6);
        assert!((run(1, PI / 2.0, chi, Orientation::Axial) - par).abs() < 1e-6);
    }

    #[test]
    fn right_angle_wedge_agreement() {
        let cfg = WedgeConfig::new(2).unwrap();
        for chi in [1.0, 5.0, 20.0] {
            let loc = AtomLocation::new(chi, PI / 4.0).unwrap();
            for o in Orientation::ALL {
                let closed = wedge_decay(&cfg, &loc, o).unwrap().ratio;
                let modes = run(2, PI / 4.0, chi, o);
                assert!(
                    (closed - modes).abs() <= 1e-6 * closed.abs().max(1e-3),
                    "{o:?} chi = {chi}"
                );
            }
        }
    }

    #[test]
    fn doubling_m_max_is_stable() {
        let cfg = WedgeConfig::new(3).unwrap();
        let loc = AtomLocation::new(12.0, 0.3).unwrap();
        let ctl = ModeSumControl::adaptive(&cfg, &loc).unwrap();
        let wide = ModeSumControl {
            m_max: 2 * ctl.m_max,
            ..ctl
        };
        for o in Orientation::ALL {
            let a = mode_sum_decay(&cfg, &loc, o, &ctl).unwrap().ratio;
            let b = mode_sum_decay(&cfg, &loc, o, &wide).unwrap().ratio;
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn insufficient_m_max_is_rejected() {
        let cfg = WedgeConfig::new(1).unwrap();
        let loc = AtomLocation::new(40.0, 1.0).unwrap();
        let ctl = ModeSumControl {
            m_max: 3,
            ..ModeSumControl::adaptive(&cfg, &loc).unwrap()
        };
        assert!(matches!(
            mode_sum_decay(&cfg, &loc, Orientation::Axial, &ctl),
            Err(Error::NotConverged { .. })
        ));
    }

    #[test]
    fn walls_are_excluded() {
        let cfg = WedgeConfig::new(2).unwrap();
        let loc = AtomLocation::new(3.0, 0.0).unwrap();
        let ctl = ModeSumControl::adaptive(&cfg, &loc).unwrap();
        assert!(mode_sum_decay(&cfg, &loc, Orientation::Axial, &ctl).is_err());
    }
}
