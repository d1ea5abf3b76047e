//! Decay rates between two parallel conducting plates.
//!
//! With `u = 4π y/λ` and `v = 4π d/λ` the rates are image series
//!
//! ```text
//! Γ∥/Γ₀ = 1 + 3ΣA(nv) − (3/2)A(u) − (3/2)Σ[A(nv+u) + A(nv−u)]
//! Γ⊥/Γ₀ = 1 − 6ΣC(nv) − 3C(u)     − 3Σ[C(nv+u) + C(nv−u)]
//! ```
//!
//! whose terms decay only like `1/n`. They are summed with a smooth cutoff in
//! image distance, which converges faster than any power of the cutoff except
//! when a waveguide mode sits exactly at its cutoff.

use crate::error::{domain, require_finite, Error, Result};
use crate::rate::{Dipole, Orientation, RateResult, SurfaceOrientation};
use crate::specfun::Kernels;
use crate::sum::CompensatedSum;
use crate::wedge::{wedge_decay, AtomLocation, WedgeConfig};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Plate separation and atom height, both in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatesGeometry {
    d_over_lambda: f64,
    y_over_lambda: f64,
}

impl PlatesGeometry {
    pub fn new(d_over_lambda: f64, y_over_lambda: f64) -> Result<Self> {
        require_finite("d_over_lambda", d_over_lambda)?;
        require_finite("y_over_lambda", y_over_lambda)?;
        if !(d_over_lambda > 0.0) {
            return Err(domain("d_over_lambda", d_over_lambda, "must be positive"));
        }
        if !(y_over_lambda > 0.0 && y_over_lambda < d_over_lambda) {
            return Err(domain(
                "y_over_lambda",
                y_over_lambda,
                "atom must lie strictly between the plates",
            ));
        }
        Ok(Self {
            d_over_lambda,
            y_over_lambda,
        })
    }

    /// Geometry with the atom at fraction `y_frac` of the gap.
    pub fn at_fraction(d_over_lambda: f64, y_frac: f64) -> Result<Self> {
        Self::new(d_over_lambda, y_frac * d_over_lambda)
    }

    pub fn d_over_lambda(&self) -> f64 {
        self.d_over_lambda
    }

    pub fn y_over_lambda(&self) -> f64 {
        self.y_over_lambda
    }

    /// `u = 4π y/λ`
    pub fn u(&self) -> f64 {
        4.0 * PI * self.y_over_lambda
    }

    /// `v = 4π d/λ`
    pub fn v(&self) -> f64 {
        4.0 * PI * self.d_over_lambda
    }
}

/// How the slowly converging image series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Acceleration {
    /// Plain partial sums over image shells.
    None,
    /// Cesàro-style averaging: every image is weighted by a smooth cutoff in its
    /// distance that falls from 1 to 0 over the outer half of the summed range.
    /// Equivalent to averaging partial sums, but with a C^∞ weight.
    #[default]
    PairAveraging,
    /// Repeated averaging of neighbouring partial sums (Euler's transform of the tail).
    EulerTransform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Upper bound on image shells; the shell count doubles from a small start until converged.
    pub max_images: usize,
    pub acceleration: Acceleration,
    /// Absolute tolerance on the change between successive doublings.
    pub tail_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_images: 1 << 20,
            acceleration: Acceleration::PairAveraging,
            tail_tol: 1e-10,
        }
    }
}

impl SeriesControl {
    fn validate(&self) -> Result<()> {
        if self.max_images < 1 {
            return Err(domain("max_images", 0.0, "must be at least 1"));
        }
        if !(self.tail_tol > 0.0) {
            return Err(domain("tail_tol", self.tail_tol, "must be positive"));
        }
        Ok(())
    }
}

const FIRST_SHELLS: usize = 64;
const EULER_DEPTH: usize = 24;

/// Kernel and sign pattern for one orientation: `Γ = 1 + (3/2)[2ΣK(nv) + σ Σ_refl K]`.
#[derive(Clone, Copy)]
struct Series {
    u: f64,
    v: f64,
    kernel: fn(f64) -> f64,
    reflected_sign: f64,
}

fn parallel_kernel(x: f64) -> f64 {
    Kernels::at(x).a()
}

fn perpendicular_kernel(x: f64) -> f64 {
    -2.0 * Kernels::at(x).c
}

/// C^∞ step: 1 on `[0, 1/2]`, 0 on `[1, ∞)`.
fn smooth_cutoff(t: f64) -> f64 {
    if t <= 0.5 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let s = 2.0 * t - 1.0;
    let g = |z: f64| libm::exp(-1.0 / z);
    let (a, b) = (g(1.0 - s), g(s));
    a / (a + b)
}

impl Series {
    fn new(geom: &PlatesGeometry, o: SurfaceOrientation) -> Self {
        let (kernel, reflected_sign): (fn(f64) -> f64, f64) = match o {
            SurfaceOrientation::Parallel => (parallel_kernel, -1.0),
            SurfaceOrientation::Perpendicular => (perpendicular_kernel, 1.0),
        };
        Self {
            u: geom.u(),
            v: geom.v(),
            kernel,
            reflected_sign,
        }
    }

    fn finish(&self, bracket: f64) -> f64 {
        1.0 + 1.5 * bracket
    }

    /// Contribution of shell `n`: the translated pair at `nv` and the reflections at `nv ± u`.
    fn shell(&self, n: usize, weight: impl Fn(f64) -> f64) -> f64 {
        let k = self.kernel;
        if n == 0 {
            return self.reflected_sign * weight(self.u) * k(self.u);
        }
        let nv = n as f64 * self.v;
        let (minus, plus) = (nv - self.u, nv + self.u);
        2.0 * weight(nv) * k(nv)
            + self.reflected_sign * (weight(minus) * k(minus) + weight(plus) * k(plus))
    }

    /// Rate with images out to distance `shells · v` under the smooth cutoff.
    fn smooth_sum(&self, shells: usize) -> f64 {
        let radius = shells as f64 * self.v;
        let w = |dist: f64| smooth_cutoff(dist / radius);
        let mut acc = CompensatedSum::new();
        for n in 0..=shells {
            acc.add(self.shell(n, w));
        }
        self.finish(acc.value())
    }

    /// Partial sums `P_0 … P_shells` over whole shells.
    fn partial_sums(&self, shells: usize) -> Vec<f64> {
        let mut acc = CompensatedSum::new();
        (0..=shells)
            .map(|n| {
                acc.add(self.shell(n, |_| 1.0));
                self.finish(acc.value())
            })
            .collect()
    }

    fn estimate(&self, shells: usize, acceleration: Acceleration) -> f64 {
        match acceleration {
            Acceleration::None => *self.partial_sums(shells).last().expect("non-empty"),
            Acceleration::PairAveraging => self.smooth_sum(shells),
            Acceleration::EulerTransform => {
                let sums = self.partial_sums(shells);
                let depth = EULER_DEPTH.min(sums.len() - 1);
                let mut tail: Vec<f64> = sums[sums.len() - 1 - depth..].to_vec();
                for level in (1..=depth).rev() {
                    for i in 0..level {
                        tail[i] = 0.5 * (tail[i] + tail[i + 1]);
                    }
                }
                tail[0]
            }
        }
    }
}

/// `Γ/Γ₀` between the plates.
///
/// The shell count doubles until two successive estimates differ by at most
/// `ctl.tail_tol`; otherwise [`Error::NotConverged`] carries the last estimate.
pub fn plates_decay(
    geom: &PlatesGeometry,
    o: SurfaceOrientation,
    ctl: &SeriesControl,
) -> Result<RateResult> {
    ctl.validate()?;
    let series = Series::new(geom, o);
    let mut shells = FIRST_SHELLS.min(ctl.max_images);
    let mut previous = series.estimate(shells.div_ceil(2).max(1), ctl.acceleration);
    loop {
        let current = series.estimate(shells, ctl.acceleration);
        let est_error = (current - previous).abs();
        if est_error <= ctl.tail_tol {
            return Ok(RateResult::new(
                current,
                Dipole::Surface(o),
                4 * shells + 1,
                est_error,
            ));
        }
        if shells >= ctl.max_images {
            return Err(Error::NotConverged {
                what: "plate image series",
                partial: current,
                est_error,
            });
        }
        previous = current;
        shells = (2 * shells).min(ctl.max_images);
    }
}

/// The plate rate as the limit of a wedge with large `p`: `r₀ = d p/π`, `θ₀ = π y/(d p)`.
///
/// `Polar` maps to the perpendicular plate rate, `Radial` and `Axial` to the parallel one.
pub fn plates_limit_oracle(
    geom: &PlatesGeometry,
    o: Orientation,
    p_large: u32,
) -> Result<RateResult> {
    if p_large < 100 {
        return Err(domain("p_large", p_large as f64, "must be at least 100"));
    }
    let cfg = WedgeConfig::new(p_large)?;
    let chi = 4.0 * geom.d_over_lambda * p_large as f64;
    let theta0 = PI * geom.y_over_lambda / (geom.d_over_lambda * p_large as f64);
    wedge_decay(&cfg, &AtomLocation::new(chi, theta0)?, o)
}
