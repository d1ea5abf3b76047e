//! Globally adaptive Gauss–Kronrod 7/15 quadrature on finite intervals.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol·|value|)` or the panel budget runs out.
//! Error estimates follow the QUADPACK `qk15` heuristic.

use crate::error::{domain, require_finite, Error, Result};
use crate::sum::CompensatedSum;
use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Period of the fastest oscillation of the integrand, if known.
    pub oscillation_period_hint: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_panels: 1 << 16,
            oscillation_period_hint: None,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_panels: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_panels,
            oscillation_period_hint: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_period_hint(mut self, period: f64) -> Self {
        self.oscillation_period_hint = Some(period);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(domain("rel_tol", self.rel_tol, "must be positive"));
        }
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(domain("abs_tol", self.abs_tol, "must be positive"));
        }
        if self.max_panels < 8 {
            return Err(domain(
                "max_panels",
                self.max_panels as f64,
                "must be at least 8",
            ));
        }
        if let Some(p) = self.oscillation_period_hint {
            if !(p > 0.0) {
                return Err(domain("oscillation_period_hint", p, "must be positive"));
            }
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub panels: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Turns a non-converged result into [`Error::NotConverged`].
    pub fn require_converged(self, what: &'static str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                what,
                partial: self.value,
                est_error: self.est_error,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                what: "integrand",
                at: x,
            })
        }
    };

    let fc = eval(center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * libm::pow(200.0 * err / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, err })
}

/// Signed integral of `f` from `a` to `b`.
///
/// Returns `Ok` with `converged = false` when the panel budget runs out;
/// a non-finite integrand value is an error.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    require_finite("a", a)?;
    require_finite("b", b)?;
    spec.validate()?;
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            est_error: 0.0,
            panels: 0,
            converged: true,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let initial = match spec.oscillation_period_hint {
        Some(period) => libm::ceil((hi - lo) / (0.5 * period)).max(1.0),
        None => 1.0,
    };
    if initial > spec.max_panels as f64 {
        return Err(Error::Capability {
            name: "initial panels",
            value: initial,
            limit: spec.max_panels as f64,
        });
    }
    let initial = initial as usize;
    let width = (hi - lo) / initial as f64;

    let mut heap = BinaryHeap::with_capacity(initial.max(64));
    let mut total_err = 0.0;
    for i in 0..initial {
        let pa = lo + width * i as f64;
        let pb = if i + 1 == initial {
            hi
        } else {
            lo + width * (i + 1) as f64
        };
        let panel = kronrod15(&mut f, pa, pb)?;
        total_err += panel.err;
        heap.push(panel);
    }

    let value_of = |heap: &BinaryHeap<Panel>| -> f64 {
        heap.iter()
            .map(|p| p.value)
            .collect::<CompensatedSum>()
            .value()
    };
    let mut value = value_of(&heap);
    let mut running_value = value;
    let mut converged = total_err <= spec.target(value);

    while !converged && heap.len() < spec.max_panels {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let left = kronrod15(&mut f, worst.a, mid)?;
        let right = kronrod15(&mut f, mid, worst.b)?;
        total_err += left.err + right.err - worst.err;
        running_value += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        if total_err <= spec.target(running_value) {
            // Recompute both sums exactly before declaring success.
            total_err = heap.iter().map(|p| p.err).sum();
            value = value_of(&heap);
            running_value = value;
            converged = total_err <= spec.target(value);
        }
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_unstable_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = panels
        .iter()
        .map(|p| p.value)
        .collect::<CompensatedSum>()
        .value();
    let est_error: f64 = panels.iter().map(|p| p.err).sum();
    Ok(QuadratureResult {
        value: sign * value,
        est_error,
        panels: panels.len(),
        converged: est_error <= spec.target(value),
    })
}
