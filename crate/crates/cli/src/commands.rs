//! Sweep subcommands. Distances arrive in wavelengths and are converted here,
//! and only here, to the library's `chi = 4π r/λ`.

use crate::args::{
    AccelerationArg, HalfsheetDecayArgs, HalfsheetShiftArgs, PlatesDecayArgs, PlatesSweep,
    ShiftSweep, SweepRange, WedgeDecayArgs, WedgeShiftArgs, WedgeSweep,
};
use crate::error::CliError;
use crate::output::{fmt_float, Row, Table};
use rayon::prelude::*;
use std::f64::consts::PI;
use wedgerate_core::{
    halfsheet_decay_y, halfsheet_decay_z, halfsheet_shift_far, plates_decay, wedge_rates,
    wedge_shift_ratio, Acceleration, AtomLocation, Error as CoreError, HalfSheetKernelState,
    HalfSheetLocation, PlatesGeometry, SeriesControl, ShiftParams, SurfaceOrientation, WedgeConfig,
};

/// `chi = 2 q r` with `q = 2π/λ`.
pub fn chi_from_wavelengths(r_over_lambda: f64) -> f64 {
    4.0 * PI * r_over_lambda
}

/// One evaluated column: value, error estimate, convergence.
#[derive(Debug, Clone, Copy)]
struct Cell {
    value: f64,
    est_error: f64,
    converged: bool,
}

impl Cell {
    fn ok(value: f64, est_error: f64) -> Self {
        Self {
            value,
            est_error,
            converged: true,
        }
    }

    /// Keeps domain errors, turns numeric failures into a flagged cell.
    /// `partial_is_value` says whether the error's partial value estimates this cell.
    fn from_error(e: CoreError, partial_is_value: bool) -> Result<Self, CoreError> {
        match e {
            CoreError::NotConverged {
                partial, est_error, ..
            } => Ok(Self {
                value: if partial_is_value { partial } else { f64::NAN },
                est_error: if partial_is_value {
                    est_error
                } else {
                    f64::NAN
                },
                converged: false,
            }),
            CoreError::NonFinite { .. } => Ok(Self {
                value: f64::NAN,
                est_error: f64::NAN,
                converged: false,
            }),
            other => Err(other),
        }
    }
}

fn row(x: f64, cells: &[Cell]) -> Row {
    Row {
        x,
        values: cells.iter().map(|c| c.value).collect(),
        est_error: cells.iter().map(|c| c.est_error).fold(0.0, f64::max),
        converged: cells.iter().all(|c| c.converged),
    }
}

/// Evenly spaced points with both endpoints exact.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    let last = points - 1;
    (0..points)
        .map(|i| {
            if i == last {
                stop
            } else {
                start + (stop - start) * i as f64 / last as f64
            }
        })
        .collect()
}

/// Sweep points, or the single fixed value when no sweep was requested.
fn points(
    sweep_flag: Option<&str>,
    fixed_name: &str,
    fixed: Option<f64>,
    range: &SweepRange,
) -> Result<Vec<f64>, CliError> {
    match sweep_flag {
        Some(var) => {
            if fixed.is_some() {
                return Err(CliError::usage(format!(
                    "--{fixed_name} cannot be combined with --sweep {var}"
                )));
            }
            let (Some(start), Some(stop)) = (range.start, range.stop) else {
                return Err(CliError::usage(format!(
                    "--sweep {var} needs --start and --stop"
                )));
            };
            if range.points < 2 {
                return Err(CliError::usage("--points must be at least 2"));
            }
            if start >= stop {
                return Err(CliError::usage("--start must be below --stop"));
            }
            Ok(linspace(start, stop, range.points))
        }
        None => {
            if range.start.is_some() || range.stop.is_some() {
                return Err(CliError::usage("--start/--stop need --sweep"));
            }
            fixed.map(|v| vec![v]).ok_or_else(|| {
                CliError::usage(format!("--{fixed_name} is required without --sweep"))
            })
        }
    }
}

fn require(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{name} is required")))
}

/// Evaluates rows concurrently and returns them in sweep order.
/// The first domain error in sweep order aborts the command.
fn evaluate<F>(xs: &[f64], jobs: Option<usize>, f: F) -> Result<Vec<Row>, CliError>
where
    F: Fn(f64) -> Result<Row, CoreError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<Row, CoreError>> =
        pool.install(|| xs.par_iter().map(|&x| f(x)).collect());
    results
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn sweep_param(name: &str, range: &SweepRange) -> (&'static str, String) {
    let (start, stop) = (
        range.start.unwrap_or(f64::NAN),
        range.stop.unwrap_or(f64::NAN),
    );
    (
        "sweep",
        format!("{name} from {start} to {stop}, {} points", range.points),
    )
}

fn theta_from_args(cfg: &WedgeConfig, theta0: Option<f64>, frac: Option<f64>) -> Option<f64> {
    theta0.or_else(|| Some(frac.unwrap_or(0.5) * cfg.apex_angle()))
}

pub fn wedge_decay(a: &WedgeDecayArgs) -> Result<Table, CliError> {
    let cfg = WedgeConfig::new(a.p)?;
    let sweeping_theta = a.sweep == Some(WedgeSweep::Theta);
    let theta_fixed = if sweeping_theta {
        if a.theta0.is_some() || a.theta0_frac.is_some() {
            return Err(CliError::usage(
                "--theta0/--theta0-frac cannot be combined with --sweep theta",
            ));
        }
        None
    } else {
        theta_from_args(&cfg, a.theta0, a.theta0_frac)
    };
    let (xs, x_name, mut params) = match a.sweep {
        Some(WedgeSweep::R) => (
            points(Some("r"), "r-over-lambda", a.r_over_lambda, &a.range)?,
            "r_over_lambda",
            vec![sweep_param("r_over_lambda", &a.range)],
        ),
        Some(WedgeSweep::Theta) => (
            points(Some("theta"), "theta0", None, &a.range)?,
            "theta0",
            vec![sweep_param("theta0", &a.range)],
        ),
        None => (
            points(None, "r-over-lambda", a.r_over_lambda, &a.range)?,
            "r_over_lambda",
            Vec::new(),
        ),
    };
    params.insert(0, ("p", a.p.to_string()));
    params.insert(1, ("apex_angle", fmt_float(cfg.apex_angle())));
    if let Some(t) = theta_fixed {
        params.push(("theta0", fmt_float(t)));
    }
    if a.sweep == Some(WedgeSweep::Theta) {
        params.push((
            "r_over_lambda",
            fmt_float(require("r-over-lambda", a.r_over_lambda)?),
        ));
    }
    let r_fixed = a.r_over_lambda;
    let rows = evaluate(&xs, a.output.jobs, |x| {
        let (r, theta) = if sweeping_theta {
            (r_fixed.expect("checked above"), x)
        } else {
            (x, theta_fixed.expect("set when not sweeping theta"))
        };
        let rates = wedge_rates(&cfg, &AtomLocation::new(chi_from_wavelengths(r), theta)?)?;
        let cells =
            [rates.radial, rates.polar, rates.axial].map(|v| Cell::ok(v.ratio, v.est_error));
        Ok(row(x, &cells))
    })?;
    Ok(Table {
        command: "wedge-decay",
        params,
        x_name,
        columns: &["gamma_r", "gamma_theta", "gamma_z"],
        rows,
    })
}

pub fn plates_decay_cmd(a: &PlatesDecayArgs) -> Result<Table, CliError> {
    let ctl = SeriesControl {
        max_images: a.max_images,
        acceleration: match a.acceleration {
            AccelerationArg::None => Acceleration::None,
            AccelerationArg::PairAveraging => Acceleration::PairAveraging,
            AccelerationArg::Euler => Acceleration::EulerTransform,
        },
        tail_tol: a.tail_tol,
    };
    let mut params = Vec::new();
    let (xs, x_name) = match a.sweep {
        Some(PlatesSweep::D) => {
            params.push(sweep_param("d_over_lambda", &a.range));
            (
                points(Some("d"), "d-over-lambda", a.d_over_lambda, &a.range)?,
                "d_over_lambda",
            )
        }
        Some(PlatesSweep::Y) => {
            if a.y_frac.is_some() {
                return Err(CliError::usage(
                    "--y-frac cannot be combined with --sweep y",
                ));
            }
            params.push(sweep_param("y_over_lambda", &a.range));
            params.push((
                "d_over_lambda",
                fmt_float(require("d-over-lambda", a.d_over_lambda)?),
            ));
            (
                points(Some("y"), "y-over-lambda", a.y_over_lambda, &a.range)?,
                "y_over_lambda",
            )
        }
        None => (
            points(None, "d-over-lambda", a.d_over_lambda, &a.range)?,
            "d_over_lambda",
        ),
    };
    if a.sweep != Some(PlatesSweep::Y) {
        match (a.y_over_lambda, a.y_frac) {
            (Some(y), None) => params.push(("y_over_lambda", fmt_float(y))),
            (None, Some(f)) => params.push(("y_frac", fmt_float(f))),
            _ => {
                return Err(CliError::usage(
                    "one of --y-over-lambda or --y-frac is required",
                ))
            }
        }
    }
    params.push(("acceleration", format!("{:?}", ctl.acceleration)));
    params.push(("max_images", ctl.max_images.to_string()));
    params.push(("tail_tol", fmt_float(ctl.tail_tol)));

    let sweep = a.sweep;
    let rows = evaluate(&xs, a.output.jobs, |x| {
        let geom = match sweep {
            Some(PlatesSweep::Y) => PlatesGeometry::new(a.d_over_lambda.expect("checked"), x)?,
            _ => match a.y_frac {
                Some(f) => PlatesGeometry::at_fraction(x, f)?,
                None => PlatesGeometry::new(x, a.y_over_lambda.expect("checked"))?,
            },
        };
        let mut cells = Vec::with_capacity(2);
        for o in [
            SurfaceOrientation::Parallel,
            SurfaceOrientation::Perpendicular,
        ] {
            cells.push(match plates_decay(&geom, o, &ctl) {
                Ok(r) => Cell::ok(r.ratio, r.est_error),
                Err(e) => Cell::from_error(e, true)?,
            });
        }
        Ok(row(x, &cells))
    })?;
    Ok(Table {
        command: "plates-decay",
        params,
        x_name,
        columns: &["gamma_par", "gamma_perp"],
        rows,
    })
}

pub fn halfsheet_decay_cmd(a: &HalfsheetDecayArgs) -> Result<Table, CliError> {
    let ks = HalfSheetKernelState {
        rel_tol: a.rel_tol,
        ..HalfSheetKernelState::default()
    };
    let mut params = Vec::new();
    let (xs, x_name) = match a.sweep {
        Some(WedgeSweep::R) => {
            params.push(sweep_param("r_over_lambda", &a.range));
            params.push(("theta0", fmt_float(require("theta0", a.theta0)?)));
            (
                points(Some("r"), "r-over-lambda", a.r_over_lambda, &a.range)?,
                "r_over_lambda",
            )
        }
        Some(WedgeSweep::Theta) => {
            params.push(sweep_param("theta0", &a.range));
            params.push((
                "r_over_lambda",
                fmt_float(require("r-over-lambda", a.r_over_lambda)?),
            ));
            (
                points(Some("theta"), "theta0", a.theta0, &a.range)?,
                "theta0",
            )
        }
        None => {
            params.push(("theta0", fmt_float(require("theta0", a.theta0)?)));
            (
                points(None, "r-over-lambda", a.r_over_lambda, &a.range)?,
                "r_over_lambda",
            )
        }
    };
    params.push(("rel_tol", fmt_float(ks.rel_tol)));
    let sweep = a.sweep;
    let rows = evaluate(&xs, a.output.jobs, |x| {
        let (r, theta) = match sweep {
            Some(WedgeSweep::Theta) => (a.r_over_lambda.expect("checked"), x),
            _ => (x, a.theta0.expect("checked")),
        };
        let loc = HalfSheetLocation::new(chi_from_wavelengths(r), theta)?;
        let y = halfsheet_decay_y(&loc, &ks).map(|v| Cell::ok(v.ratio, v.est_error));
        let z = halfsheet_decay_z(&loc, &ks).map(|v| Cell::ok(v.ratio, v.est_error));
        let y = y.or_else(|e| Cell::from_error(e, false))?;
        let z = z.or_else(|e| Cell::from_error(e, false))?;
        Ok(row(x, &[y, z]))
    })?;
    Ok(Table {
        command: "halfsheet-decay",
        params,
        x_name,
        columns: &["gamma_y", "gamma_z"],
        rows,
    })
}

pub fn wedge_shift_cmd(a: &WedgeShiftArgs) -> Result<Table, CliError> {
    let cfg = WedgeConfig::new(a.p)?;
    let sp = ShiftParams::new(a.lambda_cap)?;
    let mut params = vec![
        ("p", a.p.to_string()),
        ("apex_angle", fmt_float(cfg.apex_angle())),
        ("lambda_cap", a.lambda_cap.to_string()),
    ];
    let sweeping_theta = a.sweep == Some(ShiftSweep::Theta);
    let theta_fixed = if sweeping_theta {
        if a.theta0.is_some() || a.theta0_frac.is_some() {
            return Err(CliError::usage(
                "--theta0/--theta0-frac cannot be combined with --sweep theta",
            ));
        }
        None
    } else {
        theta_from_args(&cfg, a.theta0, a.theta0_frac)
    };
    let (xs, x_name) = match a.sweep {
        Some(ShiftSweep::Scaled2gr) => {
            params.push(sweep_param("scaled_2gr", &a.range));
            (
                points(Some("scaled-2gr"), "scaled-2gr", a.scaled_2gr, &a.range)?,
                "scaled_2gr",
            )
        }
        Some(ShiftSweep::Theta) => {
            params.push(sweep_param("theta0", &a.range));
            params.push((
                "scaled_2gr",
                fmt_float(require("scaled-2gr", a.scaled_2gr)?),
            ));
            (points(Some("theta"), "theta0", None, &a.range)?, "theta0")
        }
        None => (
            points(None, "scaled-2gr", a.scaled_2gr, &a.range)?,
            "scaled_2gr",
        ),
    };
    if let Some(t) = theta_fixed {
        params.push(("theta0", fmt_float(t)));
    }
    let rows = evaluate(&xs, a.output.jobs, |x| {
        let (scaled, theta) = if sweeping_theta {
            (a.scaled_2gr.expect("checked"), x)
        } else {
            (x, theta_fixed.expect("set when not sweeping theta"))
        };
        let cell = match wedge_shift_ratio(&cfg, scaled, theta, &sp) {
            Ok(v) => Cell::ok(v.ratio, v.est_error),
            Err(e) => Cell::from_error(e, true)?,
        };
        Ok(row(x, &[cell]))
    })?;
    Ok(Table {
        command: "wedge-shift",
        params,
        x_name,
        columns: &["delta_e_ratio"],
        rows,
    })
}

pub fn halfsheet_shift_cmd(a: &HalfsheetShiftArgs) -> Result<Table, CliError> {
    let sp = ShiftParams::new(a.lambda_cap)?;
    let mut params = vec![("lambda_cap", a.lambda_cap.to_string())];
    let sweep = a.sweep.map(|_| "scaled-2gr");
    if sweep.is_some() {
        params.push(sweep_param("scaled_2gr", &a.range));
    }
    let xs = points(sweep, "scaled-2gr", a.scaled_2gr, &a.range)?;
    let rows = evaluate(&xs, a.output.jobs, |x| {
        let cell = match halfsheet_shift_far(x, &sp) {
            Ok(v) => Cell::ok(v.ratio, v.est_error),
            Err(e) => Cell::from_error(e, true)?,
        };
        Ok(row(x, &[cell]))
    })?;
    Ok(Table {
        command: "halfsheet-shift",
        params,
        x_name: "scaled_2gr",
        columns: &["delta_e_ratio"],
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        let xs = linspace(0.01, 5.0, 500);
        assert_eq!(xs.len(), 500);
        assert_eq!(xs[0], 0.01);
        assert_eq!(xs[499], 5.0);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn chi_conversion() {
        assert_eq!(chi_from_wavelengths(0.5), 2.0 * PI);
    }
}
