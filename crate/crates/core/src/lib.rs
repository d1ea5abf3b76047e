//! Spontaneous-emission rates and level shifts of an atom near perfect conductors.
//!
//! Geometries: a wedge of apex angle `π/p` ([`wedge`]), its parallel-plate
//! limit ([`plates`]) and the half-sheet ([`halfsheet`]). Every quantity is
//! dimensionless; distances enter as `χ = 2 q r` with `q = 2π/λ`, and rates as
//! ratios to the free-space rate `Γ₀`.
//!
//! ```
//! use wedgerate_core::{wedge_decay, AtomLocation, Orientation, WedgeConfig};
//!
//! let cfg = WedgeConfig::new(2)?;
//! let loc = AtomLocation::new(10.0, std::f64::consts::FRAC_PI_4)?;
//! let axial = wedge_decay(&cfg, &loc, Orientation::Axial)?;
//! assert!(axial.ratio > 0.0);
//! # Ok::<(), wedgerate_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod halfsheet;
pub mod oracle;
pub mod plates;
pub mod quadrature;
mod rate;
pub mod shift;
pub mod specfun;
mod sum;
pub mod wedge;

pub use error::{Error, Result};
pub use halfsheet::{
    halfsheet_decay_y, halfsheet_decay_z, halfsheet_far_limits, halfsheet_shift_far,
    HalfSheetKernelState, HalfSheetLocation,
};
pub use plates::{plates_decay, plates_limit_oracle, Acceleration, PlatesGeometry, SeriesControl};
pub use quadrature::{integrate, QuadratureResult, QuadratureSpec};
pub use rate::{Dipole, Orientation, RateResult, SheetAxis, SurfaceOrientation};
pub use shift::{shift_weighted_integral, ShiftIntegrand, ShiftParams, ShiftValue};
pub use wedge::{
    plane_decay, wedge_decay, wedge_rates, wedge_shift_ratio, AtomLocation, WedgeConfig, WedgeRates,
};
