use core::fmt;

/// Dipole direction in the cylindrical frame of the wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Radial,
    Polar,
    Axial,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::Radial, Orientation::Polar, Orientation::Axial];
}

/// Dipole direction relative to a conducting plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceOrientation {
    Parallel,
    Perpendicular,
}

/// Dipole direction near a half-sheet: `Y` is normal to the sheet, `Z` along its edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SheetAxis {
    Y,
    Z,
}

/// Which geometry and dipole direction a [`RateResult`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dipole {
    Wedge(Orientation),
    Surface(SurfaceOrientation),
    Sheet(SheetAxis),
}

impl fmt::Display for Dipole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dipole::Wedge(Orientation::Radial) => "radial",
            Dipole::Wedge(Orientation::Polar) => "polar",
            Dipole::Wedge(Orientation::Axial) => "axial",
            Dipole::Surface(SurfaceOrientation::Parallel) => "parallel",
            Dipole::Surface(SurfaceOrientation::Perpendicular) => "perpendicular",
            Dipole::Sheet(SheetAxis::Y) => "y",
            Dipole::Sheet(SheetAxis::Z) => "z",
        };
        f.write_str(name)
    }
}

/// A decay rate normalized to its free-space value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    /// `Γ/Γ₀`
    pub ratio: f64,
    pub dipole: Dipole,
    pub terms_used: usize,
    pub est_error: f64,
}

/// Ratios below this are reported as bugs in debug builds.
pub(crate) const NEGATIVE_RATE_FLOOR: f64 = -1e-10;

impl RateResult {
    pub(crate) fn new(ratio: f64, dipole: Dipole, terms_used: usize, est_error: f64) -> Self {
        debug_assert!(
            ratio >= NEGATIVE_RATE_FLOOR - est_error,
            "negative rate {ratio} for {dipole}"
        );
        Self {
            ratio,
            dipole,
            terms_used,
            est_error: est_error.abs(),
        }
    }
}
