use crate::expr::parse_value;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "wedgerate",
    version,
    about = "Decay rates and level shifts of an atom near conducting wedges, plates and half-sheets",
    args_override_self = true,
    after_help = "Any flag may be preset from a recipe file with --config PATH \
                  (one 'key = value' per line, '#' comments). Command-line flags win."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wedge of apex angle pi/p: radial, polar and axial rates.
    WedgeDecay(WedgeDecayArgs),
    /// Two parallel plates: parallel and perpendicular rates.
    PlatesDecay(PlatesDecayArgs),
    /// Half-sheet: rates for dipoles normal to the sheet (y) and along its edge (z).
    HalfsheetDecay(HalfsheetDecayArgs),
    /// Relative level shift inside a wedge.
    WedgeShift(WedgeShiftArgs),
    /// Relative level shift far from the edge of a half-sheet.
    HalfsheetShift(HalfsheetShiftArgs),
    /// Run validation suites and print a pass/fail table.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SweepRange {
    /// First value of the swept variable (accepts forms like pi/3).
    #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
    pub start: Option<f64>,
    /// Last value of the swept variable.
    #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    /// Number of evenly spaced points, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; relative paths resolve against $WEDGERATE_OUTPUT_DIR when set. Default: stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweep points (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WedgeSweep {
    #[value(alias = "r-over-lambda")]
    R,
    #[value(alias = "theta0")]
    Theta,
}

#[derive(Debug, Clone, Args)]
pub struct WedgeDecayArgs {
    /// Apex angle is pi/p.
    #[arg(long)]
    pub p: u32,
    /// Angle from the lower wall in radians.
    #[arg(long, value_parser = parse_value, conflicts_with = "theta0_frac")]
    pub theta0: Option<f64>,
    /// Angle as a fraction of the apex angle (default 0.5).
    #[arg(long, value_parser = parse_value)]
    pub theta0_frac: Option<f64>,
    /// Distance from the apex in wavelengths.
    #[arg(long, value_parser = parse_value)]
    pub r_over_lambda: Option<f64>,
    #[arg(long, value_enum)]
    pub sweep: Option<WedgeSweep>,
    #[command(flatten)]
    pub range: SweepRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlatesSweep {
    #[value(alias = "d-over-lambda")]
    D,
    #[value(alias = "y-over-lambda")]
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AccelerationArg {
    None,
    PairAveraging,
    Euler,
}

#[derive(Debug, Clone, Args)]
pub struct PlatesDecayArgs {
    /// Plate separation in wavelengths.
    #[arg(long, value_parser = parse_value)]
    pub d_over_lambda: Option<f64>,
    /// Height above the lower plate in wavelengths.
    #[arg(long, value_parser = parse_value, conflicts_with = "y_frac")]
    pub y_over_lambda: Option<f64>,
    /// Height as a fraction of the separation.
    #[arg(long, value_parser = parse_value)]
    pub y_frac: Option<f64>,
    #[arg(long, value_enum)]
    pub sweep: Option<PlatesSweep>,
    #[arg(long, value_enum, default_value_t = AccelerationArg::PairAveraging)]
    pub acceleration: AccelerationArg,
    /// Largest number of image shells before giving up.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_images: usize,
    /// Convergence tolerance between successive shell doublings.
    #[arg(long, value_parser = parse_value, default_value = "1e-10")]
    pub tail_tol: f64,
    #[command(flatten)]
    pub range: SweepRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HalfsheetDecayArgs {
    /// Distance from the edge in wavelengths.
    #[arg(long, value_parser = parse_value)]
    pub r_over_lambda: Option<f64>,
    /// Angle from the sheet in radians, inside (0, 2pi).
    #[arg(long, value_parser = parse_value)]
    pub theta0: Option<f64>,
    #[arg(long, value_enum)]
    pub sweep: Option<WedgeSweep>,
    /// Relative tolerance of the edge integrals.
    #[arg(long, value_parser = parse_value, default_value = "1e-9")]
    pub rel_tol: f64,
    #[command(flatten)]
    pub range: SweepRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftSweep {
    #[value(name = "scaled-2gr", alias = "scaled_2gr")]
    Scaled2gr,
    #[value(alias = "theta0")]
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SheetShiftSweep {
    #[value(name = "scaled-2gr", alias = "scaled_2gr")]
    Scaled2gr,
}

#[derive(Debug, Clone, Args)]
pub struct WedgeShiftArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, value_parser = parse_value, conflicts_with = "theta0_frac")]
    pub theta0: Option<f64>,
    #[arg(long, value_parser = parse_value)]
    pub theta0_frac: Option<f64>,
    /// Distance from the apex as 2 gamma r0.
    #[arg(long = "scaled-2gr", value_parser = parse_value)]
    pub scaled_2gr: Option<f64>,
    /// Upper cutoff Lambda of the frequency integral.
    #[arg(long, value_parser = parse_value, default_value = "2110")]
    pub lambda_cap: f64,
    #[arg(long, value_enum)]
    pub sweep: Option<ShiftSweep>,
    #[command(flatten)]
    pub range: SweepRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HalfsheetShiftArgs {
    /// Height above the sheet as 2 gamma d.
    #[arg(long = "scaled-2gr", value_parser = parse_value)]
    pub scaled_2gr: Option<f64>,
    #[arg(long, value_parser = parse_value, default_value = "2110")]
    pub lambda_cap: f64,
    #[arg(long, value_enum)]
    pub sweep: Option<SheetShiftSweep>,
    #[command(flatten)]
    pub range: SweepRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Kernels,
    Oracle,
    Graf,
    Plates,
    Halfsheet,
    Shift,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
}
