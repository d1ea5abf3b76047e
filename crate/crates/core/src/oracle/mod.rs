//! Independent checks of the closed forms: the pre-resummation mode sum,
//! the addition-theorem residual and extended-precision kernels.

mod extended;
mod graf;
mod mode_sum;

pub use extended::{kernel_extended, DoubleDouble, KernelKind, MAX_EXTENDED_ARGUMENT};
pub use graf::{graf_m_max, graf_residual, GrafCase};
pub use mode_sum::{mode_sum_decay, ModeSumControl, CALIBRATED_SIGN};
