//! Special functions: image-sum kernels and integer-order Bessel functions.

mod bessel;
mod kernels;
mod modified;

pub use bessel::{bessel_j, bessel_j_orders, bessel_j_over_power, bessel_j_prime, MAX_ORDER};
pub use kernels::{
    kernel_a, kernel_b, kernel_c, kernel_d, kernel_e, sinc, KernelTriple, SERIES_THRESHOLD,
};
pub use modified::{
    bessel_i, bessel_ik_product, bessel_k, ln_bessel_i, ln_bessel_k, Scaled, MAX_ARGUMENT,
};

pub(crate) use bessel::{fill_orders, j_unchecked, reduced_123};
pub(crate) use kernels::Kernels;
pub(crate) use modified::k_scaled;
