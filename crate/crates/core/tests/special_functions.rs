//! Bessel functions against their integral representations, evaluated with the
//! trapezoid rule (spectrally accurate for these periodic or double-exponentially
//! decaying integrands), and the kernels against double-double evaluation.

use std::f64::consts::PI;
use wedgerate_core::oracle::{kernel_extended, KernelKind};
use wedgerate_core::specfun::{
    bessel_i, bessel_j, bessel_j_orders, bessel_j_prime, bessel_k, kernel_a, kernel_b, kernel_c,
    kernel_d, kernel_e,
};

/// `J_n(x) = (1/π) ∫₀^π cos(nτ − x sin τ) dτ`
fn j_integral(n: u32, x: f64) -> f64 {
    let steps = 4096;
    let h = PI / steps as f64;
    let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let inner: f64 = (1..steps).map(|i| f(i as f64 * h)).sum();
    (inner + 0.5 * (f(0.0) + f(PI))) * h / PI
}

/// `I_n(x) = (1/π) ∫₀^π e^{x cos τ} cos(nτ) dτ` (integer `n`)
fn i_integral(n: u32, x: f64) -> f64 {
    let steps = 4096;
    let h = PI / steps as f64;
    let f = |t: f64| (x * t.cos()).exp() * (n as f64 * t).cos();
    let inner: f64 = (1..steps).map(|i| f(i as f64 * h)).sum();
    (inner + 0.5 * (f(0.0) + f(PI))) * h / PI
}

/// `K_n(x) = ∫₀^∞ e^{−x cosh t} cosh(nt) dt`
fn k_integral(n: u32, x: f64) -> f64 {
    let h = 1.0 / 64.0;
    let f =
        |t: f64| (-x * t.cosh() + n as f64 * t).exp() * 0.5 * (1.0 + (-2.0 * n as f64 * t).exp());
    let mut total = 0.5 * f(0.0);
    let mut i = 1;
    loop {
        let v = f(i as f64 * h);
        total += v;
        if v < 1e-20 * total && i as f64 * h > 1.0 {
            break;
        }
        i += 1;
    }
    total * h
}

#[test]
fn j_matches_bessel_integral() {
    for n in [0, 1, 2, 5, 13, 40] {
        for x in [0.01, 0.7, 3.3, 9.0, 27.5, 61.0, 140.0] {
            let got = bessel_j(n, x).unwrap();
            let want = j_integral(n, x);
            assert!((got - want).abs() < 2e-14, "J_{n}({x}): {got} vs {want}");
        }
    }
}

#[test]
fn order_table_matches_single_orders() {
    let mut out = [0.0; 61];
    for x in [0.3, 8.0, 45.0] {
        bessel_j_orders(x, &mut out).unwrap();
        for (n, v) in out.iter().enumerate() {
            assert!(
                (v - j_integral(n as u32, x)).abs() < 2e-14,
                "n = {n}, x = {x}"
            );
        }
    }
}

#[test]
fn first_zero_of_j0() {
    // Bisection on the integral representation, independent of the library.
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if j_integral(0, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let zero = 0.5 * (lo + hi);
    assert!((zero - 2.404_825_557_695_773).abs() < 1e-13);
    assert!(bessel_j(0, zero).unwrap().abs() < 1e-15);
}

#[test]
fn derivative_matches_central_difference() {
    for n in [0, 1, 4, 11] {
        for x in [0.5, 6.0, 33.0] {
            let h = 1e-5;
            let fd = (bessel_j(n, x + h).unwrap() - bessel_j(n, x - h).unwrap()) / (2.0 * h);
            assert!(
                (bessel_j_prime(n, x).unwrap() - fd).abs() < 1e-9,
                "n = {n}, x = {x}"
            );
        }
    }
}

#[test]
fn modified_functions_match_integrals() {
    for n in [0, 1, 2, 7, 15] {
        for x in [0.2, 1.5, 6.0, 20.0] {
            let i = bessel_i(n, x).unwrap();
            let iw = i_integral(n, x);
            // The integrand is O(e^x) while I_n can be tiny, so allow an absolute floor.
            assert!(
                (i - iw).abs() < 1e-12 * iw + 1e-15 * x.exp(),
                "I_{n}({x}): {i} vs {iw}"
            );
            let k = bessel_k(n, x).unwrap();
            let kw = k_integral(n, x);
            assert!(((k - kw) / kw).abs() < 1e-12, "K_{n}({x}): {k} vs {kw}");
        }
    }
}

#[test]
fn kernels_agree_with_extended_precision() {
    type KernelFn = fn(f64) -> wedgerate_core::Result<f64>;
    let cases: [(KernelKind, KernelFn); 5] = [
        (KernelKind::A, kernel_a),
        (KernelKind::B, kernel_b),
        (KernelKind::C, kernel_c),
        (KernelKind::D, kernel_d),
        (KernelKind::E, kernel_e),
    ];
    for (kind, f) in cases {
        for i in 1..=320 {
            let x = 0.1 * i as f64;
            let exact = kernel_extended(kind, x).unwrap();
            let got = f(x).unwrap();
            let tol = if x <= 1.0 { 1e-14 * exact.abs() } else { 1e-14 };
            assert!(
                (got - exact).abs() <= tol,
                "{kind:?}({x}): {got} vs {exact}"
            );
        }
    }
}

#[test]
fn kernel_spot_value_at_ten() {
    // sin 10/10 + cos 10/100 − sin 10/1000
    let want = kernel_extended(KernelKind::A, 10.0).unwrap();
    let direct = 10f64.sin() / 10.0 + 10f64.cos() / 100.0 - 10f64.sin() / 1000.0;
    assert!((want - direct).abs() < 1e-16);
    assert!((kernel_a(10.0).unwrap() - want).abs() < 1e-16);
}
