//! Bessel functions of the first kind for integer order and real argument.
//!
//! Three evaluation routes:
//! * the ascending power series when `x²/4 ≤ n + 1`, where it has no cancellation;
//! * the Hankel asymptotic expansion when `x ≥ 25` and the expansion reaches
//!   full precision before it starts to diverge;
//! * Miller's backward recurrence normalized by `J₀ + 2ΣJ₂ₖ = 1` otherwise.

use crate::error::{domain, require_finite, Error, Result};
use core::f64::consts::{FRAC_1_SQRT_2, PI};

/// Largest order accepted by the public entry points.
pub const MAX_ORDER: u32 = 2000;

const HANKEL_MIN_X: f64 = 25.0;
const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

fn check_args(order: u32, x: f64) -> Result<()> {
    require_finite("x", x)?;
    if x < 0.0 {
        return Err(domain("x", x, "Bessel argument must be non-negative"));
    }
    if order > MAX_ORDER {
        return Err(Error::Capability {
            name: "order",
            value: order as f64,
            limit: MAX_ORDER as f64,
        });
    }
    Ok(())
}

/// `J_order(x)` for `x ≥ 0`.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(j_unchecked(order, x))
}

/// `J'_order(x) = (J_{order−1}(x) − J_{order+1}(x)) / 2`, with `J'_0 = −J_1`.
pub fn bessel_j_prime(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(j_prime_unchecked(order, x))
}

/// Fills `out[k] = J_k(x)` for `k = 0 … out.len() − 1` from one backward sweep.
pub fn bessel_j_orders(x: f64, out: &mut [f64]) -> Result<()> {
    if let Some(top) = out.len().checked_sub(1) {
        check_args(u32::try_from(top).unwrap_or(u32::MAX), x)?;
    }
    fill_orders(x, out);
    Ok(())
}

/// `J_order(x) / x^order`, finite at `x = 0` where it equals `1 / (2^order · order!)`.
pub fn bessel_j_over_power(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(if x * x / 4.0 <= (order as f64 + 1.0).max(1.0) {
        series_over_power(order, x)
    } else {
        j_unchecked(order, x) / libm::pow(x, order as f64)
    })
}

pub(crate) fn j_prime_unchecked(order: u32, x: f64) -> f64 {
    if order == 0 {
        -j_unchecked(1, x)
    } else {
        0.5 * (j_unchecked(order - 1, x) - j_unchecked(order + 1, x))
    }
}

pub(crate) fn j_unchecked(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x * x / 4.0 <= (nf + 1.0).max(1.0) {
        return series(n, x);
    }
    if x >= HANKEL_MIN_X && nf * nf <= x {
        if let Some(v) = hankel(n, x) {
            return v;
        }
    }
    miller_single(n, x)
}

/// Ascending series of `J_n(x)/x^n`: `2^{-n} Σ (−x²/4)^k / (k! (n+k)!)`.
fn series_over_power(n: u32, x: f64) -> f64 {
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= 0.5 / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    lead * series_sum(n, x)
}

fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    lead * series_sum(n, x)
}

fn series_sum(n: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (n as f64 + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
        k += 1.0;
    }
}

/// Hankel expansion; `None` if the asymptotic series stalls above double precision.
fn hankel(n: u32, x: f64) -> Option<f64> {
    let mu = 4.0 * (n as f64) * (n as f64);
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    let mut k = 1;
    loop {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) * inv8x / k as f64;
        let mag = term.abs();
        if mag > prev {
            return None;
        }
        prev = mag;
        // a_k contributes to Q for odd k and to P for even k, with alternating signs.
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-17 {
            break;
        }
        k += 1;
        if k > 200 {
            return None;
        }
    }
    let (s, c) = libm::sincos(x);
    // χ = x − (2n+1)π/4; cos φ, sin φ of that shift cycle with period 4 in n.
    let (cphi, sphi) = match n % 4 {
        0 => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        1 => (-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        2 => (-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        _ => (FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
    };
    let cos_chi = c * cphi + s * sphi;
    let sin_chi = s * cphi - c * sphi;
    Some(libm::sqrt(2.0 / (PI * x)) * (p * cos_chi - q * sin_chi))
}

/// Starting order for the backward recurrence that covers orders up to `top`.
fn miller_start(top: usize, x: f64) -> usize {
    let c = libm::cbrt(60.0 * libm::sqrt(0.5 * x + 1.0));
    let extra = c * c;
    let base = (top as f64).max(libm::ceil(x));
    (base + 20.0 + libm::ceil(extra)) as usize | 1
}

fn miller_single(n: u32, x: f64) -> f64 {
    let n = n as usize;
    let start = miller_start(n, x);
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        // cur = J_k, above = J_{k+1} (unnormalized)
        if k == n {
            wanted = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let below = k as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            wanted *= RESCALE_BY;
        }
    }
    if n == 0 {
        wanted = cur;
    }
    norm += cur;
    wanted / norm
}

pub(crate) fn fill_orders(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    if x == 0.0 {
        out.fill(0.0);
        out[0] = 1.0;
        return;
    }
    if x < 1e-8 {
        for (n, v) in out.iter_mut().enumerate() {
            *v = series(n as u32, x);
        }
        return;
    }
    let len = out.len();
    let start = miller_start(len - 1, x);
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k < len {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let below = k as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            let stored = (k.min(len))..len;
            for v in &mut out[stored] {
                *v *= RESCALE_BY;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    let scale = 1.0 / norm;
    for v in out.iter_mut() {
        *v *= scale;
    }
}

/// `J_n(z)/z^n` for `n = 1, 2, 3` at one argument.
pub(crate) fn reduced_123(z: f64) -> [f64; 3] {
    if z < 2.0 {
        return [
            series_over_power(1, z),
            series_over_power(2, z),
            series_over_power(3, z),
        ];
    }
    let (j0, j1) = if z >= HANKEL_MIN_X {
        match (hankel(0, z), hankel(1, z)) {
            (Some(a), Some(b)) => (a, b),
            _ => (miller_single(0, z), miller_single(1, z)),
        }
    } else {
        let mut buf = [0.0; 2];
        fill_orders(z, &mut buf);
        (buf[0], buf[1])
    };
    // Upward recurrence is stable here because the orders stay below z.
    let j2 = 2.0 / z * j1 - j0;
    let j3 = 4.0 / z * j2 - j1;
    let inv = 1.0 / z;
    [j1 * inv, j2 * inv * inv, j3 * inv * inv * inv]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_prime(1, 0.0).unwrap(), 0.5);
    }

    #[test]
    fn reference_values() {
        // mpmath at 30 digits
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_551_4),
            (1, 1.0, 0.440_050_585_744_933_515_96),
            (0, 10.0, -0.245_935_764_451_348_335_2),
            (5, 10.0, -0.234_061_528_186_793_640_44),
            (50, 10.0, 1.784_513_607_871_595_306_3e-30),
            (0, 100.0, 0.019_985_850_304_223_122_424),
            (3, 1000.0, -0.004_827_420_825_203_947_9),
            (100, 150.0, -0.015_359_526_118_405_390_63),
        ];
        for (n, x, want) in cases {
            let got = bessel_j(n, x).unwrap();
            assert!(
                (got - want).abs() < 1e-14 + 1e-13 * want.abs(),
                "J_{n}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn order_cap_and_domain() {
        assert!(matches!(
            bessel_j(MAX_ORDER + 1, 1.0),
            Err(Error::Capability { .. })
        ));
        assert!(matches!(bessel_j(0, -1.0), Err(Error::Domain { .. })));
        assert!(bessel_j(0, f64::NAN).is_err());
    }

    #[test]
    fn orders_sweep_matches_single_values() {
        for x in [0.01, 0.7, 3.0, 17.5, 40.0, 333.0] {
            let mut buf = [0.0; 60];
            bessel_j_orders(x, &mut buf).unwrap();
            for (n, v) in buf.iter().enumerate() {
                let single = bessel_j(n as u32, x).unwrap();
                assert!((v - single).abs() < 2e-14, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn reduced_forms_match_quotients() {
        for z in [0.0, 0.3, 1.99, 2.01, 7.0, 24.9, 25.1, 80.0] {
            let r = reduced_123(z);
            for (i, v) in r.iter().enumerate() {
                let n = i as u32 + 1;
                let want = bessel_j_over_power(n, z).unwrap();
                assert!((v - want).abs() < 1e-15, "n = {n}, z = {z}");
            }
        }
        assert_eq!(reduced_123(0.0), [0.5, 0.125, 1.0 / 48.0]);
    }

    #[test]
    fn sum_rule_of_squares() {
        for x in [0.5, 4.0, 30.0, 120.0] {
            let k = libm::ceil(x) as usize + 40;
            let mut buf = alloc::vec![0.0; k + 1];
            bessel_j_orders(x, &mut buf).unwrap();
            let s = buf[0] * buf[0] + 2.0 * buf[1..].iter().map(|v| v * v).sum::<f64>();
            assert!((s - 1.0).abs() < 1e-10, "x = {x}: {s}");
        }
    }

    proptest! {
        #[test]
        fn three_term_recurrence(nu in 1u32..=50, x in 0.1f64..100.0) {
            let lhs = bessel_j(nu - 1, x).unwrap() + bessel_j(nu + 1, x).unwrap();
            let rhs = 2.0 * nu as f64 / x * bessel_j(nu, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11, "{} vs {}", lhs, rhs);
        }

        #[test]
        fn bounded_by_one(n in 0u32..300, x in 0.0f64..500.0) {
            prop_assert!(bessel_j(n, x).unwrap().abs() <= 1.0 + 1e-15);
        }
    }
}
