use proptest::prelude::*;
use std::f64::consts::PI;
use wedgerate_core::{integrate, QuadratureSpec};

struct Case {
    name: &'static str,
    f: fn(f64) -> f64,
    a: f64,
    b: f64,
    truth: f64,
}

fn cases() -> Vec<Case> {
    let ln = |x: f64| x.ln();
    vec![
        Case {
            name: "x^2",
            f: |x| x * x,
            a: 0.0,
            b: 1.0,
            truth: 1.0 / 3.0,
        },
        Case {
            name: "sin",
            f: f64::sin,
            a: 0.0,
            b: PI,
            truth: 2.0,
        },
        Case {
            name: "shift weight",
            f: |s| s / (s * s + 1.0),
            a: 0.0,
            b: 2110.0,
            truth: 0.5 * (1.0f64 + 2110.0 * 2110.0).ln(),
        },
        Case {
            name: "exp",
            f: f64::exp,
            a: -1.0,
            b: 2.0,
            truth: 2f64.exp() - (-1f64).exp(),
        },
        Case {
            name: "sqrt",
            f: f64::sqrt,
            a: 0.0,
            b: 1.0,
            truth: 2.0 / 3.0,
        },
        Case {
            name: "1/(1+x^2)",
            f: |x| 1.0 / (1.0 + x * x),
            a: -5.0,
            b: 5.0,
            truth: 2.0 * 5f64.atan(),
        },
        Case {
            name: "ln",
            f: f64::ln,
            a: 1.0,
            b: 3.0,
            truth: 3.0 * ln(3.0) - 2.0,
        },
        Case {
            name: "x sin 30x",
            f: |x| x * (30.0 * x).sin(),
            a: 0.0,
            b: 2.0,
            truth: ((60f64).sin() - 60.0 * (60f64).cos()) / 900.0,
        },
        Case {
            name: "cos^2",
            f: |x| x.cos().powi(2),
            a: 0.0,
            b: 10.0,
            truth: 5.0 + 20f64.sin() / 4.0,
        },
        Case {
            name: "gaussian",
            f: |x| (-x * x).exp(),
            a: -6.0,
            b: 6.0,
            truth: PI.sqrt() * 0.999_999_999_999_999_978_480_263_287_501_6,
        },
        Case {
            name: "1/x",
            f: |x| 1.0 / x,
            a: 0.01,
            b: 1.0,
            truth: 100f64.ln(),
        },
        Case {
            name: "x^9",
            f: |x| x.powi(9),
            a: -1.0,
            b: 2.0,
            truth: (1024.0 - 1.0) / 10.0,
        },
        Case {
            name: "|x|",
            f: f64::abs,
            a: -1.0,
            b: 3.0,
            truth: 5.0,
        },
        Case {
            name: "sin 200x",
            f: |x| (200.0 * x).sin(),
            a: 0.0,
            b: 1.0,
            truth: (1.0 - 200f64.cos()) / 200.0,
        },
        Case {
            name: "x^(1/3)",
            f: f64::cbrt,
            a: 0.0,
            b: 8.0,
            truth: 0.75 * 16.0,
        },
        Case {
            name: "tanh",
            f: f64::tanh,
            a: -2.0,
            b: 3.0,
            truth: 3f64.cosh().ln() - 2f64.cosh().ln(),
        },
        Case {
            name: "1/sqrt(1-x^2)",
            f: |x| 1.0 / (1.0 - x * x).sqrt(),
            a: 0.0,
            b: 0.999,
            truth: 0.999f64.asin(),
        },
        Case {
            name: "e^x cos x",
            f: |x| x.exp() * x.cos(),
            a: 0.0,
            b: PI,
            truth: -(PI.exp() + 1.0) / 2.0,
        },
        Case {
            name: "step",
            f: |x| if x < 0.3 { 1.0 } else { 0.0 },
            a: 0.0,
            b: 1.0,
            truth: 0.3,
        },
        Case {
            name: "x ln x",
            f: |x| if x == 0.0 { 0.0 } else { x * x.ln() },
            a: 0.0,
            b: 1.0,
            truth: -0.25,
        },
    ]
}

#[test]
fn error_estimates_are_honest() {
    let spec = QuadratureSpec::new(1e-10, 1e-13, 1 << 16).unwrap();
    let all = cases();
    assert_eq!(all.len(), 20);
    let mut honest = 0;
    for c in &all {
        let r = integrate(c.f, c.a, c.b, &spec).unwrap();
        let err = (r.value - c.truth).abs();
        if err <= 3.0 * r.est_error {
            honest += 1;
        } else {
            eprintln!("{}: error {err:e} vs estimate {:e}", c.name, r.est_error);
        }
        assert!(
            err < 1e-8 * c.truth.abs().max(1.0),
            "{}: {} vs {}",
            c.name,
            r.value,
            c.truth
        );
    }
    assert!(honest >= 19, "{honest}/20 honest");
}

#[test]
fn fixed_examples() {
    let spec = QuadratureSpec::default();
    let r = integrate(|x| x * x, 0.0, 1.0, &spec).unwrap();
    assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
    let r = integrate(f64::sin, 0.0, PI, &spec).unwrap();
    assert!((r.value - 2.0).abs() < 1e-13);
    let spec = QuadratureSpec::new(1e-14, 1e-12, 1 << 16).unwrap();
    let r = integrate(|s| s / (s * s + 1.0), 0.0, 2110.0, &spec).unwrap();
    assert!((r.value - 0.5 * (1.0f64 + 2110.0 * 2110.0).ln()).abs() < 1e-10);
}

/// `J₁(x)/x = (1/π) ∫₀^π cos(τ − x sin τ) dτ / x`, taken as the limit 1/2 at the origin.
fn j1_over_x(x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let steps = 256;
    let h = PI / steps as f64;
    let f = |t: f64| (t - x * t.sin()).cos();
    let inner: f64 = (1..steps).map(|i| f(i as f64 * h)).sum();
    (inner + 0.5 * (f(0.0) + f(PI))) * h / PI / x
}

#[test]
fn bessel_weighted_integral_matches_fine_grid() {
    let spec = QuadratureSpec::new(1e-12, 1e-13, 1 << 16)
        .unwrap()
        .with_period_hint(2.0 * PI);
    let adaptive = integrate(j1_over_x, 0.0, 50.0, &spec).unwrap();
    assert!(adaptive.converged);

    // Composite 5-point Gauss–Legendre, ten times more panels than the adaptive run.
    let nodes = [
        (0.0, 128.0 / 225.0),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let panels = 10 * adaptive.panels;
    let h = 50.0 / panels as f64;
    let mut reference = 0.0;
    for i in 0..panels {
        let mid = (i as f64 + 0.5) * h;
        for (x, w) in nodes {
            reference += 0.5 * h * w * j1_over_x(mid + 0.5 * h * x);
        }
    }
    assert!(
        (adaptive.value - reference).abs() < 1e-10,
        "{} vs {reference}",
        adaptive.value
    );
}

proptest! {
    #[test]
    fn reversing_limits_negates_exactly(a in -5.0..5.0f64, b in -5.0..5.0f64, k in 0.5..20.0f64) {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (k * x).sin() + x * x;
        let fwd = integrate(f, a, b, &spec).unwrap();
        let back = integrate(f, b, a, &spec).unwrap();
        prop_assert_eq!(fwd.value, -back.value);
    }

    #[test]
    fn additive_over_subintervals(a in -4.0..0.0f64, c in 0.0..2.0f64, b in 2.0..6.0f64) {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (-(x - 1.0).powi(2)).exp() * (3.0 * x).cos();
        let whole = integrate(f, a, b, &spec).unwrap();
        let left = integrate(f, a, c, &spec).unwrap();
        let right = integrate(f, c, b, &spec).unwrap();
        let slack = whole.est_error + left.est_error + right.est_error + 1e-15;
        prop_assert!((left.value + right.value - whole.value).abs() <= slack);
    }

    #[test]
    fn converged_results_meet_their_target(k in 1.0..80.0f64, rel in 1e-12..1e-6f64) {
        let spec = QuadratureSpec::new(rel, 1e-14, 1 << 14).unwrap();
        let r = integrate(|x: f64| (k * x).cos() / (1.0 + x), 0.0, 3.0, &spec).unwrap();
        prop_assert!(r.est_error >= 0.0);
        if r.converged {
            prop_assert!(r.est_error <= (rel * r.value.abs()).max(1e-14));
        }
    }
}
