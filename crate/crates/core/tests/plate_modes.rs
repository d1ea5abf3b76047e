//! Plate rates against the Poisson-resummed image series, i.e. a finite sum over
//! guided modes. With `A(x) = ∫₋₁¹ (1+t²)/4 e^{ixt} dt` and
//! `C(x) = −∫₋₁¹ (1−t²)/4 e^{ixt} dt`, the image sums become
//!
//! ```text
//! Γ∥/Γ₀ = (3π/v) Σ_{|t_k|≤1} (1 + t_k²)/4 · (1 − cos u t_k)
//! Γ⊥/Γ₀ = (6π/v) Σ_{|t_k|≤1} (1 − t_k²)/4 · (1 + cos u t_k),   t_k = 2πk/v
//! ```

use std::f64::consts::PI;
use wedgerate_core::{
    plates_decay, plates_limit_oracle, Acceleration, Orientation, PlatesGeometry, SeriesControl,
    SurfaceOrientation,
};

fn mode_sum(d: f64, y: f64, o: SurfaceOrientation) -> f64 {
    let u = 4.0 * PI * y;
    let v = 4.0 * PI * d;
    let kmax = (v / (2.0 * PI)).floor() as i64;
    let mut total = 0.0;
    for k in -kmax..=kmax {
        let t = 2.0 * PI * k as f64 / v;
        total += match o {
            SurfaceOrientation::Parallel => (1.0 + t * t) / 4.0 * (1.0 - (u * t).cos()),
            SurfaceOrientation::Perpendicular => 2.0 * (1.0 - t * t) / 4.0 * (1.0 + (u * t).cos()),
        };
    }
    3.0 * PI / v * total
}

const GAPS: [f64; 9] = [0.3, 0.45, 0.62, 0.9, 1.3, 1.77, 2.4, 3.1, 4.6];
const HEIGHTS: [f64; 5] = [0.1, 0.25, 0.5, 0.7, 0.93];

#[test]
fn smooth_cutoff_matches_mode_sum() {
    let ctl = SeriesControl::default();
    for d in GAPS {
        for f in HEIGHTS {
            let geom = PlatesGeometry::at_fraction(d, f).unwrap();
            for o in [
                SurfaceOrientation::Parallel,
                SurfaceOrientation::Perpendicular,
            ] {
                let got = plates_decay(&geom, o, &ctl).unwrap();
                let want = mode_sum(d, f * d, o);
                assert!(
                    (got.ratio - want).abs() < 1e-8,
                    "d = {d}, y/d = {f}, {o:?}: {} vs {want}",
                    got.ratio
                );
            }
        }
    }
}

#[test]
fn euler_transform_matches_mode_sum() {
    let ctl = SeriesControl {
        acceleration: Acceleration::EulerTransform,
        tail_tol: 1e-7,
        ..SeriesControl::default()
    };
    for d in [0.7, 1.9] {
        let geom = PlatesGeometry::at_fraction(d, 0.3).unwrap();
        for o in [
            SurfaceOrientation::Parallel,
            SurfaceOrientation::Perpendicular,
        ] {
            let got = plates_decay(&geom, o, &ctl).unwrap().ratio;
            assert!(
                (got - mode_sum(d, 0.3 * d, o)).abs() < 1e-5,
                "d = {d}, {o:?}"
            );
        }
    }
}

#[test]
fn below_first_cutoff_only_the_tem_mode_survives() {
    let geom = PlatesGeometry::at_fraction(0.4, 0.5).unwrap();
    let ctl = SeriesControl::default();
    let par = plates_decay(&geom, SurfaceOrientation::Parallel, &ctl)
        .unwrap()
        .ratio;
    let perp = plates_decay(&geom, SurfaceOrientation::Perpendicular, &ctl)
        .unwrap()
        .ratio;
    assert!(par.abs() < 1e-8);
    // 3λ/(4d)
    assert!((perp - 3.0 / 1.6).abs() < 1e-8);
}

#[test]
fn exact_cutoff_is_reported_as_unconverged() {
    // d = λ/2 puts the first parallel mode exactly at cutoff.
    let geom = PlatesGeometry::at_fraction(0.5, 0.3).unwrap();
    let ctl = SeriesControl {
        max_images: 1 << 12,
        ..SeriesControl::default()
    };
    assert!(plates_decay(&geom, SurfaceOrientation::Parallel, &ctl).is_err());
}

#[test]
fn wedge_with_many_walls_approaches_plates() {
    // The wedge limit converges slowly in p; a very narrow wedge is needed for 1e-3.
    let ctl = SeriesControl::default();
    let p = 8_000_000;
    for (d, f) in [(0.75, 0.3), (1.6, 0.5), (2.7, 0.8)] {
        let geom = PlatesGeometry::at_fraction(d, f).unwrap();
        let par = plates_decay(&geom, SurfaceOrientation::Parallel, &ctl)
            .unwrap()
            .ratio;
        let perp = plates_decay(&geom, SurfaceOrientation::Perpendicular, &ctl)
            .unwrap()
            .ratio;
        let axial = plates_limit_oracle(&geom, Orientation::Axial, p)
            .unwrap()
            .ratio;
        let polar = plates_limit_oracle(&geom, Orientation::Polar, p)
            .unwrap()
            .ratio;
        assert!((axial - par).abs() < 1e-3, "d = {d}: {axial} vs {par}");
        assert!((polar - perp).abs() < 1e-3, "d = {d}: {polar} vs {perp}");
    }
}
