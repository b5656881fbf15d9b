//! Cross-checks against independent constructions, and reproducibility.

use std::f64::consts::PI;

use kakeya_core::fit::{max_scale_at, sweep_fit_with, sweep_orientations};
use kakeya_core::verify::{self, random_convex_polygon};
use kakeya_core::{chebyshev_center, max_scale, sweep_fit, Ball, Halfspaces, Polygon, Shape};

#[test]
fn bisection_matches_per_orientation_lp() {
    for seed in 0..6u64 {
        let p: Shape = random_convex_polygon(6, seed).unwrap().into();
        let q = Halfspaces::from_polygon(&random_convex_polygon(9, seed + 100).unwrap());
        let n = 48;
        let exact = sweep_orientations::<f64>(2, n, 0)
            .unwrap()
            .iter()
            .map(|r| max_scale_at(&p, &q, r).unwrap())
            .fold(f64::INFINITY, f64::min);
        let bis = max_scale(&p, &q, n).unwrap();
        assert!((bis - exact).abs() < 1e-8, "seed {seed}: {bis} vs {exact}");
    }
}

#[test]
fn finer_nested_grids_never_raise_the_scale() {
    let p: Shape = random_convex_polygon(5, 11).unwrap().into();
    let q = Halfspaces::from_polygon(&Polygon::unit_square());
    let coarse = max_scale(&p, &q, 45).unwrap();
    let fine = max_scale(&p, &q, 180).unwrap();
    assert!(fine <= coarse + 1e-9);
}

#[test]
fn inball_candidate_ties_exactly() {
    let q = Halfspaces::from_polygon(&Polygon::unit_square());
    let d = chebyshev_center(&q).unwrap();
    let r = verify::check_main_theorem(&q, &[d.clone().into()], 90).unwrap();
    assert!(r.passed());
    assert_eq!(r.details[0].measured["volume"], r.details[0].measured["inball_volume"]);
    assert_eq!(r.details[0].measured["boundary"], r.details[0].measured["inball_boundary"]);
}

#[test]
fn reuleaux_turns_in_the_square() {
    let q = Halfspaces::from_polygon(&Polygon::unit_square());
    let p: Shape = Polygon::reuleaux(1.0, 256).into();
    let s = sweep_fit(&p, &q, 720, true).unwrap();
    assert!(s.all_fit);
    assert!(s.worst_margin >= -1e-6);
    let disk: Shape = Ball::new(vec![0.0, 0.0], 0.5).unwrap().into();
    let s = sweep_fit(&disk, &q, 720, true).unwrap();
    assert!(s.certified);
}

#[test]
fn sweeps_are_reproducible() {
    let q = kakeya_core::Polytope3::cube(1.0).to_hpolytope();
    let p: Shape = kakeya_core::Polytope3::regular_tetrahedron(0.9).into();
    let tol = kakeya_core::Tolerances::default();
    let a = sweep_fit_with(&p, &q, 64, false, 7, &tol).unwrap();
    let b = sweep_fit_with(&p, &q, 64, false, 7, &tol).unwrap();
    assert_eq!(a, b);
    assert!(a.sampled_only);
    let c = sweep_fit_with(&p, &q, 64, false, 8, &tol).unwrap();
    assert_ne!(a.worst_margin, c.worst_margin);
}

#[test]
fn reports_are_bitwise_reproducible() {
    let a = serde_json::to_string(&verify::check_interpolation_fit(30, 1).unwrap()).unwrap();
    let b = serde_json::to_string(&verify::check_interpolation_fit(30, 1).unwrap()).unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&verify::reproduce("square-rotor-scale").unwrap()).unwrap();
    let b = serde_json::to_string(&verify::reproduce("square-rotor-scale").unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn scenarios_all_pass() {
    for name in verify::SCENARIOS {
        let r = verify::reproduce(name).unwrap();
        assert!(r.report.passed(), "{name}: {:?}", r.report);
        assert!(!r.figure.items.is_empty());
    }
}

#[test]
fn halfway_gain_suites_pass() {
    for (w, d) in [(0, 2), (0, 3), (1, 3)] {
        let r = verify::check_halfway_gain(60, 3, w, d).unwrap();
        assert!(r.passed(), "{w} {d}: {:?}", r.details.iter().find(|t| t.violation > 0.0));
    }
}

#[test]
fn single_precision_pipeline() {
    use kakeya_core::hpolytope::HPolytope;
    use kakeya_core::polygon::ConvexPolygon;
    let q = HPolytope::<f32>::from_polygon(&ConvexPolygon::unit_square());
    let c = chebyshev_center(&q).unwrap();
    assert!((c.radius - 0.5).abs() < 1e-5);
    let p: kakeya_core::shape::Shape<f32> = ConvexPolygon::unit_square().into();
    let r = kakeya_core::fits_translated(&p, &q, &kakeya_core::rotation::Rotation::Planar(PI as f32 / 4.0)).unwrap();
    assert!(!r.fits);
}
