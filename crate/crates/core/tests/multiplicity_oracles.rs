//! Singular-set extraction, kernel lines and zero counts.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use wavesym_core::multiplicity::*;
use wavesym_core::sphere::{alpha, chart_field, sigma_mn};
use wavesym_core::{LinearSymbol2, Sym2Value, TangentSection, TriMesh, TrivialSection, Vec3};

#[test]
fn sigma_06_det_field() {
    let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, 64).unwrap();
    assert!(det_field(&f, [1.0, 0.0]).unwrap().abs() < 1e-15);
    assert!(det_field(&f, [0.0, 0.5]).unwrap().abs() > 0.1);
}

#[test]
fn sigma_06_single_unit_circle() {
    let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, 128).unwrap();
    let curves = extract_singular_set(&f, &ContourOptions::default()).unwrap();
    assert_eq!(curves.len(), 1);
    assert!(curves[0].closed);
    for p in &curves[0].points {
        assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-3);
    }
    assert!(curves[0].residuals.iter().all(|&r| r <= 1e-10 * f.scale()));
}

#[test]
fn sigma_01_two_circles() {
    let f = chart_field(sigma_mn(0, 1).unwrap(), 2.0, 256).unwrap();
    let curves = extract_singular_set(&f, &ContourOptions::default()).unwrap();
    assert_eq!(curves.len(), 2);
    assert!((curves[0].mean_radius() - 1.0).abs() < 1e-3);
    assert!((curves[1].mean_radius() - alpha()).abs() < 1e-3);
}

#[test]
fn no_zeros_no_curves() {
    let f = ChartSymbolField::new(Rect::centered(2.0), 32, 32, |x: Point2| {
        LinearSymbol2::new(x[0] * x[0] + x[1] * x[1] + 1.0, 0.0, 0.0, 1.0)
    })
    .unwrap();
    assert!(extract_singular_set(&f, &ContourOptions::default()).unwrap().is_empty());
}

#[test]
fn transversality_certificates() {
    let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, 128).unwrap();
    let c = &extract_singular_set(&f, &ContourOptions::default()).unwrap()[0];
    assert!(regular_value_check(&f, c).regular);

    // the σ_{0,2} zero set is tangential: build the circle explicitly
    let g = chart_field(sigma_mn(0, 2).unwrap(), 2.0, 128).unwrap();
    let circle = SingularCurve::from_points(&g, wavesym_core::sphere::circle_points(1.0, 256), true);
    assert!(!regular_value_check(&g, &circle).regular);
}

#[test]
fn contour_error_converges_quadratically() {
    // vertex distance to the unit circle before refinement is O(h²); after
    // edgewise bisection it drops to the bisection floor on every grid
    let mut errs = Vec::new();
    for n in [32, 64, 128] {
        let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, n).unwrap();
        let c = &extract_singular_set(&f, &ContourOptions::default()).unwrap()[0];
        let err = c
            .points
            .iter()
            .map(|p| (p[0].hypot(p[1]) - 1.0).abs())
            .fold(0.0, f64::max);
        errs.push(err);
    }
    assert!(errs.iter().all(|&e| e < 1e-9), "{errs:?}");
    // chord length converges to 2π with O(h²)
    let lens: Vec<f64> = [32, 64, 128]
        .iter()
        .map(|&n| {
            let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, n).unwrap();
            2.0 * PI - extract_singular_set(&f, &ContourOptions::default()).unwrap()[0].length()
        })
        .collect();
    assert!(lens[1] < lens[0] / 3.0 && lens[2] < lens[1] / 3.0, "{lens:?}");
}

#[test]
fn kernel_vector_annihilated() {
    for (m, n) in [(0, 6), (1, 4), (2, 0)] {
        let f = chart_field(sigma_mn(m, n).unwrap(), 2.0, 128).unwrap();
        let c = &extract_singular_set(&f, &ContourOptions::default()).unwrap()[0];
        for &p in c.distinct_points() {
            let m = f.symbol(p).unwrap();
            let a = kernel_angle(&f, p).unwrap();
            let v = m.eval([a.cos(), a.sin()]);
            assert!(v.p.hypot(v.q) <= 1e-8 * m.frobenius_norm());
        }
    }
}

#[test]
fn winding_invariant_under_refinement_and_reversal() {
    for n in [64, 128, 256] {
        let f = chart_field(sigma_mn(1, 4).unwrap(), 2.0, n).unwrap();
        let c = extract_singular_set(&f, &ContourOptions::default()).unwrap().remove(0);
        let mut rev = c.reversed();
        rev.canonicalize();
        assert_eq!(MultiplicityComponent::from_curve(&f, c).unwrap().winding, 3);
        assert_eq!(MultiplicityComponent::from_curve(&f, rev).unwrap().winding, 3);
    }
}

#[test]
fn coarse_polyline_fails_to_lift() {
    let f = chart_field(sigma_mn(0, 6).unwrap(), 2.0, 16).unwrap();
    let square = SingularCurve::from_points(&f, wavesym_core::sphere::circle_points(1.0, 4), true);
    assert!(matches!(
        MultiplicityComponent::from_curve(&f, square),
        Err(wavesym_core::Error::LiftFailure { .. })
    ));
}

#[test]
fn analysis_report_and_csv() {
    let f = chart_field(sigma_mn(0, 1).unwrap(), 2.0, 128).unwrap();
    let a = analyze_field(&f, &ContourOptions::default()).unwrap();
    assert_eq!(a.reports.len(), 2);
    assert!(a.reports.iter().all(|r| r.winding == Some(1) && r.knot == Some([2, 1])));
    let csv = a.polyline_csv(&f);
    assert!(csv.starts_with("curve_id,x1,x2,kernel_angle_lifted\n"));
    let rows = csv.lines().count() - 1;
    assert_eq!(rows, a.curves.iter().map(|c| c.points.len()).sum::<usize>());
}

#[test]
fn zero_count_is_subdivision_invariant() {
    let eps_inv = Matrix3::from_diagonal(&Vector3::new(0.5, 0.4, 1.0 / 3.0));
    let s = TangentSection::new(move |_: &Vec3| eps_inv);
    for level in [2, 3, 4] {
        assert_eq!(signed_zero_count(&TriMesh::icosphere(level), &s).unwrap().total, 4);
    }
    let c = TrivialSection::new(|_: &Vec3| Sym2Value::traceless(0.3, -1.0));
    for level in [2, 3, 4] {
        assert_eq!(signed_zero_count(&TriMesh::icosphere(level), &c).unwrap().total, 0);
    }
}

#[test]
fn knot_examples() {
    assert!(knot_type(3).connected);
    assert_eq!(knot_type(2).components, 2);
    assert_eq!(knot_type(0).components, 2);
}
