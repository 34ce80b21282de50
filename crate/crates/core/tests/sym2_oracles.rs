//! Closed-form 2×2 algebra against independent oracles.

use std::f64::consts::PI;

use nalgebra::{Matrix2, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use wavesym_core::sym2::{line_angle_delta, normalize_line_angle};
use wavesym_core::{ComplexRep, LinearSymbol2, Sym2Value};

fn finite() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

/// Roots of `λ² − tr·λ + det` by the textbook quadratic formula.
fn quadratic_eigs(v: &Sym2Value) -> (f64, f64) {
    let m = v.to_matrix();
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    ((tr - disc) / 2.0, (tr + disc) / 2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn eigenvalues_match_quadratic_roots(t in finite(), p in finite(), q in finite()) {
        let v = Sym2Value::new(t, p, q);
        let (l1, l2) = v.eigenvalues();
        let (o1, o2) = quadratic_eigs(&v);
        let scale = 1.0 + t.abs() + p.abs() + q.abs();
        prop_assert!((l1 - o1).abs() <= 1e-12 * scale);
        prop_assert!((l2 - o2).abs() <= 1e-12 * scale);
    }

    #[test]
    fn eigenlines_match_iterative_solver(t in finite(), p in finite(), q in finite()) {
        prop_assume!(p.hypot(q) > 1e-3);
        let v = Sym2Value::new(t, p, q);
        let m = v.to_matrix();
        let eig = SymmetricEigen::new(Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]));
        let k = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
        let e = eig.eigenvectors.column(k);
        let oracle = normalize_line_angle(e[1].atan2(e[0]));
        let (theta1, theta2) = v.eigenline_angles().unwrap();
        prop_assert!(line_angle_delta(oracle, theta1).abs() < 1e-9);
        prop_assert!(line_angle_delta(theta1 + PI / 2.0, theta2).abs() < 1e-12);
    }

    #[test]
    fn conjugation_turns_traceless_part_twice(t in finite(), p in finite(), q in finite(), theta in -PI..PI) {
        let v = Sym2Value::new(t, p, q);
        let r = v.rotate_conjugate(theta);
        let expect = v.traceless_complex() * Complex64::from_polar(1.0, 2.0 * theta);
        prop_assert!((r.traceless_complex() - expect).norm() < 1e-12 * (1.0 + p.hypot(q)));
        prop_assert!((r.t - t).abs() < 1e-12 * (1.0 + t.abs()));
    }

    #[test]
    fn complex_rep_round_trips(a in finite(), b in finite(), c in finite(), d in finite()) {
        let m = LinearSymbol2::new(a, b, c, d);
        let back = m.to_rep().to_matrix();
        for (x, y) in [(back.m11, a), (back.m12, b), (back.m21, c), (back.m22, d)] {
            prop_assert!((x - y).abs() < 1e-12 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn determinant_is_half_the_margin(a in finite(), b in finite(), c in finite(), d in finite()) {
        let m = LinearSymbol2::new(a, b, c, d);
        let margin = m.to_rep().invertibility().margin;
        prop_assert!((m.det() - margin / 2.0).abs() < 1e-11 * (1.0 + m.frobenius_norm().powi(2)));
    }

    #[test]
    fn rep_rotation_matches_symbol_rotation(
        a in finite(), b in finite(), c in finite(), d in finite(), theta in -PI..PI
    ) {
        let m = LinearSymbol2::new(a, b, c, d);
        let lhs = m.rotate(theta).to_rep();
        let rhs = m.to_rep().rotate(theta);
        let scale = 1.0 + m.frobenius_norm();
        prop_assert!((lhs.u - rhs.u).norm() < 1e-12 * scale);
        prop_assert!((lhs.w - rhs.w).norm() < 1e-12 * scale);
    }

    #[test]
    fn rep_evaluation_matches_matrix(a in finite(), b in finite(), c in finite(), d in finite(), phi in -PI..PI) {
        let m = LinearSymbol2::new(a, b, c, d);
        let xi = [phi.cos(), phi.sin()];
        let direct = m.eval(xi).traceless_complex();
        let via_rep = m.to_rep().eval(Complex64::new(xi[0], xi[1]));
        prop_assert!((direct - via_rep).norm() < 1e-12 * (1.0 + m.frobenius_norm()));
    }
}

#[test]
fn unit_modulus_components_are_degenerate() {
    let rep = ComplexRep::new(Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.1));
    assert!(!rep.is_invertible());
    let rep = ComplexRep::new(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0));
    assert!(rep.is_invertible());
}
