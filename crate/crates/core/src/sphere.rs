//! Symbols over the Riemann sphere built from holomorphic polynomial vector
//! fields, the `σ_{m,n}` family and its singular circles.
//!
//! Chart 1 is the coordinate `z`, chart 2 is `w = 1/z`. In either chart the
//! orthonormal frame is `λ(|z|)` times the coordinate frame with
//! `λ(r) = 2/(1 + r²)`, and a symbol built from `v` and `s = v₁v₂v₃` has the
//! complex form `(λ v, λ³ s)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::Vec3;
use crate::multiplicity::{
    extract_singular_set, kernel_angle, knot_type, regular_value_check, ChartSymbolField, ContourOptions,
    MultiplicityComponent, Point2, Rect, SingularCurve,
};
use crate::roots::{bisect, scan_roots};
use crate::sym2::{normalize_line_angle, ComplexRep, LinearSymbol2};

/// Stereographic chart index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// Coordinate `z`; `z = 0` is the pole `(0, 0, −1)`.
    One,
    /// Coordinate `w = 1/z`; `w = 0` is the pole `(0, 0, 1)`.
    Two,
}

/// A point of the sphere given in one of the two charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub chart: Chart,
    pub coord: Complex64,
}

impl SpherePoint {
    pub fn new(chart: Chart, coord: Complex64) -> Self {
        Self { chart, coord }
    }

    /// Same point in the other chart.
    pub fn transition(&self) -> Result<SpherePoint> {
        if self.coord.norm_sqr() == 0.0 {
            return Err(Error::OutOfDomain(self.coord.re, self.coord.im));
        }
        let chart = match self.chart {
            Chart::One => Chart::Two,
            Chart::Two => Chart::One,
        };
        Ok(SpherePoint::new(chart, self.coord.inv()))
    }
}

/// Unit vector `(2x, ±2y, ±(x² + y² − 1))/(1 + x² + y²)`, upper signs in
/// chart 1.
pub fn stereographic(point: &SpherePoint) -> Vec3 {
    let (x, y) = (point.coord.re, point.coord.im);
    let r2 = x * x + y * y;
    let sign = match point.chart {
        Chart::One => 1.0,
        Chart::Two => -1.0,
    };
    Vec3::new(2.0 * x, sign * 2.0 * y, sign * (r2 - 1.0)) / (1.0 + r2)
}

/// Chart coordinate of a unit vector; fails at the chart's point at infinity.
pub fn inverse_stereographic(x: &Vec3, chart: Chart) -> Result<SpherePoint> {
    let (den, sign) = match chart {
        Chart::One => (1.0 - x.z, 1.0),
        Chart::Two => (1.0 + x.z, -1.0),
    };
    if den <= 0.0 {
        return Err(Error::OutOfDomain(x.x, x.y));
    }
    Ok(SpherePoint::new(chart, Complex64::new(x.x, sign * x.y) / den))
}

/// `λ(r) = 2/(1 + r²)`.
pub fn frame_scale(r: f64) -> f64 {
    2.0 / (1.0 + r * r)
}

/// Polynomial vector field `(a₀ + a₁z + a₂z²) ∂/∂z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolyVF {
    pub a: [Complex64; 3],
}

impl PolyVF {
    /// From coefficients in increasing degree; at most three are allowed.
    pub fn new(coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.len() > 3 {
            return Err(Error::DegreeTooHigh(coeffs.len() - 1));
        }
        let mut a = [Complex64::new(0.0, 0.0); 3];
        a[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self { a })
    }

    /// `zᵏ`, `k ≤ 2`.
    pub fn monomial(k: usize) -> Result<Self> {
        if k > 2 {
            return Err(Error::DegreeTooHigh(k));
        }
        let mut a = [Complex64::new(0.0, 0.0); 3];
        a[k] = Complex64::new(1.0, 0.0);
        Ok(Self { a })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.a[0] + z * (self.a[1] + z * self.a[2])
    }
}

/// The same vector field written in the coordinate `w = 1/z`:
/// `−w² P(1/w) = −(a₂ + a₁w + a₀w²)`.
pub fn vf_transition(p: &PolyVF) -> PolyVF {
    PolyVF {
        a: [-p.a[2], -p.a[1], -p.a[0]],
    }
}

/// Symbol `σ(V, V₁, V₂, V₃)` with `s = v₁v₂v₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereSymbol {
    pub v: PolyVF,
    pub factors: [PolyVF; 3],
}

impl SphereSymbol {
    pub fn new(v: PolyVF, factors: [PolyVF; 3]) -> Self {
        Self { v, factors }
    }

    pub fn s(&self, z: Complex64) -> Complex64 {
        self.factors.iter().map(|f| f.eval(z)).product()
    }

    /// The symbol written in the other chart's polynomials.
    pub fn transitioned(&self) -> SphereSymbol {
        SphereSymbol {
            v: vf_transition(&self.v),
            factors: self.factors.map(|f| vf_transition(&f)),
        }
    }
}

/// `σ_{m,n}`: `v = zᵐ` and `s = zⁿ`, split into quadratic factors.
pub fn sigma_mn(m: usize, n: usize) -> Result<SphereSymbol> {
    check_mn(m, n)?;
    let mut left = n;
    let mut factors = [PolyVF::monomial(0)?; 3];
    for f in &mut factors {
        let k = left.min(2);
        *f = PolyVF::monomial(k)?;
        left -= k;
    }
    Ok(SphereSymbol::new(PolyVF::monomial(m)?, factors))
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m > 2 || n > 6 {
        return Err(Error::OutOfRange(format!("(m, n) = ({m}, {n}) needs m ≤ 2, n ≤ 6")));
    }
    Ok(())
}

/// Complex form `(λv, λ³s)` of the symbol in the orthonormal frame of the
/// point's chart.
pub fn evaluate_rep(sym: &SphereSymbol, point: &SpherePoint) -> ComplexRep {
    let local = match point.chart {
        Chart::One => *sym,
        Chart::Two => sym.transitioned(),
    };
    let z = point.coord;
    let lam = frame_scale(z.norm());
    ComplexRep::new(local.v.eval(z) * lam, local.s(z) * lam.powi(3))
}

/// Coefficient matrix of the symbol in the orthonormal frame at `point`.
pub fn evaluate_symbol(sym: &SphereSymbol, point: &SpherePoint) -> LinearSymbol2 {
    evaluate_rep(sym, point).to_matrix()
}

/// Angle `ψ` by which the chart-2 frame is turned against the chart-1 frame at
/// `z`: chart-2 values equal chart-1 values rotated by `−ψ`, `ψ = arg(−z²)`.
pub fn chart_frame_rotation(z: Complex64) -> f64 {
    PI + 2.0 * z.arg()
}

/// Real root in `(0, 1)` of `r³ + r² + 3r − 1`.
pub fn alpha() -> f64 {
    bisect(|r| ((r + 1.0) * r + 3.0) * r - 1.0, 0.0, 1.0, 0.0).unwrap_or(f64::NAN)
}

/// `h(r) = (λ rᵐ)² − (λ³ rⁿ)²`, twice the determinant of `σ_{m,n}` at `|z| = r`.
pub fn h_function(m: usize, n: usize, r: f64) -> f64 {
    let lam = frame_scale(r);
    (lam * r.powi(m as i32)).powi(2) - (lam.powi(3) * r.powi(n as i32)).powi(2)
}

/// Radii of the singular circles of `σ_{m,n}` together with membership of
/// the poles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZSet {
    pub radii: Vec<f64>,
    pub includes_zero: bool,
    pub includes_infinity: bool,
}

/// Default bracket tolerance for singular radii.
pub const ROOT_TOL: f64 = 1e-15;

const LOG_GRID: usize = 24_000;

/// Positive finite radii with `rᵐ = λ(r)² rⁿ`, found by bracketing on a
/// logarithmic grid over `[1e-6, 1e6]` that contains `r = 1` exactly.
pub fn z_set(m: usize, n: usize) -> Result<ZSet> {
    z_set_with(m, n, ROOT_TOL)
}

pub fn z_set_with(m: usize, n: usize, tol: f64) -> Result<ZSet> {
    check_mn(m, n)?;
    let g = |r: f64| r.powi(m as i32) - frame_scale(r).powi(2) * r.powi(n as i32);
    let half = (LOG_GRID / 2) as i64;
    let grid: Vec<f64> = (0..=LOG_GRID as i64)
        .map(|i| 10f64.powf((i - half) as f64 * 12.0 / LOG_GRID as f64))
        .collect();
    let mut radii: Vec<f64> = Vec::new();
    for r in scan_roots(g, &grid, tol) {
        if radii.last().is_none_or(|&q| (r - q).abs() > 1e-9 * r) {
            radii.push(r);
        }
    }
    Ok(ZSet {
        radii,
        includes_zero: m > 0 && n > 0,
        includes_infinity: m < 2 && n < 6,
    })
}

/// `∂h/∂r` at `r = 1`: analytic value, numerical cross-check and verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transversality {
    pub dh_dr_1: f64,
    pub numeric: f64,
    pub transversal: bool,
}

pub fn transversality_h(m: usize, n: usize) -> Result<Transversality> {
    check_mn(m, n)?;
    let step = 1e-6;
    let numeric = (h_function(m, n, 1.0 + step) - h_function(m, n, 1.0 - step)) / (2.0 * step);
    Ok(Transversality {
        dh_dr_1: 2.0 * (2.0 + m as f64 - n as f64),
        numeric,
        transversal: n as i64 - m as i64 != 2,
    })
}

/// `½(n − m)θ + π/2`, continuous in `θ`.
pub fn predicted_kernel_angle_lifted(m: usize, n: usize, theta: f64) -> f64 {
    0.5 * (n as f64 - m as f64) * theta + FRAC_PI_2
}

/// Kernel line angle of `σ_{m,n}` at `e^{iθ}`, reduced to `[0, π)`.
pub fn predicted_kernel_angle(m: usize, n: usize, theta: f64) -> f64 {
    normalize_line_angle(predicted_kernel_angle_lifted(m, n, theta))
}

/// `σ` sampled in chart 1 over `[-h, h]²`.
pub fn chart_field(
    sym: SphereSymbol,
    half_width: f64,
    grid: usize,
) -> Result<ChartSymbolField<impl Fn(Point2) -> LinearSymbol2 + Sync>> {
    ChartSymbolField::new(Rect::centered(half_width), grid, grid, move |x: Point2| {
        evaluate_symbol(&sym, &SpherePoint::new(Chart::One, Complex64::new(x[0], x[1])))
    })
}

/// Vertices of the circle `|z| = r`, counter-clockwise from angle `0`.
pub fn circle_points(r: f64, samples: usize) -> Vec<Point2> {
    (0..samples)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / samples as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptions {
    pub grid: usize,
    pub contour: ContourOptions,
    pub root_tol: f64,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self {
            grid: 256,
            contour: ContourOptions::default(),
            root_tol: ROOT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEntry {
    pub r: f64,
    pub includes_zero: bool,
    pub includes_infinity: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleEntry {
    pub r: f64,
    /// `None` when the circle is not a transversal zero set.
    pub winding: Option<i64>,
    pub knot: Option<[i64; 2]>,
    pub connected: Option<bool>,
}

/// Report for one `(m, n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereReport {
    pub m: usize,
    pub n: usize,
    pub radii: Vec<RadiusEntry>,
    pub dh_dr_1: f64,
    pub transversal: bool,
    pub circles: Vec<CircleEntry>,
}

/// Singular radii, transversality and measured windings of `σ_{m,n}`.
///
/// Each singular circle is located among the contours extracted in chart 1
/// and its kernel winding is measured there. Circles where `0` is not a
/// regular value (the tangency `n − m = 2`) carry no winding.
pub fn analyze_mn(m: usize, n: usize, opts: &SphereOptions) -> Result<SphereReport> {
    let zs = z_set_with(m, n, opts.root_tol)?;
    let tr = transversality_h(m, n)?;
    let rmax = zs.radii.iter().fold(1.0_f64, |a, &b| a.max(b));
    let field = chart_field(sigma_mn(m, n)?, 1.5 * rmax, opts.grid)?;
    let (hx, _) = field.spacing();
    let curves = if tr.transversal {
        extract_singular_set(&field, &opts.contour)?
    } else {
        Vec::new()
    };
    let mut circles = Vec::with_capacity(zs.radii.len());
    for &r in &zs.radii {
        let matched = curves
            .iter()
            .filter(|c| c.closed && (c.mean_radius() - r).abs() < 2.0 * hx)
            .min_by(|a, b| (a.mean_radius() - r).abs().total_cmp(&(b.mean_radius() - r).abs()));
        let entry = match matched {
            Some(curve) if regular_value_check(&field, curve).regular => {
                let comp = MultiplicityComponent::from_curve(&field, curve.clone())?;
                CircleEntry {
                    r,
                    winding: Some(comp.winding),
                    knot: Some([comp.knot.p, comp.knot.q]),
                    connected: Some(comp.connected),
                }
            }
            Some(_) => CircleEntry {
                r,
                winding: None,
                knot: None,
                connected: None,
            },
            None if tr.transversal || (r - 1.0).abs() > 1e-12 => return Err(Error::ContourMismatch(r)),
            None => CircleEntry {
                r,
                winding: None,
                knot: None,
                connected: None,
            },
        };
        circles.push(entry);
    }
    let radii = zs
        .radii
        .iter()
        .map(|&r| RadiusEntry {
            r,
            includes_zero: zs.includes_zero,
            includes_infinity: zs.includes_infinity,
        })
        .collect();
    Ok(SphereReport {
        m,
        n,
        radii,
        dh_dr_1: tr.dh_dr_1,
        transversal: tr.transversal,
        circles,
    })
}

/// Kernel winding of `σ_{m,n}` on an explicit circle polyline, bypassing
/// contour extraction. Used where the circle is a tangential zero set.
pub fn circle_winding(m: usize, n: usize, r: f64, samples: usize) -> Result<MultiplicityComponent> {
    let field = chart_field(sigma_mn(m, n)?, 1.5 * r.max(1.0), 16)?;
    let curve = SingularCurve::from_points(&field, circle_points(r, samples), true);
    MultiplicityComponent::from_curve(&field, curve)
}

/// Measured kernel angle against the prediction at every vertex of the unit
/// circle contour; returns the largest line-angle discrepancy.
pub fn kernel_angle_discrepancy(m: usize, n: usize, grid: usize) -> Result<f64> {
    let field = chart_field(sigma_mn(m, n)?, 2.0, grid)?;
    let curves = extract_singular_set(&field, &ContourOptions::default())?;
    let unit = curves
        .iter()
        .find(|c| (c.mean_radius() - 1.0).abs() < 1e-2)
        .ok_or(Error::ContourMismatch(1.0))?;
    let mut worst = 0.0_f64;
    for &p in unit.distinct_points() {
        let measured = kernel_angle(&field, p)?;
        let predicted = predicted_kernel_angle(m, n, p[1].atan2(p[0]));
        worst = worst.max(crate::sym2::line_angle_delta(predicted, measured).abs());
    }
    Ok(worst)
}

/// Knot descriptor of the multiplicity curve over the unit circle.
pub fn unit_circle_knot(m: usize, n: usize) -> Result<crate::multiplicity::KnotType> {
    check_mn(m, n)?;
    Ok(knot_type(n as i64 - m as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn stereographic_examples() {
        let p = stereographic(&SpherePoint::new(Chart::One, c(0.0, 0.0)));
        assert_eq!(p, Vec3::new(0.0, 0.0, -1.0));
        let q = stereographic(&SpherePoint::new(Chart::One, Complex64::from_polar(1.0, 0.4)));
        assert!(q.z.abs() < 1e-15);
        for z in [c(0.3, -1.7), c(-4.0, 0.2), c(0.01, 0.02)] {
            for chart in [Chart::One, Chart::Two] {
                let x = stereographic(&SpherePoint::new(chart, z));
                assert!((x.norm() - 1.0).abs() < 1e-14);
                let back = inverse_stereographic(&x, chart).unwrap();
                assert!((back.coord - z).norm() < 1e-13 * (1.0 + z.norm()));
            }
        }
    }

    #[test]
    fn transition_agrees_with_embedding() {
        let p = SpherePoint::new(Chart::One, c(1.3, -0.4));
        let q = p.transition().unwrap();
        assert!((stereographic(&p) - stereographic(&q)).norm() < 1e-15);
        let back = q.transition().unwrap();
        assert!((back.coord - p.coord).norm() < 1e-15);
        assert!(SpherePoint::new(Chart::Two, c(0.0, 0.0)).transition().is_err());
    }

    #[test]
    fn frame_scale_examples() {
        assert_eq!(frame_scale(0.0), 2.0);
        assert_eq!(frame_scale(1.0), 1.0);
        assert!(frame_scale(1e3) < frame_scale(10.0));
    }

    #[test]
    fn transition_examples() {
        let z2 = PolyVF::monomial(2).unwrap();
        assert_eq!(vf_transition(&z2).a, [c(-1.0, 0.0), c(-0.0, 0.0), c(-0.0, 0.0)]);
        let one = PolyVF::monomial(0).unwrap();
        assert_eq!(vf_transition(&one).eval(c(0.5, 0.0)), c(-0.25, 0.0));
        let p = PolyVF::new(&[c(1.0, 2.0), c(-0.5, 0.1), c(3.0, 0.0)]).unwrap();
        assert_eq!(vf_transition(&vf_transition(&p)), p);
        assert_eq!(PolyVF::new(&[c(1.0, 0.0); 4]), Err(Error::DegreeTooHigh(3)));
    }

    #[test]
    fn sigma_at_unit_circle() {
        let sym = sigma_mn(1, 4).unwrap();
        let theta = 0.9;
        let rep = evaluate_rep(&sym, &SpherePoint::new(Chart::One, Complex64::from_polar(1.0, theta)));
        assert!((rep.u - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        assert!((rep.w - Complex64::from_polar(1.0, 4.0 * theta)).norm() < 1e-14);
        let at0 = evaluate_rep(&sigma_mn(0, 6).unwrap(), &SpherePoint::new(Chart::One, c(0.0, 0.0)));
        assert_eq!(at0.u, c(2.0, 0.0));
        assert_eq!(at0.w, c(0.0, 0.0));
        assert!(sigma_mn(3, 0).is_err());
    }

    #[test]
    fn charts_agree_on_overlap() {
        let z = Complex64::from_polar(1.3, 0.7);
        for (m, n) in [(0, 6), (1, 4), (2, 0), (1, 1)] {
            let sym = sigma_mn(m, n).unwrap();
            let p1 = SpherePoint::new(Chart::One, z);
            let a = evaluate_rep(&sym, &p1).rotate(-chart_frame_rotation(z));
            let b = evaluate_rep(&sym, &p1.transition().unwrap());
            assert!((a.u - b.u).norm() < 1e-12 && (a.w - b.w).norm() < 1e-12);
        }
    }

    #[test]
    fn alpha_satisfies_both_forms() {
        let a = alpha();
        assert!((a - 0.295598).abs() < 1e-6);
        assert!((a.powi(3) + a * a + 3.0 * a - 1.0).abs() < 1e-12);
        assert!(((1.0 + a * a).powi(2) - 4.0 * a).abs() < 1e-12);
    }

    #[test]
    fn z_set_examples() {
        let a = alpha();
        let z01 = z_set(0, 1).unwrap();
        assert_eq!(z01.radii.len(), 2);
        assert!((z01.radii[0] - a).abs() < 1e-12 && z01.radii[1] == 1.0);
        let z03 = z_set(0, 3).unwrap();
        assert_eq!(z03.radii.len(), 2);
        assert!(z03.radii[0] == 1.0 && (z03.radii[1] - 1.0 / a).abs() < 1e-10);
        let z06 = z_set(0, 6).unwrap();
        assert_eq!(z06.radii, vec![1.0]);
        assert!(!z06.includes_zero && !z06.includes_infinity);
        assert!(z_set(1, 1).unwrap().includes_zero);
        assert!(z_set(0, 0).unwrap().includes_infinity);
        assert!(z_set(0, 7).is_err());
    }

    #[test]
    fn transversality_examples() {
        let t = transversality_h(0, 6).unwrap();
        assert_eq!(t.dh_dr_1, -8.0);
        assert!(t.transversal);
        let t = transversality_h(0, 2).unwrap();
        assert_eq!(t.dh_dr_1, 0.0);
        assert!(!t.transversal);
        assert_eq!(transversality_h(2, 0).unwrap().dh_dr_1, 8.0);
        for m in 0..=2 {
            for n in 0..=6 {
                let t = transversality_h(m, n).unwrap();
                assert!((t.numeric - t.dh_dr_1).abs() < 1e-6, "({m},{n})");
            }
        }
    }

    #[test]
    fn predicted_angle_examples() {
        assert!((predicted_kernel_angle(0, 6, 0.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((predicted_kernel_angle(0, 6, PI / 3.0) - FRAC_PI_2).abs() < 1e-12);
        let adv = predicted_kernel_angle_lifted(1, 4, 2.0 * PI) - predicted_kernel_angle_lifted(1, 4, 0.0);
        assert!((adv - 3.0 * PI).abs() < 1e-12);
    }
}
