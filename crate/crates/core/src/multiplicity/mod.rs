//! Singular sets, kernel lines and winding numbers of traceless symbols given
//! over a planar chart by a coefficient-matrix field `M(x)`.
//!
//! The singular set is the zero set of `f = det M`. Along each closed
//! component the kernel of `M` is a line field whose half-turn count is the
//! winding number `m_C`; the multiplicity curve over the component is then a
//! `(2, m_C)` torus knot, connected exactly when `m_C` is odd.

mod contour;
mod knot;
mod winding;
mod zeros;

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sym2::LinearSymbol2;

pub use contour::{extract_singular_set, ContourOptions};
pub use knot::{knot_type, KnotType};
pub use winding::{lift_line_angles, winding_number, LIFT_MAX_STEP, WINDING_RESIDUAL};
pub use zeros::{signed_zero_count, ZeroCount};

pub type Point2 = [f64; 2];

/// Relative floor on `‖∇f‖` below which a curve is declared non-transversal.
pub const GRADIENT_FLOOR: f64 = 1e-6;

/// Axis-aligned chart rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    /// The square `[-h, h]²`.
    pub fn centered(h: f64) -> Self {
        Self::new(-h, h, -h, h)
    }

    pub fn contains(&self, x: Point2) -> bool {
        x[0] >= self.x0 && x[0] <= self.x1 && x[1] >= self.y0 && x[1] <= self.y1
    }

    pub fn diagonal(&self) -> f64 {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }
}

/// A traceless symbol over a planar chart, sampled on a regular grid of
/// `nx × ny` cells.
pub struct ChartSymbolField<S> {
    domain: Rect,
    nx: usize,
    ny: usize,
    sampler: S,
    scale: OnceLock<f64>,
}

impl<S> ChartSymbolField<S>
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    pub fn new(domain: Rect, nx: usize, ny: usize, sampler: S) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidParameter("grid resolution must be positive".into()));
        }
        if !(domain.x1 > domain.x0 && domain.y1 > domain.y0) {
            return Err(Error::InvalidParameter("empty chart domain".into()));
        }
        Ok(Self {
            domain,
            nx,
            ny,
            sampler,
            scale: OnceLock::new(),
        })
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.domain.x1 - self.domain.x0) / self.nx as f64,
            (self.domain.y1 - self.domain.y0) / self.ny as f64,
        )
    }

    pub fn node(&self, i: usize, j: usize) -> Point2 {
        let (hx, hy) = self.spacing();
        let x = if i == self.nx {
            self.domain.x1
        } else {
            self.domain.x0 + i as f64 * hx
        };
        let y = if j == self.ny {
            self.domain.y1
        } else {
            self.domain.y0 + j as f64 * hy
        };
        [x, y]
    }

    /// Coefficient matrix `M(x)`.
    pub fn symbol(&self, x: Point2) -> Result<LinearSymbol2> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain(x[0], x[1]));
        }
        Ok((self.sampler)(x))
    }

    /// `f(x) = det M(x)`; zero exactly on the singular set.
    pub fn det_field(&self, x: Point2) -> Result<f64> {
        self.symbol(x).map(|m| m.det())
    }

    pub(crate) fn det_unchecked(&self, x: Point2) -> f64 {
        (self.sampler)(x).det()
    }

    /// Values of `f` on the grid nodes, row-major in `j`.
    pub fn grid_values(&self) -> Vec<f64> {
        let w = self.nx + 1;
        (0..w * (self.ny + 1))
            .into_par_iter()
            .map(|k| self.det_unchecked(self.node(k % w, k / w)))
            .collect()
    }

    /// `max |f|` over the grid, cached.
    pub fn scale(&self) -> f64 {
        *self
            .scale
            .get_or_init(|| self.grid_values().iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    /// Central-difference gradient of `f`.
    pub fn gradient(&self, x: Point2) -> [f64; 2] {
        let (hx, hy) = self.spacing();
        let d = 1e-3 * hx.min(hy);
        let fx = (self.det_unchecked([x[0] + d, x[1]]) - self.det_unchecked([x[0] - d, x[1]])) / (2.0 * d);
        let fy = (self.det_unchecked([x[0], x[1] + d]) - self.det_unchecked([x[0], x[1] - d])) / (2.0 * d);
        [fx, fy]
    }
}

/// `f(x) = det M(x)`.
pub fn det_field<S>(field: &ChartSymbolField<S>, x: Point2) -> Result<f64>
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    field.det_field(x)
}

/// A polyline approximating one component of the singular set.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularCurve {
    /// Closed curves repeat their first vertex at the end.
    pub points: Vec<Point2>,
    pub closed: bool,
    /// `|f|` at each vertex.
    pub residuals: Vec<f64>,
}

impl SingularCurve {
    /// Curve through explicit points, e.g. a predicted singular circle.
    pub fn from_points<S>(field: &ChartSymbolField<S>, mut points: Vec<Point2>, closed: bool) -> Self
    where
        S: Fn(Point2) -> LinearSymbol2 + Sync,
    {
        if closed && points.first() != points.last() {
            points.push(points[0]);
        }
        let residuals = points.iter().map(|&p| field.det_unchecked(p).abs()).collect();
        SingularCurve {
            points,
            closed,
            residuals,
        }
    }

    pub fn length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
            .sum()
    }

    /// Shoelace area; positive for counter-clockwise closed curves.
    pub fn signed_area(&self) -> f64 {
        0.5 * self
            .points
            .windows(2)
            .map(|w| w[0][0] * w[1][1] - w[1][0] * w[0][1])
            .sum::<f64>()
    }

    /// Vertices without the repeated closing vertex.
    pub fn distinct_points(&self) -> &[Point2] {
        if self.closed && self.points.len() > 1 {
            &self.points[..self.points.len() - 1]
        } else {
            &self.points
        }
    }

    pub fn reversed(&self) -> SingularCurve {
        let mut c = self.clone();
        c.points.reverse();
        c.residuals.reverse();
        c
    }

    /// Closed curves: counter-clockwise, starting at the lexicographically
    /// smallest vertex. Open curves: starting at the smaller endpoint.
    pub fn canonicalize(&mut self) {
        if self.points.len() < 2 {
            return;
        }
        if !self.closed {
            if lex_less(self.points[self.points.len() - 1], self.points[0]) {
                *self = self.reversed();
            }
            return;
        }
        if self.signed_area() < 0.0 {
            *self = self.reversed();
        }
        let n = self.points.len() - 1;
        let start = (0..n)
            .min_by(|&a, &b| lex_cmp(self.points[a], self.points[b]))
            .unwrap_or(0);
        let mut pts: Vec<Point2> = (0..n).map(|k| self.points[(start + k) % n]).collect();
        let mut res: Vec<f64> = (0..n).map(|k| self.residuals[(start + k) % n]).collect();
        pts.push(pts[0]);
        res.push(res[0]);
        self.points = pts;
        self.residuals = res;
    }

    /// Mean distance of the vertices from the origin.
    pub fn mean_radius(&self) -> f64 {
        let pts = self.distinct_points();
        pts.iter().map(|p| p[0].hypot(p[1])).sum::<f64>() / pts.len().max(1) as f64
    }
}

fn lex_cmp(a: Point2, b: Point2) -> std::cmp::Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

fn lex_less(a: Point2, b: Point2) -> bool {
    lex_cmp(a, b) == std::cmp::Ordering::Less
}

/// Result of the transversality certificate on one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularValue {
    pub regular: bool,
    /// Smallest `‖∇f‖` over the curve's vertices.
    pub min_grad: f64,
}

/// Numerical check that `0` is a regular value of `f` along `curve`:
/// `min ‖∇f‖ > 1e-6 · max_grid |f|`.
pub fn regular_value_check<S>(field: &ChartSymbolField<S>, curve: &SingularCurve) -> RegularValue
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    let min_grad = curve
        .distinct_points()
        .iter()
        .map(|&p| {
            let g = field.gradient(p);
            g[0].hypot(g[1])
        })
        .fold(f64::INFINITY, f64::min);
    RegularValue {
        regular: min_grad > GRADIENT_FLOOR * field.scale(),
        min_grad,
    }
}

/// Line angle in `[0, π)` of the unit covector spanning `ker M(x)`.
pub fn kernel_angle<S>(field: &ChartSymbolField<S>, x: Point2) -> Result<f64>
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    let m = field.symbol(x)?;
    if m.frobenius_norm() <= 1e-9 * field.scale().sqrt() {
        return Err(Error::RankZero);
    }
    m.least_singular_angle()
}

/// A closed component of the singular set together with its kernel line
/// field and the induced winding data.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityComponent {
    pub base: SingularCurve,
    /// Continuously lifted kernel-line angle at every vertex of `base`
    /// (including the closing vertex).
    pub kernel_angles: Vec<f64>,
    pub winding: i64,
    pub knot: KnotType,
    pub connected: bool,
}

impl MultiplicityComponent {
    /// Measure the kernel line along a closed curve and classify it.
    pub fn from_curve<S>(field: &ChartSymbolField<S>, curve: SingularCurve) -> Result<Self>
    where
        S: Fn(Point2) -> LinearSymbol2 + Sync,
    {
        if !curve.closed {
            return Err(Error::OpenCurve);
        }
        let raw = curve
            .points
            .iter()
            .map(|&p| field.symbol(p).and_then(|_| kernel_angle(field, p)))
            .collect::<Result<Vec<f64>>>()?;
        let (kernel_angles, max_jump) = lift_line_angles(&raw);
        if let Some((vertex, jump)) = max_jump.filter(|&(_, j)| j.abs() > LIFT_MAX_STEP) {
            return Err(Error::LiftFailure { vertex, jump });
        }
        let mut comp = MultiplicityComponent {
            base: curve,
            kernel_angles,
            winding: 0,
            knot: knot_type(0),
            connected: false,
        };
        comp.winding = winding_number(&comp)?;
        comp.knot = knot_type(comp.winding);
        comp.connected = comp.knot.connected;
        Ok(comp)
    }

    /// Number of connected components of the multiplicity curve over `base`.
    pub fn multiplicity_components(&self) -> usize {
        self.knot.components
    }

    /// The multiplicity curve in solid-torus coordinates `(base angle, fiber
    /// angle)`, one polyline per connected component. The base angle is arc
    /// length along `base` scaled to `[0, 2π)`; fiber angles are the directions
    /// `±ξ` of the kernel covectors. Angles are reduced to `[0, 2π)`.
    pub fn torus_polyline(&self) -> Vec<Vec<[f64; 2]>> {
        use std::f64::consts::{PI, TAU};
        let pts = &self.base.points;
        let total = self.base.length();
        let mut base = Vec::with_capacity(pts.len());
        let mut acc = 0.0;
        base.push(0.0);
        for w in pts.windows(2) {
            acc += (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
            base.push(TAU * acc / total);
        }
        let n = pts.len() - 1;
        let strand = |shift: f64| -> Vec<[f64; 2]> {
            (0..n)
                .map(|i| [base[i].rem_euclid(TAU), (self.kernel_angles[i] + shift).rem_euclid(TAU)])
                .collect()
        };
        if self.connected {
            let mut one = strand(0.0);
            one.extend(strand(self.winding as f64 * PI));
            vec![one]
        } else {
            vec![strand(0.0), strand(PI)]
        }
    }
}

/// Per-curve summary in a multiplicity report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveReport {
    pub length: f64,
    pub winding: Option<i64>,
    pub knot: Option<[i64; 2]>,
    pub connected: Option<bool>,
    pub min_grad: f64,
}

/// Outcome of analysing every extracted singular curve of a field.
#[derive(Debug, Clone)]
pub struct MultiplicityAnalysis {
    pub curves: Vec<SingularCurve>,
    pub components: Vec<Option<MultiplicityComponent>>,
    pub reports: Vec<CurveReport>,
}

/// Extract the singular set and classify each closed, transversal curve.
/// Open or non-transversal curves are reported without a winding number.
pub fn analyze_field<S>(field: &ChartSymbolField<S>, opts: &ContourOptions) -> Result<MultiplicityAnalysis>
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    let curves = extract_singular_set(field, opts)?;
    let mut components = Vec::with_capacity(curves.len());
    let mut reports = Vec::with_capacity(curves.len());
    for curve in &curves {
        let rv = regular_value_check(field, curve);
        let comp = if curve.closed && rv.regular {
            Some(MultiplicityComponent::from_curve(field, curve.clone())?)
        } else {
            None
        };
        reports.push(CurveReport {
            length: curve.length(),
            winding: comp.as_ref().map(|c| c.winding),
            knot: comp.as_ref().map(|c| [c.knot.p, c.knot.q]),
            connected: comp.as_ref().map(|c| c.connected),
            min_grad: rv.min_grad,
        });
        components.push(comp);
    }
    Ok(MultiplicityAnalysis {
        curves,
        components,
        reports,
    })
}

impl MultiplicityAnalysis {
    /// CSV rows `curve_id,x1,x2,kernel_angle_lifted` for every vertex.
    /// Curves without a certified component carry the lifted kernel angle when
    /// it can be measured and `nan` otherwise.
    pub fn polyline_csv<S>(&self, field: &ChartSymbolField<S>) -> String
    where
        S: Fn(Point2) -> LinearSymbol2 + Sync,
    {
        let mut out = String::from("curve_id,x1,x2,kernel_angle_lifted\n");
        for (id, (curve, comp)) in self.curves.iter().zip(&self.components).enumerate() {
            let angles: Vec<f64> = match comp {
                Some(c) => c.kernel_angles.clone(),
                None => {
                    let raw: Vec<f64> = curve
                        .points
                        .iter()
                        .map(|&p| kernel_angle(field, p).unwrap_or(f64::NAN))
                        .collect();
                    if raw.iter().all(|a| a.is_finite()) {
                        lift_line_angles(&raw).0
                    } else {
                        raw
                    }
                }
            };
            for (p, a) in curve.points.iter().zip(angles) {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    id,
                    crate::report::fmt17(p[0]),
                    crate::report::fmt17(p[1]),
                    crate::report::fmt17(a)
                ));
            }
        }
        out
    }
}
