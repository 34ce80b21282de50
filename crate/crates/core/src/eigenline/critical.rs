//! Discrete critical points of `λ_s` and the necessary condition on the
//! cylinders.

use serde::Serialize;

use super::{EigenlineManifold, Region};
use crate::error::Result;
use crate::mesh::{self, Vec3};
use crate::section::{tangent_frame, SymmetricSection};

/// A vertex whose star makes it a discrete minimum, maximum or saddle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    /// `sheet1`, `sheet2` or `cyl_i`.
    #[serde(rename = "where")]
    pub region: String,
    pub vertex: usize,
    /// `min`, `max` or `saddle`.
    pub kind: String,
    /// Value of `λ_s`; for sheet extrema, refined on the sphere.
    pub lambda: f64,
    /// Base direction of the (refined) point.
    pub direction: [f64; 3],
    /// Number of sign changes of `λ(w) − λ(v)` around the link.
    pub sign_changes: usize,
}

/// Data reported at a cylinder core. The condition `d(s_R|M_s) = 0` is
/// vacuous for isolated multiplicity points, so it always holds; the norm of
/// `d s_R` is reported unclassified.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessaryCondition {
    pub cylinder: usize,
    pub point: [f64; 3],
    pub ds_r_norm: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport {
    pub criticals: Vec<CriticalPoint>,
    pub necessary_condition: Vec<NecessaryCondition>,
    /// `Σ (1 − changes/2)` over every vertex; equals `χ` on a closed surface.
    pub morse_sum: i64,
}

/// Star comparison of `λ_s` at every vertex of the closed manifold. Equal
/// values are ordered by vertex index.
pub fn critical_scan<S: SymmetricSection>(manifold: &EigenlineManifold, section: &S) -> Result<CriticalReport> {
    let m = &manifold.mesh;
    let lam = &manifold.lambda;
    let links = mesh::vertex_links(m.vertices.len(), &m.faces)?;
    let above = |w: usize, v: usize| lam[w] > lam[v] || (lam[w] == lam[v] && w > v);
    let mut criticals = Vec::new();
    let mut morse_sum = 0i64;
    for (v, link) in links.iter().enumerate() {
        if link.is_empty() {
            continue;
        }
        let signs: Vec<bool> = link.iter().map(|&w| above(w, v)).collect();
        let changes = (0..signs.len())
            .filter(|&k| signs[k] != signs[(k + 1) % signs.len()])
            .count();
        morse_sum += 1 - (changes / 2) as i64;
        let kind = match changes {
            0 if signs[0] => "min",
            0 => "max",
            2 => continue,
            _ => "saddle",
        };
        let base = manifold.base_points[v];
        let (lambda, direction) = match (m.regions[v], kind) {
            (Region::Sheet1, "min" | "max") => refine(section, base, 0, kind == "max"),
            (Region::Sheet2, "min" | "max") => refine(section, base, 1, kind == "max"),
            _ => (lam[v], base),
        };
        criticals.push(CriticalPoint {
            region: m.regions[v].label(),
            vertex: v,
            kind: kind.to_string(),
            lambda,
            direction: direction.into(),
            sign_changes: changes,
        });
    }
    let necessary_condition = manifold
        .cylinders
        .iter()
        .enumerate()
        .map(|(i, c)| NecessaryCondition {
            cylinder: i,
            point: c.point.into(),
            ds_r_norm: ds_r_norm(section, &c.point),
            holds: true,
        })
        .collect();
    Ok(CriticalReport {
        criticals,
        necessary_condition,
        morse_sum,
    })
}

fn sheet_value<S: SymmetricSection>(section: &S, x: &Vec3, sheet: usize) -> f64 {
    let (l1, l2) = section.value(x).eigenvalues();
    if sheet == 0 {
        l1
    } else {
        l2
    }
}

/// Pattern search for a local extremum of `λ_{s,sheet}` on the sphere.
fn refine<S: SymmetricSection>(section: &S, start: Vec3, sheet: usize, maximize: bool) -> (f64, Vec3) {
    let sign = if maximize { -1.0 } else { 1.0 };
    let f = |x: &Vec3| sign * sheet_value(section, x, sheet);
    let mut x = start.normalize();
    let mut fx = f(&x);
    let mut step = 0.05;
    for _ in 0..2000 {
        if step < 1e-12 {
            break;
        }
        let (t1, t2) = tangent_frame(&x);
        let mut improved = false;
        for d in [
            t1,
            -t1,
            t2,
            -t2,
            (t1 + t2) / 2f64.sqrt(),
            -(t1 + t2) / 2f64.sqrt(),
            (t1 - t2) / 2f64.sqrt(),
            (t2 - t1) / 2f64.sqrt(),
        ] {
            let y = (x + d * step).normalize();
            let fy = f(&y);
            if fy < fx {
                x = y;
                fx = fy;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (sign * fx, x)
}

/// `‖d s_R‖` at `p` by central differences along the tangent frame, with
/// `s_R` the half-trace of the section.
pub fn ds_r_norm<S: SymmetricSection>(section: &S, p: &Vec3) -> f64 {
    let p = p.normalize();
    let (t1, t2) = tangent_frame(&p);
    let h = 1e-5;
    let s = |y: Vec3| section.value(&y.normalize()).half_trace();
    let d1 = (s(p + t1 * h) - s(p - t1 * h)) / (2.0 * h);
    let d2 = (s(p + t2 * h) - s(p - t2 * h)) / (2.0 * h);
    d1.hypot(d2)
}
