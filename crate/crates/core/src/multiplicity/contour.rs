//! Marching-squares extraction of the zero set of `det M`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{ChartSymbolField, Point2, SingularCurve};
use crate::error::{Error, Result};
use crate::sym2::LinearSymbol2;

/// Minimum grid cells per axis accepted by the extractor.
pub const MIN_GRID: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourOptions {
    /// Crossing points are refined until `|f| ≤ residual_tol · max_grid |f|`.
    pub residual_tol: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self { residual_tol: 1e-10 }
    }
}

/// Polylines approximating `{det M = 0}`.
///
/// Nodes are classified by `f > 0`; ambiguous cells are resolved by the sign
/// at the cell centre. Crossing points are refined by bisection along grid
/// edges. Closed curves are oriented counter-clockwise and start at their
/// lexicographically smallest vertex; the output is sorted by decreasing
/// length.
pub fn extract_singular_set<S>(field: &ChartSymbolField<S>, opts: &ContourOptions) -> Result<Vec<SingularCurve>>
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    let (nx, ny) = field.resolution();
    if nx < MIN_GRID || ny < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "contour grid must have at least {MIN_GRID} cells per axis"
        )));
    }
    let vals = field.grid_values();
    let scale = field.scale();
    if scale == 0.0 {
        return Err(Error::DegenerateField);
    }
    let w = nx + 1;
    let inside = |i: usize, j: usize| vals[j * w + i] > 0.0;
    let n_h = nx * (ny + 1);
    let h_edge = |i: usize, j: usize| j * nx + i;
    let v_edge = |i: usize, j: usize| n_h + j * w + i;

    // segments between crossing edges, cell by cell
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let c = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
            let e = [h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)];
            // edge k joins corners (0,1), (1,2), (3,2), (0,3)
            let cut = [c[0] != c[1], c[1] != c[2], c[3] != c[2], c[0] != c[3]];
            let crossing: Vec<usize> = (0..4).filter(|&k| cut[k]).map(|k| e[k]).collect();
            match crossing.len() {
                2 => segments.push((crossing[0], crossing[1])),
                4 => {
                    let a = field.node(i, j);
                    let b = field.node(i + 1, j + 1);
                    let center = field.det_unchecked([0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]) > 0.0;
                    if c[0] == center {
                        // corners 0 and 2 connect through the centre
                        segments.push((e[0], e[1]));
                        segments.push((e[2], e[3]));
                    } else {
                        segments.push((e[3], e[0]));
                        segments.push((e[1], e[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(s);
        adjacency.entry(b).or_default().push(s);
    }

    // refine the crossing point on every cut edge
    let edges: Vec<usize> = adjacency.keys().copied().collect();
    let tol = opts.residual_tol * scale;
    let points: Vec<(Point2, f64)> = edges
        .par_iter()
        .map(|&id| {
            let (a, b) = if id < n_h {
                (field.node(id % nx, id / nx), field.node(id % nx + 1, id / nx))
            } else {
                let k = id - n_h;
                (field.node(k % w, k / w), field.node(k % w, k / w + 1))
            };
            crossing_point(field, a, b, tol)
        })
        .collect();
    let point_of: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();

    // chain segments: open chains from degree-one edges first, then cycles
    let mut used = vec![false; segments.len()];
    let mut chains: Vec<(Vec<usize>, bool)> = Vec::new();
    let starts: Vec<usize> = adjacency
        .iter()
        .filter(|(_, s)| s.len() == 1)
        .map(|(&e, _)| e)
        .chain(adjacency.keys().copied())
        .collect();
    for start in starts {
        let Some(&first) = adjacency[&start].iter().find(|&&s| !used[s]) else {
            continue;
        };
        let mut chain = vec![start];
        let mut seg = first;
        let mut at = start;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            at = if a == at { b } else { a };
            chain.push(at);
            if at == start {
                break;
            }
            match adjacency[&at].iter().find(|&&s| !used[s]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        let closed = chain.len() > 2 && chain[0] == chain[chain.len() - 1];
        chains.push((chain, closed));
    }

    let mut curves: Vec<SingularCurve> = chains
        .into_iter()
        .filter_map(|(chain, closed)| {
            let mut pts: Vec<Point2> = Vec::with_capacity(chain.len());
            let mut res: Vec<f64> = Vec::with_capacity(chain.len());
            for e in chain {
                let (p, r) = points[point_of[&e]];
                // a crossing exactly on a grid node is shared by two edges
                if pts.last() != Some(&p) {
                    pts.push(p);
                    res.push(r);
                }
            }
            if closed && pts.len() > 1 && pts[0] == pts[pts.len() - 1] {
                pts.pop();
                res.pop();
            }
            if pts.len() < 2 {
                return None;
            }
            if closed {
                pts.push(pts[0]);
                res.push(res[0]);
            }
            let mut curve = SingularCurve {
                points: pts,
                closed,
                residuals: res,
            };
            if curve.length() == 0.0 {
                return None;
            }
            curve.canonicalize();
            Some(curve)
        })
        .collect();
    curves.sort_by(|a, b| {
        b.length()
            .total_cmp(&a.length())
            .then(a.points[0][0].total_cmp(&b.points[0][0]))
            .then(a.points[0][1].total_cmp(&b.points[0][1]))
    });
    Ok(curves)
}

fn crossing_point<S>(field: &ChartSymbolField<S>, a: Point2, b: Point2, tol: f64) -> (Point2, f64)
where
    S: Fn(Point2) -> LinearSymbol2 + Sync,
{
    let at = |s: f64| [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
    let fa = field.det_unchecked(a);
    let fb = field.det_unchecked(b);
    // an exact zero on an end node is the crossing
    if fa == 0.0 {
        return (a, 0.0);
    }
    if fb == 0.0 {
        return (b, 0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut flo = fa;
    let mut best = (at(0.5), f64::INFINITY);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = field.det_unchecked(at(mid));
        if fm.abs() < best.1 {
            best = (at(mid), fm.abs());
        }
        if fm.abs() <= tol * 1e-3 || fm == 0.0 {
            break;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    best
}
