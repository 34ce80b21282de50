//! Construction of the glued eigenline surface.

use std::f64::consts::PI;

use super::{Cylinder, EigenlineManifold, Region, SurfaceMesh};
use crate::error::{Error, Result};
use crate::mesh::{self, TriMesh, Vec3};
use crate::multiplicity::lift_line_angles;
use crate::section::{tangent_frame, SymmetricSection};

/// Radius of the second sheet in the 3D embedding (the first is the unit
/// sphere); purely for visualization.
const SHEET2_RADIUS: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenlineOptions {
    /// Icosphere subdivision level of the base.
    pub subdivisions: u32,
    /// Angular radius `ρ` of the disks removed around multiplicity points.
    pub tube_radius: f64,
    /// Collar half-width `ε` of the cylinders.
    pub collar: f64,
}

impl Default for EigenlineOptions {
    fn default() -> Self {
        Self {
            subdivisions: 3,
            tube_radius: 0.1,
            collar: 0.05,
        }
    }
}

/// Glue two sheets of eigenlines over the sphere minus disks around
/// `points` with one cylinder per point.
///
/// Each disk contains at least the nearest base vertex; disks are grown when
/// removing them would leave a pinched or multiply bounded hole.
pub fn build_eigenline_manifold<S: SymmetricSection>(
    section: &S,
    points: &[Vec3],
    opts: &EigenlineOptions,
) -> Result<EigenlineManifold> {
    if !(opts.tube_radius > 0.0 && opts.collar > 0.0) {
        return Err(Error::InvalidParameter(
            "tube radius and collar must be positive".into(),
        ));
    }
    let points: Vec<Vec3> = points.iter().map(|p| p.normalize()).collect();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if angle(p, q) <= 3.0 * opts.tube_radius {
                return Err(Error::InvalidParameter(format!(
                    "multiplicity points closer than three tube radii ({:.3e} rad)",
                    angle(p, q)
                )));
            }
        }
    }
    let ico = TriMesh::icosphere(opts.subdivisions);
    let (keep_faces, loops) = punch_holes(&ico, &points, opts.tube_radius)?;

    // sheet 1: kept vertices in original order; sheet 2: copies with reversed faces
    let mut used = vec![false; ico.vertices.len()];
    for f in &keep_faces {
        for &v in f {
            used[v] = true;
        }
    }
    let mut index = vec![usize::MAX; ico.vertices.len()];
    let mut base: Vec<Vec3> = Vec::new();
    for v in (0..ico.vertices.len()).filter(|&v| used[v]) {
        index[v] = base.len();
        base.push(ico.vertices[v]);
    }
    let n1 = base.len();
    let mut vertices: Vec<Vec3> = base.clone();
    vertices.extend(base.iter().map(|v| v * SHEET2_RADIUS));
    let mut regions = vec![Region::Sheet1; n1];
    regions.extend(std::iter::repeat_n(Region::Sheet2, n1));
    let mut faces: Vec<[usize; 3]> = keep_faces.iter().map(|f| f.map(|v| index[v])).collect();
    faces.extend(
        keep_faces
            .iter()
            .map(|f| [index[f[2]] + n1, index[f[1]] + n1, index[f[0]] + n1]),
    );
    let mut base_points: Vec<Vec3> = base.iter().chain(base.iter()).copied().collect();

    let mut line_angles = Vec::with_capacity(2 * n1);
    let mut lambda = vec![0.0; 2 * n1];
    let mut lambda0 = vec![0.0; 2 * n1];
    for (k, x) in base.iter().enumerate() {
        let v = section.value(x);
        let (l1, l2) = v.eigenvalues();
        let r = v.traceless_norm();
        lambda[k] = l1;
        lambda[k + n1] = l2;
        lambda0[k] = -r;
        lambda0[k + n1] = r;
        line_angles.push(v.eigenline_angles().map(|a| a.0).unwrap_or(0.0));
    }
    for k in 0..n1 {
        line_angles.push(crate::sym2::normalize_line_angle(line_angles[k] + 0.5 * PI));
    }

    let mut cylinders = Vec::with_capacity(points.len());
    for (i, (p, lp)) in points.iter().zip(&loops).enumerate() {
        let lp: Vec<usize> = lp.iter().map(|&v| index[v]).collect();
        // lift along the loop with sub-samples on every edge
        let sub = 8;
        let mut raw = Vec::with_capacity(lp.len() * sub + 1);
        for k in 0..=lp.len() {
            let a = vertices[lp[k % lp.len()]];
            let steps = if k == lp.len() { 1 } else { sub };
            let b = vertices[lp[(k + 1) % lp.len()]];
            for q in 0..steps {
                let x = a + (b - a) * (q as f64 / sub as f64);
                let angle =
                    section
                        .value_near(p, &x)
                        .eigenline_angles()
                        .map(|a| a.0)
                        .map_err(|_| Error::GluingMismatch {
                            point: i,
                            half_turns: f64::NAN,
                        })?;
                raw.push(angle);
            }
        }
        let (dense, worst) = lift_line_angles(&raw);
        let lifted: Vec<f64> = (0..=lp.len()).map(|k| dense[k * sub]).collect();
        let half_turns = (lifted[lifted.len() - 1] - lifted[0]) / PI;
        let jump_ok = worst.is_none_or(|(_, j)| j.abs() <= crate::multiplicity::LIFT_MAX_STEP);
        if (half_turns.abs() - 1.0).abs() > 0.1 || !jump_ok {
            return Err(Error::GluingMismatch { point: i, half_turns });
        }
        let d = half_turns.signum();
        let theta_ref = lifted[0];
        let n = lp.len();
        let progress_a: Vec<f64> = (0..n).map(|j| d * (lifted[j] - theta_ref)).collect();
        let progress_b: Vec<f64> = progress_a.iter().map(|u| u + 0.5 * PI).collect();

        let s_r = section.value(p).half_trace();
        let mean = |vals: &[f64], ids: &[usize]| ids.iter().map(|&v| vals[v]).sum::<f64>() / ids.len() as f64;
        let ids_b: Vec<usize> = lp.iter().map(|&v| v + n1).collect();
        let (lam_a, lam_b) = (mean(&lambda, &lp), mean(&lambda, &ids_b));
        let (lam0_a, lam0_b) = (mean(&lambda0, &lp), mean(&lambda0, &ids_b));

        // uniform rings at t = −ε/2, 0, +ε/2
        let nf = n.max(8);
        let (e1, e2) = tangent_frame(p);
        let rho_c = 0.6 * opts.tube_radius;
        let mut ring = |s: f64, lam: f64, lam0: f64| -> Vec<(usize, f64)> {
            (0..nf)
                .map(|m| {
                    let w = PI * m as f64 / nf as f64;
                    let dir =
                        (p * rho_c.cos() + (e1 * (2.0 * w).cos() + e2 * (2.0 * w).sin()) * rho_c.sin()).normalize();
                    let id = vertices.len();
                    vertices.push(dir * (1.0 + (SHEET2_RADIUS - 1.0) * s));
                    regions.push(Region::Cylinder(i));
                    base_points.push(*p);
                    line_angles.push(crate::sym2::normalize_line_angle(theta_ref + d * w));
                    lambda.push(lam);
                    lambda0.push(lam0);
                    (id, w)
                })
                .collect()
        };
        let lower = ring(0.25, 0.5 * (lam_a + s_r), 0.5 * lam0_a);
        let core = ring(0.5, s_r, 0.0);
        let upper = ring(0.75, 0.5 * (lam_b + s_r), 0.5 * lam0_b);
        let ring_a: Vec<(usize, f64)> = lp.iter().copied().zip(progress_a).collect();
        let ring_b: Vec<(usize, f64)> = ids_b.iter().copied().zip(progress_b).collect();
        for (r, s) in [(&ring_a, &lower), (&lower, &core), (&core, &upper), (&upper, &ring_b)] {
            zipper(r, s, &mut faces);
        }
        cylinders.push(Cylinder {
            point: *p,
            core: core.iter().map(|c| c.0).collect(),
            sheet1_loop: lp.clone(),
            sheet2_loop: ids_b,
            half_turns,
            s_r,
        });
    }

    if !mesh::is_closed(&faces) || !mesh::is_consistently_oriented(&faces) {
        return Err(Error::NotManifold);
    }
    Ok(EigenlineManifold {
        mesh: SurfaceMesh {
            vertices,
            regions,
            faces,
            boundary_loops: Vec::new(),
        },
        base_points,
        line_angles,
        lambda,
        lambda0,
        cylinders,
    })
}

fn angle(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Remaining faces and one boundary loop per removed disk.
type Punched = (Vec<[usize; 3]>, Vec<Vec<usize>>);

/// Faces of `ico` left after removing disks around `points`, and one
/// boundary loop per point (original vertex ids, face-induced direction).
fn punch_holes(ico: &TriMesh, points: &[Vec3], rho: f64) -> Result<Punched> {
    if points.is_empty() {
        return Ok((ico.faces.clone(), Vec::new()));
    }
    for attempt in 0..12 {
        let r = rho * 1.25f64.powi(attempt);
        let mut removed = vec![false; ico.vertices.len()];
        for p in points {
            let mut any = false;
            for (v, x) in ico.vertices.iter().enumerate() {
                if angle(x, p) < r {
                    removed[v] = true;
                    any = true;
                }
            }
            if !any {
                let nearest = (0..ico.vertices.len())
                    .min_by(|&a, &b| angle(&ico.vertices[a], p).total_cmp(&angle(&ico.vertices[b], p)))
                    .unwrap_or(0);
                removed[nearest] = true;
            }
        }
        let kept: Vec<[usize; 3]> = ico
            .faces
            .iter()
            .filter(|f| f.iter().all(|&v| !removed[v]))
            .copied()
            .collect();
        let Ok(loops) = mesh::boundary_loops(&kept) else {
            continue;
        };
        if loops.len() != points.len() || mesh::connected_components(ico.vertices.len(), &kept) != 1 {
            continue;
        }
        let mut assigned: Vec<Option<Vec<usize>>> = vec![None; points.len()];
        let mut ok = true;
        for lp in loops {
            let c: Vec3 = lp.iter().map(|&v| ico.vertices[v]).sum::<Vec3>();
            let owner = (0..points.len())
                .min_by(|&a, &b| angle(&c, &points[a]).total_cmp(&angle(&c, &points[b])))
                .unwrap_or(0);
            if assigned[owner].is_some() {
                ok = false;
                break;
            }
            assigned[owner] = Some(lp);
        }
        if ok {
            return Ok((kept, assigned.into_iter().map(|l| l.unwrap_or_default()).collect()));
        }
    }
    Err(Error::NotManifold)
}

/// Triangulate the annulus between two rings of `(vertex, progress)` whose
/// progress increases by `π` once around, in the same cyclic direction.
/// `lower` precedes `upper` in the collar direction.
fn zipper(lower: &[(usize, f64)], upper: &[(usize, f64)], faces: &mut Vec<[usize; 3]>) {
    let (r, qr) = unwrap_ring(lower);
    let (s, qs) = unwrap_ring(upper);
    let (nr, ns) = (r.len(), s.len());
    let next_r = |i: usize| if i + 1 < nr { qr[i + 1] } else { qr[0] + PI };
    let next_s = |j: usize| if j + 1 < ns { qs[j + 1] } else { qs[0] + PI };
    let (mut i, mut j) = (0, 0);
    while i < nr || j < ns {
        if j == ns || (i < nr && next_r(i) <= next_s(j)) {
            faces.push([r[(i + 1) % nr], r[i], s[j % ns]]);
            i += 1;
        } else {
            faces.push([s[j], s[(j + 1) % ns], r[i % nr]]);
            j += 1;
        }
    }
}

/// Rotate a ring to start at its smallest progress mod `π`; returns the
/// vertex ids and non-decreasing-in-the-large progress values starting in
/// `[0, π)`.
fn unwrap_ring(ring: &[(usize, f64)]) -> (Vec<usize>, Vec<f64>) {
    let n = ring.len();
    let start = (0..n)
        .min_by(|&a, &b| ring[a].1.rem_euclid(PI).total_cmp(&ring[b].1.rem_euclid(PI)))
        .unwrap_or(0);
    let base = ring[start].1;
    let offset = base.rem_euclid(PI);
    let ids = (0..n).map(|k| ring[(start + k) % n].0).collect();
    let prog = (0..n)
        .map(|k| {
            let idx = (start + k) % n;
            let wrap = if start + k >= n { PI } else { 0.0 };
            ring[idx].1 + wrap - base + offset
        })
        .collect();
    (ids, prog)
}
