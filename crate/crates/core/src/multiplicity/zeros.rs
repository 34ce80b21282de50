//! Signed count of transversal zeros of the traceless part of a section.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::{TriMesh, Vec3};
use crate::section::SymmetricSection;

/// Boundary samples per mesh edge when winding around a face.
const EDGE_SAMPLES: usize = 8;

/// Total and per-face degrees of the traceless part `(p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCount {
    pub total: i64,
    /// `(face, degree)` for every face whose boundary winds.
    pub local: Vec<(usize, i64)>,
}

/// Sum of local degrees of `(p, q)` over the faces of `mesh`.
///
/// Each face is traversed along its boundary in a fiber frame anchored at the
/// face centroid; the winding of `p + iq` is the signed number of zeros
/// inside. Fails with [`Error::ZeroOnVertex`] when `(p, q)` vanishes on a mesh
/// vertex.
pub fn signed_zero_count<S: SymmetricSection>(mesh: &TriMesh, section: &S) -> Result<ZeroCount> {
    let norms: Vec<f64> = mesh
        .vertices
        .par_iter()
        .map(|v| section.value(v).traceless_norm())
        .collect();
    let max = norms.iter().fold(0.0_f64, |m, &v| m.max(v));
    if let Some(v) = norms.iter().position(|&n| n <= 1e-12 * max || n == 0.0) {
        return Err(Error::ZeroOnVertex(v));
    }
    let degrees: Vec<i64> = mesh.faces.par_iter().map(|f| face_degree(mesh, f, section)).collect();
    let local: Vec<(usize, i64)> = degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| (i, d))
        .collect();
    Ok(ZeroCount {
        total: degrees.iter().sum(),
        local,
    })
}

fn face_degree<S: SymmetricSection>(mesh: &TriMesh, face: &[usize; 3], section: &S) -> i64 {
    let corners: Vec<Vec3> = face.iter().map(|&i| mesh.vertices[i]).collect();
    let anchor = (corners[0] + corners[1] + corners[2]) / 3.0;
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    let mut first = 0.0;
    for k in 0..3 {
        let a = corners[k];
        let b = corners[(k + 1) % 3];
        for s in 0..EDGE_SAMPLES {
            let x = a + (b - a) * (s as f64 / EDGE_SAMPLES as f64);
            let arg = section.value_near(&anchor, &x).traceless_complex().arg();
            match prev {
                Some(p) => total += wrap(arg - p),
                None => first = arg,
            }
            prev = Some(arg);
        }
    }
    if let Some(p) = prev {
        total += wrap(first - p);
    }
    (total / TAU).round() as i64
}

fn wrap(d: f64) -> f64 {
    (d + PI).rem_euclid(TAU) - PI
}
