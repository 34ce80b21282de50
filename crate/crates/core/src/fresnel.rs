//! Biaxial crystals: the Maxwell symbol, the compressed 2×2 operator on
//! tangent planes, Fresnel sheets and the four singular directions.

use std::f64::consts::TAU;

use nalgebra::{Matrix3, Matrix6, Vector3};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{TriMesh, Vec3};
use crate::section::{compress, tangent_frame, SymmetricSection, TangentSection};
use crate::sym2::Sym2Value;

/// Target for `‖s₀‖` at a refined singular direction.
pub const SINGULAR_RESIDUAL: f64 = 1e-10;

/// Principal dielectric constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crystal {
    pub eps: [f64; 3],
}

impl Crystal {
    pub fn new(eps1: f64, eps2: f64, eps3: f64) -> Result<Self> {
        let eps = [eps1, eps2, eps3];
        if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "dielectric constants must be positive, got {eps:?}"
            )));
        }
        Ok(Self { eps })
    }

    pub fn isotropic() -> Self {
        Self { eps: [1.0; 3] }
    }

    /// True when the three constants are pairwise distinct.
    pub fn is_biaxial(&self) -> bool {
        let [a, b, c] = self.eps;
        let tol = 1e-12 * a.max(b).max(c);
        (a - b).abs() > tol && (b - c).abs() > tol && (a - c).abs() > tol
    }

    pub fn eps_inv(&self) -> Matrix3<f64> {
        Matrix3::from_diagonal(&Vector3::new(1.0 / self.eps[0], 1.0 / self.eps[1], 1.0 / self.eps[2]))
    }

    /// The section `x ↦ s(x)` of symmetric operators on tangent planes.
    pub fn section(&self) -> TangentSection<impl Fn(&Vec3) -> Matrix3<f64> + Sync> {
        let a = self.eps_inv();
        TangentSection::new(move |_: &Vec3| a)
    }
}

/// Maxwell symbol `σ(ξ)(E, B) = (ξ × B, −ξ × (ε⁻¹E))`.
pub fn maxwell_apply(crystal: &Crystal, xi: &Vec3, e: &Vec3, b: &Vec3) -> (Vec3, Vec3) {
    (xi.cross(b), -xi.cross(&(crystal.eps_inv() * e)))
}

fn cross_matrix(v: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// The 6×6 matrix of `σ(ξ)` acting on `(E, B)`.
pub fn maxwell_matrix(crystal: &Crystal, xi: &Vec3) -> Matrix6<f64> {
    let x = cross_matrix(xi);
    let lower = -x * crystal.eps_inv();
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(&x);
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(&lower);
    m
}

/// `det(τI + σ(ξ))` by LU factorization.
pub fn maxwell_char_det(crystal: &Crystal, xi: &Vec3, tau: f64) -> f64 {
    (Matrix6::identity() * tau + maxwell_matrix(crystal, xi)).determinant()
}

/// Positive roots of `det(τI + σ(ξ))`, sorted.
///
/// The determinant is even in `τ` with a double root at `0`, so it equals
/// `τ² q(τ²)` for a quadratic `q`. The quadratic is recovered from three
/// determinant samples and its roots are polished by bisection when they
/// are bracketed.
pub fn maxwell_char_roots(crystal: &Crystal, xi: &Vec3) -> Vec<f64> {
    let q = |mu: f64| maxwell_char_det(crystal, xi, mu.sqrt()) / mu;
    let scale = crystal.eps_inv().diagonal().max() * xi.norm_squared();
    let mus = [0.5 * scale, scale, 2.0 * scale];
    let vals = mus.map(q);
    // Lagrange form → coefficients of a μ² + b μ + c
    let (x0, x1, x2) = (mus[0], mus[1], mus[2]);
    let l0 = vals[0] / ((x0 - x1) * (x0 - x2));
    let l1 = vals[1] / ((x1 - x0) * (x1 - x2));
    let l2 = vals[2] / ((x2 - x0) * (x2 - x1));
    let a = l0 + l1 + l2;
    let b = -(l0 * (x1 + x2) + l1 * (x0 + x2) + l2 * (x0 + x1));
    let c = l0 * x1 * x2 + l1 * x0 * x2 + l2 * x0 * x1;
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let r1 = (-b - b.signum() * disc.sqrt()) / (2.0 * a);
    let r2 = if r1 != 0.0 { c / (a * r1) } else { -b / a };
    let mut roots: Vec<f64> = [r1, r2]
        .into_iter()
        .filter(|m| *m > 0.0)
        .map(|m| {
            let width = 1e-6 * scale;
            crate::roots::bisect(q, m - width, m + width, 0.0).unwrap_or(m).sqrt()
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// `[⟨ε⁻¹tᵢ, tⱼ⟩]` in the deterministic tangent frame at `x`.
pub fn compressed_operator(crystal: &Crystal, x: &Vec3) -> Sym2Value {
    let x = x.normalize();
    let (t1, t2) = tangent_frame(&x);
    compress(&crystal.eps_inv(), &t1, &t2)
}

/// Both Fresnel points over a direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FresnelSample {
    pub xi: [f64; 3],
    pub lam1: f64,
    pub lam2: f64,
    pub points: [[f64; 3]; 2],
}

/// Points `√λ₁ ξ` and `√λ₂ ξ` with `λ₁ ≤ λ₂` the eigenvalues of the
/// compressed operator.
pub fn fresnel_sample(crystal: &Crystal, xi: &Vec3) -> FresnelSample {
    let x = xi.normalize();
    let (lam1, lam2) = compressed_operator(crystal, &x).eigenvalues();
    let p = |l: f64| (x * l.sqrt()).into();
    FresnelSample {
        xi: x.into(),
        lam1,
        lam2,
        points: [p(lam1), p(lam2)],
    }
}

/// A zero of the traceless part `s₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularDirection {
    pub x: [f64; 3],
    pub residual: f64,
    /// Degree of `s₀` around the point.
    pub index: i64,
}

fn s0_norm(crystal: &Crystal, x: &Vec3) -> f64 {
    compressed_operator(crystal, x).traceless_norm()
}

/// The four directions where the two Fresnel sheets meet.
///
/// Seeds are the local minima of `‖s₀‖` over a level-2 icosphere. Each seed
/// is refined by coordinate descent along the tangent frame with step
/// halving, then polished by Newton steps on `s₀ = 0`. Results closer than
/// `1e-3` rad are merged; exactly four must remain.
pub fn singular_directions(crystal: &Crystal) -> Result<Vec<SingularDirection>> {
    if !crystal.is_biaxial() {
        return Err(Error::NotBiaxial);
    }
    let seeds = TriMesh::icosphere(2);
    let values: Vec<f64> = seeds.vertices.iter().map(|v| s0_norm(crystal, v)).collect();
    let nbrs = seeds.neighbors();
    let h0 = seeds.mean_edge_length();
    let mut found: Vec<Vec3> = Vec::new();
    for (i, v) in seeds.vertices.iter().enumerate() {
        if nbrs[i]
            .iter()
            .any(|&j| values[j] < values[i] || (values[j] == values[i] && j < i))
        {
            continue;
        }
        let x = newton_polish(crystal, descend(crystal, *v, h0));
        if !found.iter().any(|y| y.dot(&x) > (1e-3_f64).cos()) {
            found.push(x);
        }
    }
    if found.len() != 4 {
        return Err(Error::SearchFailed(format!(
            "{} distinct minima instead of 4",
            found.len()
        )));
    }
    found.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(a.z.total_cmp(&b.z)));
    let section = crystal.section();
    let mut out = Vec::with_capacity(4);
    for x in found {
        let residual = s0_norm(crystal, &x);
        if residual > SINGULAR_RESIDUAL {
            return Err(Error::SearchFailed(format!("residual {residual:e} at {x:?}")));
        }
        out.push(SingularDirection {
            x: x.into(),
            residual,
            index: local_degree(&section, &x, 1e-3, 64),
        });
    }
    Ok(out)
}

fn descend(crystal: &Crystal, mut x: Vec3, h0: f64) -> Vec3 {
    let mut f = s0_norm(crystal, &x);
    let mut step = h0;
    for _ in 0..200 {
        if f <= SINGULAR_RESIDUAL || step < 1e-14 {
            break;
        }
        let (t1, t2) = tangent_frame(&x);
        let mut improved = false;
        for d in [t1, -t1, t2, -t2] {
            let y = (x + d * step).normalize();
            let fy = s0_norm(crystal, &y);
            if fy < f {
                x = y;
                f = fy;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    x
}

fn newton_polish(crystal: &Crystal, mut x: Vec3) -> Vec3 {
    let section = crystal.section();
    for _ in 0..30 {
        let anchor = x;
        let (t1, t2) = tangent_frame(&anchor);
        let s = |y: &Vec3| {
            let v = section.value_near(&anchor, y);
            (v.p, v.q)
        };
        let (p, q) = s(&x);
        if p.hypot(q) <= 1e-15 {
            break;
        }
        let h = 1e-6;
        let (p1, q1) = s(&(x + t1 * h).normalize());
        let (p2, q2) = s(&(x + t2 * h).normalize());
        let j = nalgebra::Matrix2::new((p1 - p) / h, (p2 - p) / h, (q1 - q) / h, (q2 - q) / h);
        let Some(inv) = j.try_inverse() else { break };
        let d = inv * nalgebra::Vector2::new(-p, -q);
        let y = (x + t1 * d.x + t2 * d.y).normalize();
        if s0_norm(crystal, &y) >= s0_norm(crystal, &x) {
            break;
        }
        x = y;
    }
    x
}

/// Degree of `p + iq` around a circle of angular radius `radius` about `x`.
pub fn local_degree<S: SymmetricSection>(section: &S, x: &Vec3, radius: f64, samples: usize) -> i64 {
    let x = x.normalize();
    let (t1, t2) = tangent_frame(&x);
    let at = |k: usize| {
        let t = TAU * k as f64 / samples as f64;
        let y = x * radius.cos() + (t1 * t.cos() + t2 * t.sin()) * radius.sin();
        section.value_near(&x, &y).traceless_complex().arg()
    };
    let mut total = 0.0;
    let mut prev = at(0);
    for k in 1..=samples {
        let a = at(k % samples);
        total += (a - prev + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI;
        prev = a;
    }
    (total / TAU).round() as i64
}

/// Two Fresnel sheets over a common icosphere of directions.
#[derive(Debug, Clone)]
pub struct FresnelMesh {
    pub directions: TriMesh,
    pub samples: Vec<FresnelSample>,
}

/// Sheets `√λ₁ ξ` (inner) and `√λ₂ ξ` (outer) over a subdivided icosphere.
pub fn fresnel_mesh(crystal: &Crystal, subdivisions: u32) -> Result<FresnelMesh> {
    if subdivisions < 2 {
        return Err(Error::InvalidParameter(
            "fresnel mesh needs at least 2 subdivisions".into(),
        ));
    }
    let directions = TriMesh::icosphere(subdivisions);
    let samples = directions
        .vertices
        .par_iter()
        .map(|v| fresnel_sample(crystal, v))
        .collect();
    Ok(FresnelMesh { directions, samples })
}

impl FresnelMesh {
    pub fn inner(&self) -> Vec<Vec3> {
        self.samples.iter().map(|s| Vec3::from(s.points[0])).collect()
    }

    pub fn outer(&self) -> Vec<Vec3> {
        self.samples.iter().map(|s| Vec3::from(s.points[1])).collect()
    }

    /// Smallest `√λ₂ − √λ₁` over the vertices, with its vertex index.
    pub fn min_sheet_gap(&self) -> (usize, f64) {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.lam2.sqrt() - s.lam1.sqrt()))
            .fold((0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best })
    }

    /// Wavefront OBJ with objects `fresnel_inner` and `fresnel_outer`.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let n = self.samples.len();
        for (k, (name, sheet)) in [("fresnel_inner", self.inner()), ("fresnel_outer", self.outer())]
            .into_iter()
            .enumerate()
        {
            out.push_str(&format!("o {name}\n"));
            write_vertices(&mut out, &sheet);
            for f in &self.directions.faces {
                out.push_str(&format!(
                    "f {} {} {}\n",
                    f[0] + 1 + k * n,
                    f[1] + 1 + k * n,
                    f[2] + 1 + k * n
                ));
            }
        }
        out
    }
}

pub(crate) fn write_vertices(out: &mut String, vs: &[Vec3]) {
    use crate::report::fmt17;
    for v in vs {
        out.push_str(&format!("v {} {} {}\n", fmt17(v.x), fmt17(v.y), fmt17(v.z)));
    }
}

/// Report for one crystal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FresnelReport {
    pub epsilon: [f64; 3],
    pub singular_directions: Vec<SingularDirection>,
    pub min_sheet_gap: f64,
}

pub fn fresnel_report(crystal: &Crystal, mesh: &FresnelMesh) -> Result<FresnelReport> {
    Ok(FresnelReport {
        epsilon: crystal.eps,
        singular_directions: singular_directions(crystal)?,
        min_sheet_gap: mesh.min_sheet_gap().1,
    })
}
