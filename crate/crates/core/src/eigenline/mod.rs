//! The eigenline manifold of a symmetric section over the sphere.
//!
//! Away from the multiplicity points the two eigenlines of `s(x)` form a
//! trivial double cover: two copies of the sphere with small disks removed,
//! carrying the lower and upper eigenvalue. Over each multiplicity point the
//! fiber is the whole circle of lines, so the two sheets are joined by a
//! cylinder `P(E_p) × [−ε, ε]`. Sheet-boundary vertices are attached to the
//! cylinder at the angle of their eigenline, which winds once around the
//! circle of lines exactly when the point is a transversal zero.

mod build;
mod critical;

use serde::Serialize;

use crate::error::Result;
use crate::mesh::{self, Vec3};

pub use build::{build_eigenline_manifold, EigenlineOptions};
pub use critical::{critical_scan, ds_r_norm, CriticalPoint, CriticalReport, NecessaryCondition};

/// Which part of the glued surface a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    Sheet1,
    Sheet2,
    Cylinder(usize),
}

impl Region {
    pub fn label(&self) -> String {
        match self {
            Region::Sheet1 => "sheet1".into(),
            Region::Sheet2 => "sheet2".into(),
            Region::Cylinder(i) => format!("cyl_{i}"),
        }
    }
}

/// A triangulated surface with per-vertex region tags.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vec3>,
    pub regions: Vec<Region>,
    pub faces: Vec<[usize; 3]>,
    /// Boundary loops (empty once glued).
    pub boundary_loops: Vec<Vec<usize>>,
}

impl SurfaceMesh {
    /// `χ = V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        mesh::euler_characteristic(self.vertices.len(), &self.faces)
    }

    /// Genus of the closed, connected, orientable surface.
    pub fn genus(&self) -> Result<i64> {
        mesh::genus(self.vertices.len(), &self.faces)
    }

    pub fn connected_components(&self) -> usize {
        mesh::connected_components(self.vertices.len(), &self.faces)
    }

    /// Face region: the region of its first non-sheet vertex, else of its
    /// first vertex.
    pub fn face_region(&self, f: &[usize; 3]) -> Region {
        f.iter()
            .map(|&v| self.regions[v])
            .find(|r| matches!(r, Region::Cylinder(_)))
            .unwrap_or(self.regions[f[0]])
    }
}

/// Data attached to one cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct Cylinder {
    /// The multiplicity point.
    pub point: Vec3,
    /// Vertices of the core circle `t = 0`.
    pub core: Vec<usize>,
    /// Sheet-1 and sheet-2 boundary loops glued to this cylinder.
    pub sheet1_loop: Vec<usize>,
    pub sheet2_loop: Vec<usize>,
    /// Lifted change of the lower eigenline angle along the sheet-1 loop, in
    /// half-turns (`±1` for a transversal zero).
    pub half_turns: f64,
    /// Half-trace of the section at the point.
    pub s_r: f64,
}

/// The glued eigenline surface with the values of `λ_s` and `λ_{s₀}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenlineManifold {
    pub mesh: SurfaceMesh,
    /// Unit direction of the base point under each vertex.
    pub base_points: Vec<Vec3>,
    /// Eigenline angle represented by each vertex, in the frame of its base
    /// point (sheets) or of the multiplicity point (cylinders).
    pub line_angles: Vec<f64>,
    pub lambda: Vec<f64>,
    pub lambda0: Vec<f64>,
    pub cylinders: Vec<Cylinder>,
}

impl EigenlineManifold {
    pub fn euler_characteristic(&self) -> i64 {
        self.mesh.euler_characteristic()
    }

    pub fn genus(&self) -> Result<i64> {
        self.mesh.genus()
    }

    /// Values of `λ_s` per vertex.
    pub fn lambda_field(&self) -> &[f64] {
        &self.lambda
    }

    /// Values of `λ_{s₀}` per vertex: `−‖s₀‖` on sheet 1, `+‖s₀‖` on sheet 2,
    /// interpolated through the collars and zero on the cores.
    pub fn lambda0_field(&self) -> &[f64] {
        &self.lambda0
    }

    /// Wavefront OBJ; faces grouped as `sheet1`, `sheet2`, `cyl_i`.
    pub fn to_obj(&self) -> String {
        let mut out = String::from("o eigenline\n");
        crate::fresnel::write_vertices(&mut out, &self.mesh.vertices);
        let mut groups: Vec<(Region, Vec<&[usize; 3]>)> = Vec::new();
        for f in &self.mesh.faces {
            let r = self.mesh.face_region(f);
            match groups.iter_mut().find(|(g, _)| *g == r) {
                Some((_, list)) => list.push(f),
                None => groups.push((r, vec![f])),
            }
        }
        groups.sort_by_key(|(r, _)| match r {
            Region::Sheet1 => (0, 0),
            Region::Sheet2 => (1, 0),
            Region::Cylinder(i) => (2, *i),
        });
        for (r, faces) in groups {
            out.push_str(&format!("g {}\n", r.label()));
            for f in faces {
                out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
            }
        }
        out
    }
}

/// Summary written by the `eigenline` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenlineReport {
    pub chi: i64,
    pub genus: Option<i64>,
    pub cylinders: usize,
    pub criticals: Vec<CriticalPoint>,
    pub necessary_condition: Vec<NecessaryCondition>,
}

pub fn eigenline_report<S: crate::section::SymmetricSection>(
    manifold: &EigenlineManifold,
    section: &S,
) -> Result<EigenlineReport> {
    let scan = critical_scan(manifold, section)?;
    Ok(EigenlineReport {
        chi: manifold.euler_characteristic(),
        genus: manifold.genus().ok(),
        cylinders: manifold.cylinders.len(),
        criticals: scan.criticals,
        necessary_condition: scan.necessary_condition,
    })
}
