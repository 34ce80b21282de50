//! Triangle meshes: icospheres, planar grids and the combinatorial checks
//! (closedness, orientation, connectivity, Euler characteristic) used by the
//! eigenline construction.

use std::collections::{BTreeMap, HashMap};

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// An indexed triangle mesh. Faces are counter-clockwise with respect to the
/// outward normal (or the `+z` direction for planar meshes).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Unit icosphere obtained by `level` rounds of midpoint subdivision of the
    /// icosahedron. Vertex order is deterministic.
    pub fn icosphere(level: u32) -> TriMesh {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, phi, 0.0],
            [1.0, phi, 0.0],
            [-1.0, -phi, 0.0],
            [1.0, -phi, 0.0],
            [0.0, -1.0, phi],
            [0.0, 1.0, phi],
            [0.0, -1.0, -phi],
            [0.0, 1.0, -phi],
            [phi, 0.0, -1.0],
            [phi, 0.0, 1.0],
            [-phi, 0.0, -1.0],
            [-phi, 0.0, 1.0],
        ];
        let mut vertices: Vec<Vec3> = raw.iter().map(|v| Vec3::new(v[0], v[1], v[2]).normalize()).collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..level {
            let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
            let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vec3>| -> usize {
                let key = (a.min(b), a.max(b));
                *cache.entry(key).or_insert_with(|| {
                    vertices.push((vertices[a] + vertices[b]).normalize());
                    vertices.len() - 1
                })
            };
            let mut next = Vec::with_capacity(faces.len() * 4);
            for &[a, b, c] in &faces {
                let ab = midpoint(a, b, &mut vertices);
                let bc = midpoint(b, c, &mut vertices);
                let ca = midpoint(c, a, &mut vertices);
                next.push([a, ab, ca]);
                next.push([b, bc, ab]);
                next.push([c, ca, bc]);
                next.push([ab, bc, ca]);
            }
            faces = next;
        }
        TriMesh { vertices, faces }
    }

    /// Triangulated rectangle `[x0, x1] × [y0, y1]` in the `z = 0` plane with
    /// `nx × ny` cells.
    pub fn planar_grid(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> TriMesh {
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                let x = x0 + (x1 - x0) * i as f64 / nx as f64;
                let y = y0 + (y1 - y0) * j as f64 / ny as f64;
                vertices.push(Vec3::new(x, y, 0.0));
            }
        }
        let id = |i: usize, j: usize| j * (nx + 1) + i;
        let mut faces = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                faces.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                faces.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        TriMesh { vertices, faces }
    }

    /// Mean edge length.
    pub fn mean_edge_length(&self) -> f64 {
        let edges = self.edge_faces();
        if edges.is_empty() {
            return 0.0;
        }
        let total: f64 = edges
            .keys()
            .map(|&(a, b)| (self.vertices[a] - self.vertices[b]).norm())
            .sum();
        total / edges.len() as f64
    }

    /// Undirected edges mapped to the faces containing them.
    pub fn edge_faces(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        edge_faces(&self.faces)
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(self.vertices.len(), &self.faces)
    }

    /// Vertex adjacency lists, sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.edge_faces().into_keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

pub(crate) fn edge_faces(faces: &[[usize; 3]]) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            map.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    map
}

/// `χ = V − E + F`.
pub fn euler_characteristic(num_vertices: usize, faces: &[[usize; 3]]) -> i64 {
    let e = edge_faces(faces).len();
    num_vertices as i64 - e as i64 + faces.len() as i64
}

/// Every edge lies on exactly two faces.
pub fn is_closed(faces: &[[usize; 3]]) -> bool {
    edge_faces(faces).values().all(|f| f.len() == 2)
}

/// Every directed edge occurs at most once, so adjacent faces induce
/// opposite directions on their shared edge.
pub fn is_consistently_oriented(faces: &[[usize; 3]]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for f in faces {
        for k in 0..3 {
            if !seen.insert((f[k], f[(k + 1) % 3])) {
                return false;
            }
        }
    }
    true
}

/// Number of connected components among the vertices that appear in faces.
pub fn connected_components(num_vertices: usize, faces: &[[usize; 3]]) -> usize {
    let mut parent: Vec<usize> = (0..num_vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut used = vec![false; num_vertices];
    for f in faces {
        for &v in f {
            used[v] = true;
        }
        for k in 1..3 {
            let (ra, rb) = (find(&mut parent, f[0]), find(&mut parent, f[k]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    (0..num_vertices)
        .filter(|&v| used[v] && find(&mut parent, v) == v)
        .count()
}

/// Genus of a closed, connected, orientable triangulated surface.
pub fn genus(num_vertices: usize, faces: &[[usize; 3]]) -> Result<i64> {
    if !is_closed(faces) {
        return Err(Error::NotClosed);
    }
    let comps = connected_components(num_vertices, faces);
    if comps != 1 {
        return Err(Error::NotConnected(comps));
    }
    if !is_consistently_oriented(faces) {
        return Err(Error::NotManifold);
    }
    Ok((2 - euler_characteristic(num_vertices, faces)) / 2)
}

/// Boundary loops of an oriented surface with boundary. Each loop follows the
/// direction induced by its adjacent face. Fails with `NotManifold` when a
/// boundary vertex is pinched.
pub fn boundary_loops(faces: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    let edges = edge_faces(faces);
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    for f in faces {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            if edges[&(a.min(b), a.max(b))].len() == 1 && next.insert(a, b).is_some() {
                return Err(Error::NotManifold);
            }
        }
    }
    let mut loops = Vec::new();
    let mut visited = std::collections::BTreeSet::new();
    for &start in next.keys() {
        if visited.contains(&start) {
            continue;
        }
        let mut lp = vec![start];
        visited.insert(start);
        let mut cur = next[&start];
        while cur != start {
            if !visited.insert(cur) {
                return Err(Error::NotManifold);
            }
            lp.push(cur);
            cur = *next.get(&cur).ok_or(Error::NotManifold)?;
        }
        loops.push(lp);
    }
    Ok(loops)
}

/// Cyclically ordered link (one-ring) of every vertex of a closed, oriented
/// manifold mesh.
pub fn vertex_links(num_vertices: usize, faces: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    // for vertex v, each face (v, a, b) contributes the arc a -> b
    let mut arcs: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); num_vertices];
    for f in faces {
        for k in 0..3 {
            let (v, a, b) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
            if arcs[v].insert(a, b).is_some() {
                return Err(Error::NotManifold);
            }
        }
    }
    let mut links = Vec::with_capacity(num_vertices);
    for arc in arcs {
        let Some((&start, _)) = arc.iter().next() else {
            links.push(Vec::new());
            continue;
        };
        let mut ring = vec![start];
        let mut cur = *arc.get(&start).ok_or(Error::NotManifold)?;
        while cur != start {
            ring.push(cur);
            if ring.len() > arc.len() {
                return Err(Error::NotManifold);
            }
            cur = *arc.get(&cur).ok_or(Error::NotClosed)?;
        }
        if ring.len() != arc.len() {
            return Err(Error::NotManifold);
        }
        links.push(ring);
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_counts() {
        for level in 0..4 {
            let m = TriMesh::icosphere(level);
            let f = 20 * 4usize.pow(level);
            assert_eq!(m.faces.len(), f);
            assert_eq!(m.vertices.len(), 10 * 4usize.pow(level) + 2);
            assert_eq!(m.euler_characteristic(), 2);
            assert!(is_closed(&m.faces));
            assert!(is_consistently_oriented(&m.faces));
            assert_eq!(genus(m.vertices.len(), &m.faces), Ok(0));
            for v in &m.vertices {
                assert!((v.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn icosphere_faces_point_outward() {
        let m = TriMesh::icosphere(1);
        for &[a, b, c] in &m.faces {
            let (va, vb, vc) = (m.vertices[a], m.vertices[b], m.vertices[c]);
            assert!((vb - va).cross(&(vc - va)).dot(&(va + vb + vc)) > 0.0);
        }
    }

    #[test]
    fn two_spheres_are_disconnected() {
        let m = TriMesh::icosphere(1);
        let n = m.vertices.len();
        let mut faces = m.faces.clone();
        faces.extend(m.faces.iter().map(|f| [f[0] + n, f[1] + n, f[2] + n]));
        assert_eq!(euler_characteristic(2 * n, &faces), 4);
        assert_eq!(genus(2 * n, &faces), Err(Error::NotConnected(2)));
    }

    #[test]
    fn planar_grid_has_one_boundary_loop() {
        let m = TriMesh::planar_grid(0.0, 1.0, 0.0, 1.0, 3, 2);
        assert_eq!(m.euler_characteristic(), 1);
        let loops = boundary_loops(&m.faces).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].len(), 10);
        assert_eq!(genus(m.vertices.len(), &m.faces), Err(Error::NotClosed));
    }

    #[test]
    fn links_are_cycles() {
        let m = TriMesh::icosphere(2);
        let links = vertex_links(m.vertices.len(), &m.faces).unwrap();
        let nbrs = m.neighbors();
        for (v, ring) in links.iter().enumerate() {
            let mut sorted = ring.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, nbrs[v]);
        }
    }
}
