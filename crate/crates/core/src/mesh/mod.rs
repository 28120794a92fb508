//! Indexed triangle meshes, topology checks and export.

mod io;
mod topology;
mod weld;

pub use io::{parse_obj, read_obj, to_obj_string, to_stl_bytes, write_obj, write_stl_binary};
pub use topology::{connected_components, topology_report, TopologyReport};
pub use weld::weld;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::volume::Point3;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<Point3>,
    normals: Option<Vec<[f64; 3]>>,
    /// Hull planes each vertex lies on, see [`crate::volume::Volume::hull_planes`].
    hull: Option<Vec<u8>>,
    triangles: Vec<[u32; 3]>,
}

impl TriangleMesh {
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[u32; 3]>) -> Result<Self> {
        let n = vertices.len() as u64;
        for (i, t) in triangles.iter().enumerate() {
            if t.iter().any(|&v| v as u64 >= n) {
                return Err(Error::InvalidVolume(format!(
                    "triangle {i} {t:?} references a vertex beyond {n}"
                )));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::InvalidVolume(format!("triangle {i} {t:?} is degenerate")));
            }
        }
        Ok(TriangleMesh {
            vertices,
            normals: None,
            hull: None,
            triangles,
        })
    }

    pub(crate) fn from_parts(
        vertices: Vec<Point3>,
        normals: Option<Vec<[f64; 3]>>,
        hull: Option<Vec<u8>>,
        triangles: Vec<[u32; 3]>,
    ) -> Self {
        debug_assert!(normals.as_ref().is_none_or(|n| n.len() == vertices.len()));
        debug_assert!(hull.as_ref().is_none_or(|h| h.len() == vertices.len()));
        TriangleMesh {
            vertices,
            normals,
            hull,
            triangles,
        }
    }

    pub fn with_normals(mut self, normals: Vec<[f64; 3]>) -> Result<Self> {
        if normals.len() != self.vertices.len() {
            return Err(Error::InvalidVolume("one normal per vertex required".into()));
        }
        self.normals = Some(normals);
        Ok(self)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn normals(&self) -> Option<&[[f64; 3]]> {
        self.normals.as_deref()
    }

    pub fn hull_planes(&self) -> Option<&[u8]> {
        self.hull.as_deref()
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|i| self.vertices[i as usize]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let n = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
    }

    /// Keeps only the listed triangles and the vertices they use, preserving
    /// relative order of both.
    pub fn subset(&self, triangles: &[usize]) -> TriangleMesh {
        let mut used = vec![false; self.vertices.len()];
        for &t in triangles {
            for v in self.triangles[t] {
                used[v as usize] = true;
            }
        }
        let mut remap = vec![u32::MAX; self.vertices.len()];
        let mut next = 0u32;
        for (i, u) in used.iter().enumerate() {
            if *u {
                remap[i] = next;
                next += 1;
            }
        }
        let pick = |i: usize| used[i];
        let vertices = self.vertices.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, v)| *v).collect();
        let normals = self.normals.as_ref().map(|ns| {
            ns.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, n)| *n).collect()
        });
        let hull = self.hull.as_ref().map(|hs| {
            hs.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, h)| *h).collect()
        });
        let tris = triangles
            .iter()
            .map(|&t| self.triangles[t].map(|v| remap[v as usize]))
            .collect();
        TriangleMesh::from_parts(vertices, normals, hull, tris)
    }
}

/// Counts and extent of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshStats {
    pub triangles: usize,
    pub vertices: usize,
    pub area: f64,
    /// `(min, max)` over vertices referenced by triangles; `None` when empty.
    pub bbox: Option<(Point3, Point3)>,
}

pub fn area_and_count_stats(mesh: &TriangleMesh) -> MeshStats {
    let area = (0..mesh.triangle_count()).map(|t| mesh.triangle_area(t)).sum();
    let mut bbox: Option<(Point3, Point3)> = None;
    for t in mesh.triangles() {
        for &v in t {
            let p = mesh.vertices()[v as usize];
            let (lo, hi) = bbox.get_or_insert((p, p));
            for a in 0..3 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
    }
    MeshStats {
        triangles: mesh.triangle_count(),
        vertices: mesh.vertex_count(),
        area,
        bbox,
    }
}
