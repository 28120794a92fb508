//! Accumulates extracted triangles, computing each iso-surface vertex once
//! per global grid edge so that neighbouring cubes weld exactly.

use std::collections::HashMap;

use crate::cube::CubeEdge;
use crate::error::{Error, Result};
use crate::interp::{interp_ratio, lerp, InterpMode};
use crate::mesh::TriangleMesh;
use crate::volume::{CubeIndex, EdgeId, Point3, Volume};

/// Position, interpolated gradient and hull planes of an edge crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeVertex {
    pub position: Point3,
    pub gradient: [f64; 3],
    pub hull: u8,
}

/// Computes the crossing on a global edge, always from its lower endpoint.
pub fn edge_vertex(v: &Volume, e: EdgeId, threshold: f64, mode: &InterpMode) -> Result<EdgeVertex> {
    let (a, b) = e.endpoints();
    let (ha, hb) = (v.at(a) as f64, v.at(b) as f64);
    let k = interp_ratio(ha, hb, threshold)?;
    let t = mode.ratio(k);
    let (ga, gb) = (v.gradient(a), v.gradient(b));
    Ok(EdgeVertex {
        position: lerp(v.position(a), v.position(b), t),
        gradient: lerp(ga, gb, t),
        hull: v.edge_hull_planes(e),
    })
}

pub(crate) struct SurfaceBuilder<'v> {
    volume: &'v Volume,
    threshold: f64,
    mode: InterpMode,
    index: HashMap<EdgeId, u32>,
    vertices: Vec<Point3>,
    normals: Vec<[f64; 3]>,
    hull: Vec<u8>,
    triangles: Vec<[u32; 3]>,
}

impl<'v> SurfaceBuilder<'v> {
    pub fn new(volume: &'v Volume, threshold: f64, mode: InterpMode) -> Self {
        SurfaceBuilder {
            volume,
            threshold,
            mode,
            index: HashMap::new(),
            vertices: Vec::new(),
            normals: Vec::new(),
            hull: Vec::new(),
            triangles: Vec::new(),
        }
    }

    pub fn vertex(&mut self, e: EdgeId) -> Result<u32> {
        if let Some(&i) = self.index.get(&e) {
            return Ok(i);
        }
        let ev = edge_vertex(self.volume, e, self.threshold, &self.mode)?;
        let i = self.vertices.len() as u32;
        self.vertices.push(ev.position);
        // outward normal points down the gradient, towards lower values
        let len = ev.gradient.iter().map(|g| g * g).sum::<f64>().sqrt();
        self.normals.push(if len > 0.0 {
            ev.gradient.map(|g| -g / len)
        } else {
            [0.0; 3]
        });
        self.hull.push(ev.hull);
        self.index.insert(e, i);
        Ok(i)
    }

    pub fn push(&mut self, cube: CubeIndex, tri: [CubeEdge; 3]) -> Result<()> {
        let mut idx = [0u32; 3];
        for (slot, e) in idx.iter_mut().zip(tri) {
            *slot = self.vertex(cube.edge_id(e))?;
        }
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            return Err(Error::Internal(format!("degenerate triangle in cube {:?}", cube.0)));
        }
        self.triangles.push(idx);
        Ok(())
    }

    /// Fans a loop of crossings around a new vertex at their centroid.
    pub fn push_fan(&mut self, cube: CubeIndex, ring: &[CubeEdge]) -> Result<()> {
        let mut idx = Vec::with_capacity(ring.len());
        for e in ring {
            idx.push(self.vertex(cube.edge_id(*e))?);
        }
        let mut center = [0.0; 3];
        let mut normal = [0.0; 3];
        for &i in &idx {
            for a in 0..3 {
                center[a] += self.vertices[i as usize][a] / idx.len() as f64;
                normal[a] += self.normals[i as usize][a];
            }
        }
        let len = normal.iter().map(|g| g * g).sum::<f64>().sqrt();
        let c = self.vertices.len() as u32;
        self.vertices.push(center);
        self.normals.push(if len > 0.0 { normal.map(|g| g / len) } else { [0.0; 3] });
        self.hull.push(0);
        for k in 0..idx.len() {
            self.triangles.push([c, idx[k], idx[(k + 1) % idx.len()]]);
        }
        Ok(())
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn finish(self) -> TriangleMesh {
        TriangleMesh::from_parts(self.vertices, Some(self.normals), Some(self.hull), self.triangles)
    }
}
