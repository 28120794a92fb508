use serde::Serialize;

use crate::cube::{CubeEdge, CubeFace};
use crate::error::{Error, Result};
use crate::volume::{CubeIndex, EdgeId, FaceId, Point3};

/// A face segment of an extracted patch, queued to continue the surface in
/// the cube on the other side of the face.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEdge {
    /// Endpoint I, then endpoint II.
    pub endpoints: [Point3; 2],
    pub source_edges: [EdgeId; 2],
    /// Interpolated gray-value gradients at the endpoints.
    pub gradients: [[f64; 3]; 2],
    pub shared_face: FaceId,
    pub target_cube: CubeIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthEdgeKind {
    /// Endpoints on two face edges meeting at a corner.
    TriangleEdge,
    /// Endpoints on two opposite face edges.
    QuadrangleEdge,
}

pub fn classify_growth_edge(e: &GrowthEdge) -> Result<GrowthEdgeKind> {
    let [a, b] = e.source_edges;
    if a == b {
        return Err(Error::MalformedEdge(format!("both endpoints on {a:?}")));
    }
    if !a.lies_in(e.shared_face) || !b.lies_in(e.shared_face) {
        return Err(Error::MalformedEdge(format!(
            "{a:?} and {b:?} are not both on face {:?}",
            e.shared_face
        )));
    }
    Ok(if a.axis == b.axis {
        GrowthEdgeKind::QuadrangleEdge
    } else {
        GrowthEdgeKind::TriangleEdge
    })
}

impl GrowthEdge {
    /// The shared face and the source edges as seen from the target cube.
    pub fn local(&self) -> Result<(CubeFace, CubeEdge, CubeEdge)> {
        let c = self.target_cube;
        let face = c.local_face(self.shared_face).ok_or_else(|| {
            Error::MalformedEdge(format!("cube {:?} is not on face {:?}", c.0, self.shared_face))
        })?;
        let local = |e: EdgeId| {
            c.local_edge(e)
                .ok_or_else(|| Error::MalformedEdge(format!("{e:?} is not an edge of cube {:?}", c.0)))
        };
        Ok((face, local(self.source_edges[0])?, local(self.source_edges[1])?))
    }
}
