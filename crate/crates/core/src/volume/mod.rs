//! Regular scalar grids and the global cell/edge/face keys used to weld
//! geometry between neighbouring cubes.

mod generate;
mod raw;
mod slices;

pub use generate::{gen_shell, gen_sphere, gen_two_spheres, mc_example, Generator, Sphere};
pub use raw::{
    decode_raw, encode_raw, load_raw, read_descriptor, write_raw, Endianness, RawDescriptor,
    ValueKind,
};
pub use slices::{decode_slice, load_slices};

use serde::{Deserialize, Serialize};

use crate::cube::{CORNER_OFFSETS, CubeEdge, CubeFace};
use crate::error::{Error, Result};

/// A position in physical space.
pub type Point3 = [f64; 3];

/// Coordinate axis of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

/// Cell coordinates of a cube: the grid point with minimal coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeIndex(pub [usize; 3]);

impl CubeIndex {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        CubeIndex([i, j, k])
    }

    /// Grid point of local corner `corner`.
    pub fn corner_point(self, corner: usize) -> [usize; 3] {
        let o = CORNER_OFFSETS[corner];
        [self.0[0] + o[0], self.0[1] + o[1], self.0[2] + o[2]]
    }

    pub fn edge_id(self, edge: CubeEdge) -> EdgeId {
        let (a, _) = edge.corners();
        EdgeId {
            origin: self.corner_point(a),
            axis: edge.axis(),
        }
    }

    pub fn face_id(self, face: CubeFace) -> FaceId {
        let mut origin = self.0;
        origin[face.axis().index()] += face.side();
        FaceId {
            origin,
            normal: face.axis(),
        }
    }

    /// The local edge of this cube with global key `e`, if it has one.
    pub fn local_edge(self, e: EdgeId) -> Option<CubeEdge> {
        let a = e.axis.index();
        let mut corner = 0;
        for k in 0..3 {
            let d = e.origin[k].checked_sub(self.0[k])?;
            if d > 1 || (k == a && d != 0) {
                return None;
            }
            corner |= d << k;
        }
        CubeEdge::between(corner, corner | 1 << a)
    }

    /// The local face of this cube with global key `f`, if it has one.
    pub fn local_face(self, f: FaceId) -> Option<CubeFace> {
        let n = f.normal.index();
        let side = f.origin[n].checked_sub(self.0[n])?;
        let same = (0..3).all(|k| k == n || f.origin[k] == self.0[k]);
        (same && side <= 1).then(|| CubeFace::new(n, side))
    }

    /// The cube across `face`, if it lies inside `v`.
    pub fn neighbour(self, face: CubeFace, v: &Volume) -> Option<CubeIndex> {
        let a = face.axis().index();
        let mut o = self.0;
        if face.side() == 1 {
            o[a] += 1;
        } else {
            o[a] = o[a].checked_sub(1)?;
        }
        let c = CubeIndex(o);
        v.contains_cube(c).then_some(c)
    }
}

/// Canonical key of a grid edge: its lower grid point and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub origin: [usize; 3],
    pub axis: Axis,
}

impl EdgeId {
    pub fn endpoints(self) -> ([usize; 3], [usize; 3]) {
        let mut b = self.origin;
        b[self.axis.index()] += 1;
        (self.origin, b)
    }

    /// Whether this edge lies in `face`.
    pub fn lies_in(self, face: FaceId) -> bool {
        let n = face.normal.index();
        if self.axis == face.normal || self.origin[n] != face.origin[n] {
            return false;
        }
        (0..3).filter(|&a| a != n).all(|a| {
            if a == self.axis.index() {
                self.origin[a] == face.origin[a]
            } else {
                self.origin[a] == face.origin[a] || self.origin[a] == face.origin[a] + 1
            }
        })
    }
}

/// Canonical key of a grid face: its lower grid point and normal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId {
    pub origin: [usize; 3],
    pub normal: Axis,
}

impl FaceId {
    /// The cubes on either side of the face, lower one first. Either may be
    /// outside the grid.
    pub fn cubes(self, v: &Volume) -> [Option<CubeIndex>; 2] {
        let n = self.normal.index();
        let upper = v.contains_cube(CubeIndex(self.origin)).then_some(CubeIndex(self.origin));
        let lower = (self.origin[n] > 0)
            .then(|| {
                let mut o = self.origin;
                o[n] -= 1;
                CubeIndex(o)
            })
            .filter(|c| v.contains_cube(*c));
        [lower, upper]
    }
}

/// Regular 3D grid of gray values, x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Volume {
    dims: [usize; 3],
    spacing: [f64; 3],
    values: Vec<f32>,
}

impl Volume {
    pub fn new(dims: [usize; 3], values: Vec<f32>) -> Result<Self> {
        Self::with_spacing(dims, [1.0; 3], values)
    }

    pub fn with_spacing(dims: [usize; 3], spacing: [f64; 3], values: Vec<f32>) -> Result<Self> {
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidVolume(format!(
                "dims {dims:?}: every axis needs at least 2 grid points"
            )));
        }
        let count = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        if count != Some(values.len()) {
            return Err(Error::InvalidVolume(format!(
                "dims {dims:?} need {} values, got {}",
                count.map_or_else(|| "overflowing".to_string(), |c| c.to_string()),
                values.len()
            )));
        }
        if spacing.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidVolume(format!(
                "spacing {spacing:?} must be positive"
            )));
        }
        Ok(Volume {
            dims,
            spacing,
            values,
        })
    }

    /// Builds a volume by evaluating `f` at every grid point.
    pub fn from_fn(dims: [usize; 3], mut f: impl FnMut(usize, usize, usize) -> f32) -> Result<Self> {
        let mut values = Vec::with_capacity(dims.iter().product());
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    values.push(f(x, y, z));
                }
            }
        }
        Self::new(dims, values)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Number of cubes along each axis.
    pub fn cube_dims(&self) -> [usize; 3] {
        [self.dims[0] - 1, self.dims[1] - 1, self.dims[2] - 1]
    }

    pub fn cube_count(&self) -> usize {
        self.cube_dims().iter().product()
    }

    pub fn contains_cube(&self, c: CubeIndex) -> bool {
        let cd = self.cube_dims();
        (0..3).all(|a| c.0[a] < cd[a])
    }

    /// Dense index of a cube, x fastest.
    pub fn cube_offset(&self, c: CubeIndex) -> usize {
        let cd = self.cube_dims();
        c.0[0] + cd[0] * (c.0[1] + cd[1] * c.0[2])
    }

    pub fn cubes(&self) -> impl Iterator<Item = CubeIndex> + '_ {
        let cd = self.cube_dims();
        (0..cd[2]).flat_map(move |k| {
            (0..cd[1]).flat_map(move |j| (0..cd[0]).map(move |i| CubeIndex([i, j, k])))
        })
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f32 {
        self.values[x + self.dims[0] * (y + self.dims[1] * z)]
    }

    #[inline]
    pub fn at(&self, p: [usize; 3]) -> f32 {
        self.get(p[0], p[1], p[2])
    }

    pub fn position(&self, p: [usize; 3]) -> Point3 {
        [
            p[0] as f64 * self.spacing[0],
            p[1] as f64 * self.spacing[1],
            p[2] as f64 * self.spacing[2],
        ]
    }

    /// Central-difference gradient at a grid point, one-sided on the hull.
    pub fn gradient(&self, p: [usize; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for (a, slot) in g.iter_mut().enumerate() {
            let mut lo = p;
            let mut hi = p;
            if p[a] > 0 {
                lo[a] -= 1;
            }
            if p[a] + 1 < self.dims[a] {
                hi[a] += 1;
            }
            let span = (hi[a] - lo[a]) as f64 * self.spacing[a];
            *slot = (self.at(hi) as f64 - self.at(lo) as f64) / span;
        }
        g
    }

    /// The eight corners of cube `c` in corner-id order, as (position, value).
    pub fn cube_corners(&self, c: CubeIndex) -> Result<[(Point3, f32); 8]> {
        if !self.contains_cube(c) {
            return Err(Error::CubeOutOfRange(c.0));
        }
        Ok(std::array::from_fn(|n| {
            let p = c.corner_point(n);
            (self.position(p), self.at(p))
        }))
    }

    /// Corner values of an in-range cube, without the bounds check.
    pub(crate) fn corner_values(&self, c: CubeIndex) -> [f32; 8] {
        std::array::from_fn(|n| self.at(c.corner_point(n)))
    }

    /// Bitmask of hull planes containing grid point `p`: bit `2*axis` for the
    /// low side, `2*axis + 1` for the high side.
    pub fn hull_planes(&self, p: [usize; 3]) -> u8 {
        let mut m = 0;
        for a in 0..3 {
            if p[a] == 0 {
                m |= 1 << (2 * a);
            }
            if p[a] + 1 == self.dims[a] {
                m |= 1 << (2 * a + 1);
            }
        }
        m
    }

    /// Hull planes containing the whole of edge `e`.
    pub fn edge_hull_planes(&self, e: EdgeId) -> u8 {
        let (a, b) = e.endpoints();
        self.hull_planes(a) & self.hull_planes(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{CubeEdge, CubeFace};

    fn unit() -> Volume {
        Volume::new([2, 2, 2], (0..8).map(|v| v as f32).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Volume::new([1, 2, 2], vec![0.0; 4]).is_err());
        assert!(Volume::new([2, 2, 2], vec![0.0; 7]).is_err());
        assert!(Volume::with_spacing([2, 2, 2], [1.0, 0.0, 1.0], vec![0.0; 8]).is_err());
    }

    #[test]
    fn cube_corners_follow_corner_order() {
        let v = unit();
        let corners = v.cube_corners(CubeIndex::new(0, 0, 0)).unwrap();
        for (n, (pos, val)) in corners.iter().enumerate() {
            assert_eq!(*val, n as f32);
            assert_eq!(*pos, [(n & 1) as f64, ((n >> 1) & 1) as f64, ((n >> 2) & 1) as f64]);
        }
        assert!(matches!(
            v.cube_corners(CubeIndex::new(1, 0, 0)),
            Err(Error::CubeOutOfRange(_))
        ));
    }

    #[test]
    fn spacing_scales_positions() {
        let v = Volume::with_spacing([2, 2, 2], [2.0, 1.0, 1.0], vec![0.0; 8]).unwrap();
        let corners = v.cube_corners(CubeIndex::new(0, 0, 0)).unwrap();
        assert_eq!(corners[1].0, [2.0, 0.0, 0.0]);
        assert_eq!(corners[7].0, [2.0, 1.0, 1.0]);
    }

    #[test]
    fn adjacent_cubes_share_corner_positions() {
        let v = Volume::new([3, 2, 2], vec![0.0; 12]).unwrap();
        let a = v.cube_corners(CubeIndex::new(0, 0, 0)).unwrap();
        let b = v.cube_corners(CubeIndex::new(1, 0, 0)).unwrap();
        for (hi, lo) in [(1, 0), (3, 2), (5, 4), (7, 6)] {
            assert_eq!(a[hi].0, b[lo].0);
        }
    }

    #[test]
    fn neighbours_agree_on_shared_keys() {
        let v = Volume::new([4, 4, 4], vec![0.0; 64]).unwrap();
        for c in v.cubes() {
            for face in CubeFace::ALL {
                let fid = c.face_id(face);
                let [lo, hi] = fid.cubes(&v);
                let other = if face.side() == 0 { lo } else { hi };
                let Some(other) = other else { continue };
                assert_ne!(other, c);
                let back = other.face_id(face.opposite());
                assert_eq!(back, fid);
                // every edge of the shared face keys identically from both cubes
                for e in face.edges() {
                    let mine = c.edge_id(e);
                    assert!(mine.lies_in(fid));
                    let theirs = face
                        .opposite()
                        .edges()
                        .into_iter()
                        .map(|e2| other.edge_id(e2))
                        .find(|id| *id == mine);
                    assert!(theirs.is_some());
                }
            }
            for e in CubeEdge::all() {
                let id = c.edge_id(e);
                let (a, b) = id.endpoints();
                let (ca, cb) = e.corners();
                assert_eq!(a, c.corner_point(ca));
                assert_eq!(b, c.corner_point(cb));
            }
        }
    }

    #[test]
    fn local_keys_invert_global_keys() {
        let v = Volume::new([4, 4, 4], vec![0.0; 64]).unwrap();
        for c in v.cubes() {
            for e in CubeEdge::all() {
                assert_eq!(c.local_edge(c.edge_id(e)), Some(e));
            }
            for f in CubeFace::ALL {
                assert_eq!(c.local_face(c.face_id(f)), Some(f));
                if let Some(n) = c.neighbour(f, &v) {
                    assert_eq!(n.face_id(f.opposite()), c.face_id(f));
                    assert_eq!(n.local_face(c.face_id(f)), Some(f.opposite()));
                }
            }
        }
        let far = CubeIndex([2, 2, 2]);
        assert_eq!(far.local_edge(CubeIndex([0, 0, 0]).edge_id(CubeEdge(0))), None);
        assert_eq!(CubeIndex([0, 0, 0]).neighbour(CubeFace::new(0, 0), &v), None);
    }

    #[test]
    fn hull_planes_of_edges() {
        let v = Volume::new([3, 3, 3], vec![0.0; 27]).unwrap();
        let e = EdgeId { origin: [0, 0, 1], axis: Axis::X };
        assert_eq!(v.edge_hull_planes(e), 0b000100);
        let inner = EdgeId { origin: [1, 1, 1], axis: Axis::Z };
        assert_eq!(v.edge_hull_planes(inner), 0);
    }
}
