//! Local topology of a single cube: corners, edges, faces and the 24
//! proper rotations.
//!
//! Corner `n` sits at offset `(n & 1, (n >> 1) & 1, (n >> 2) & 1)`.
//! Edge `4 * axis + j` runs along `axis`; `j` packs the two remaining
//! offset bits in ascending axis order. Face `2 * axis + side` has normal
//! `axis` and contains the corners whose `axis` bit equals `side`.

use crate::volume::Axis;

pub const CORNER_OFFSETS: [[usize; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [1, 1, 0],
    [0, 0, 1],
    [1, 0, 1],
    [0, 1, 1],
    [1, 1, 1],
];

#[inline]
fn bit(corner: u8, axis: usize) -> u8 {
    (corner >> axis) & 1
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// One of the 12 cube edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeEdge(pub u8);

impl CubeEdge {
    pub fn all() -> impl Iterator<Item = CubeEdge> {
        (0..12).map(CubeEdge)
    }

    pub fn axis(self) -> Axis {
        Axis::from_index(self.0 as usize / 4)
    }

    /// Endpoint corners, lower corner first.
    pub fn corners(self) -> (usize, usize) {
        let axis = self.0 as usize / 4;
        let j = self.0 & 3;
        let (b, c) = other_axes(axis);
        let lo = ((j & 1) << b) | (((j >> 1) & 1) << c);
        (lo as usize, (lo | (1 << axis)) as usize)
    }

    pub fn between(a: usize, b: usize) -> Option<CubeEdge> {
        let diff = (a ^ b) as u8;
        if diff.count_ones() != 1 {
            return None;
        }
        let axis = diff.trailing_zeros() as usize;
        let lo = (a.min(b)) as u8;
        let (b_ax, c_ax) = other_axes(axis);
        let j = bit(lo, b_ax) | (bit(lo, c_ax) << 1);
        Some(CubeEdge((4 * axis) as u8 + j))
    }

    /// The two faces containing this edge.
    pub fn faces(self) -> [CubeFace; 2] {
        let (lo, _) = self.corners();
        let axis = self.0 as usize / 4;
        let (b, c) = other_axes(axis);
        [
            CubeFace::new(b, bit(lo as u8, b) as usize),
            CubeFace::new(c, bit(lo as u8, c) as usize),
        ]
    }

    pub fn common_face(self, other: CubeEdge) -> Option<CubeFace> {
        if self == other {
            return None;
        }
        let theirs = other.faces();
        self.faces().into_iter().find(|f| theirs.contains(f))
    }

    pub fn shared_corner(self, other: CubeEdge) -> Option<usize> {
        let (a0, a1) = self.corners();
        let (b0, b1) = other.corners();
        [a0, a1].into_iter().find(|c| *c == b0 || *c == b1)
    }
}

/// One of the 6 cube faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace(pub u8);

impl CubeFace {
    pub const ALL: [CubeFace; 6] = [
        CubeFace(0),
        CubeFace(1),
        CubeFace(2),
        CubeFace(3),
        CubeFace(4),
        CubeFace(5),
    ];

    pub fn new(axis: usize, side: usize) -> Self {
        CubeFace((2 * axis + side) as u8)
    }

    pub fn axis(self) -> Axis {
        Axis::from_index(self.0 as usize / 2)
    }

    pub fn side(self) -> usize {
        (self.0 & 1) as usize
    }

    pub fn opposite(self) -> CubeFace {
        CubeFace(self.0 ^ 1)
    }

    /// Outward unit normal.
    pub fn normal(self) -> [f64; 3] {
        let mut n = [0.0; 3];
        n[self.axis().index()] = if self.side() == 1 { 1.0 } else { -1.0 };
        n
    }

    /// The four corners in cyclic order around the face.
    pub fn corners(self) -> [usize; 4] {
        let axis = self.axis().index();
        let (b, c) = other_axes(axis);
        let base = self.side() << axis;
        [
            base,
            base | (1 << b),
            base | (1 << b) | (1 << c),
            base | (1 << c),
        ]
    }

    /// The four edges in cyclic order; edge `i` joins corners `i` and `i + 1`.
    pub fn edges(self) -> [CubeEdge; 4] {
        let cs = self.corners();
        std::array::from_fn(|i| CubeEdge::between(cs[i], cs[(i + 1) % 4]).unwrap())
    }

    pub fn contains_corner(self, corner: usize) -> bool {
        (corner >> self.axis().index()) & 1 == self.side()
    }

    pub fn contains_edge(self, e: CubeEdge) -> bool {
        e.faces().contains(&self)
    }
}

/// Corner across the cube from `corner`, reached by the edge normal to `face`.
pub fn across(face: CubeFace, corner: usize) -> usize {
    corner ^ (1 << face.axis().index())
}

/// A proper rotation of the cube, stored as a corner permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rotation(pub [u8; 8]);

impl Rotation {
    pub fn identity() -> Self {
        Rotation([0, 1, 2, 3, 4, 5, 6, 7])
    }

    fn quarter_turn(axis: usize) -> Self {
        // (u, v) -> (1 - v, u) in the plane orthogonal to `axis`
        let (b, c) = other_axes(axis);
        Rotation(std::array::from_fn(|n| {
            let n = n as u8;
            let u = bit(n, b);
            let v = bit(n, c);
            let mut out = n & !((1 << b) | (1 << c));
            out |= (1 - v) << b;
            out |= u << c;
            out
        }))
    }

    pub fn then(self, next: Rotation) -> Rotation {
        Rotation(std::array::from_fn(|n| next.0[self.0[n] as usize]))
    }

    /// All 24 proper rotations, identity first.
    pub fn all() -> Vec<Rotation> {
        let gens = [0, 1, 2].map(Rotation::quarter_turn);
        let mut out = vec![Rotation::identity()];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let r = out[i].then(g);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
            i += 1;
        }
        out
    }

    pub fn corner(self, c: usize) -> usize {
        self.0[c] as usize
    }

    pub fn edge(self, e: CubeEdge) -> CubeEdge {
        let (a, b) = e.corners();
        CubeEdge::between(self.corner(a), self.corner(b)).expect("rotation preserves edges")
    }

    pub fn face(self, f: CubeFace) -> CubeFace {
        let cs = f.corners().map(|c| self.corner(c));
        CubeFace::ALL
            .into_iter()
            .find(|g| cs.iter().all(|c| g.contains_corner(*c)))
            .expect("rotation preserves faces")
    }

    /// Image of an inside-corner mask.
    pub fn mask(self, mask: u8) -> u8 {
        (0..8)
            .filter(|n| mask & (1 << n) != 0)
            .fold(0, |acc, n| acc | (1 << self.corner(n)))
    }
}

pub(crate) fn corner_position(c: usize) -> [f64; 3] {
    CORNER_OFFSETS[c].map(|v| v as f64)
}

/// Midpoint of an edge in the unit cube; used for orientation decisions.
pub(crate) fn edge_midpoint(e: CubeEdge) -> [f64; 3] {
    let (a, b) = e.corners();
    let (pa, pb) = (corner_position(a), corner_position(b));
    std::array::from_fn(|i| 0.5 * (pa[i] + pb[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_roundtrip_through_corners() {
        for e in CubeEdge::all() {
            let (a, b) = e.corners();
            assert!(a < b);
            assert_eq!(CubeEdge::between(a, b), Some(e));
            assert_eq!(CubeEdge::between(b, a), Some(e));
            assert_eq!(e.axis().index(), (a ^ b).trailing_zeros() as usize);
        }
        assert_eq!(CubeEdge::between(0, 3), None);
    }

    #[test]
    fn faces_are_well_formed() {
        for f in CubeFace::ALL {
            let cs = f.corners();
            assert!(cs.iter().all(|c| f.contains_corner(*c)));
            let es = f.edges();
            for e in es {
                assert!(f.contains_edge(e));
            }
            let mut sorted = es.map(|e| e.0);
            sorted.sort();
            sorted.windows(2).for_each(|w| assert_ne!(w[0], w[1]));
        }
        for e in CubeEdge::all() {
            let [f, g] = e.faces();
            assert_ne!(f, g);
            assert!(f.contains_edge(e) && g.contains_edge(e));
        }
    }

    #[test]
    fn rotations_form_the_proper_group() {
        let all = Rotation::all();
        assert_eq!(all.len(), 24);
        for r in &all {
            // adjacency preserved and orientation kept (det = +1)
            for e in CubeEdge::all() {
                let _ = r.edge(e);
            }
            let o = corner_position(r.corner(0));
            let axes: Vec<[f64; 3]> = [1, 2, 4]
                .iter()
                .map(|&c| {
                    let p = corner_position(r.corner(c));
                    [p[0] - o[0], p[1] - o[1], p[2] - o[2]]
                })
                .collect();
            let det = axes[0][0] * (axes[1][1] * axes[2][2] - axes[1][2] * axes[2][1])
                - axes[0][1] * (axes[1][0] * axes[2][2] - axes[1][2] * axes[2][0])
                + axes[0][2] * (axes[1][0] * axes[2][1] - axes[1][1] * axes[2][0]);
            assert_eq!(det, 1.0);
        }
    }
}
