//! Iso-surface patches inside a single cube.
//!
//! The surface inside a cube is described by closed loops of edge
//! crossings. On every face the crossings are paired into segments; once
//! each ambiguous face (two diagonal corners inside, two outside) has been
//! resolved, the segments of the six faces chain into disjoint loops, and
//! each loop is triangulated as one patch. Two cubes that agree on the
//! resolution of their shared face produce the same segments on it, so
//! their patches meet without cracks.

use std::sync::OnceLock;

use crate::cube::{corner_position, edge_midpoint, CubeEdge, CubeFace};

/// Inside-corner bitmask of a cube, bit `n` set for corner `n`.
pub type CaseMask = u8;

/// Per-face ambiguity resolution: bit `f` set means the two inside corners
/// of face `f` are joined across the face (the segments cut off the outside
/// corners). Bits for unambiguous faces are ignored.
pub type FaceResolution = u8;

#[inline]
pub fn corner_inside(mask: CaseMask, corner: usize) -> bool {
    mask & (1 << corner) != 0
}

pub fn edge_crosses(mask: CaseMask, e: CubeEdge) -> bool {
    let (a, b) = e.corners();
    corner_inside(mask, a) != corner_inside(mask, b)
}

pub fn crossing_edges(mask: CaseMask) -> impl Iterator<Item = CubeEdge> {
    CubeEdge::all().filter(move |e| edge_crosses(mask, *e))
}

pub fn is_ambiguous_face(mask: CaseMask, face: CubeFace) -> bool {
    let s = face.corners().map(|c| corner_inside(mask, c));
    s[0] == s[2] && s[1] == s[3] && s[0] != s[1]
}

pub fn ambiguous_faces(mask: CaseMask) -> impl Iterator<Item = CubeFace> {
    CubeFace::ALL.into_iter().filter(move |f| is_ambiguous_face(mask, *f))
}

/// Unoriented segments on one face.
pub fn face_segments(
    mask: CaseMask,
    face: CubeFace,
    inside_joined: bool,
) -> Vec<(CubeEdge, CubeEdge)> {
    let corners = face.corners();
    let edges = face.edges();
    let inside = corners.map(|c| corner_inside(mask, c));
    let crossing: Vec<CubeEdge> = (0..4)
        .filter(|&i| inside[i] != inside[(i + 1) % 4])
        .map(|i| edges[i])
        .collect();
    match crossing.len() {
        0 => Vec::new(),
        2 => vec![(crossing[0], crossing[1])],
        4 => {
            // cut off the corners of the side that is not joined
            let cut_inside = !inside_joined;
            (0..4)
                .filter(|&i| inside[i] == cut_inside)
                .map(|i| (edges[(i + 3) % 4], edges[i]))
                .collect()
        }
        _ => unreachable!("a square has an even number of sign changes"),
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Orders a face segment so that the loops it chains into wind with their
/// normal pointing from inside to outside.
pub fn orient_segment(mask: CaseMask, face: CubeFace, seg: (CubeEdge, CubeEdge)) -> (CubeEdge, CubeEdge) {
    let (e1, e2) = seg;
    let p = edge_midpoint(e1);
    let q = edge_midpoint(e2);
    let (a, b) = e1.corners();
    let inner = if corner_inside(mask, a) { a } else { b };
    let s = dot(cross(sub(q, p), sub(corner_position(inner), p)), face.normal());
    if s < 0.0 {
        (e1, e2)
    } else {
        (e2, e1)
    }
}

/// A closed loop of crossing edges, oriented, starting at its smallest edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatchLoop {
    edges: Vec<CubeEdge>,
}

impl PatchLoop {
    pub(crate) fn from_cycle(mut edges: Vec<CubeEdge>) -> Self {
        let start = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| **e)
            .map(|(i, _)| i)
            .unwrap_or(0);
        edges.rotate_left(start);
        PatchLoop { edges }
    }

    pub fn edges(&self) -> &[CubeEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: CubeEdge) -> bool {
        self.edges.contains(&e)
    }

    /// Whether `a` and `b` are consecutive along the loop, in either order.
    pub fn has_segment(&self, a: CubeEdge, b: CubeEdge) -> bool {
        let n = self.edges.len();
        (0..n).any(|i| {
            let (x, y) = (self.edges[i], self.edges[(i + 1) % n]);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    }

    /// Consecutive pairs with the face each lies in.
    pub fn segments(&self) -> impl Iterator<Item = (CubeFace, CubeEdge, CubeEdge)> + '_ {
        let n = self.edges.len();
        (0..n).map(move |i| {
            let (a, b) = (self.edges[i], self.edges[(i + 1) % n]);
            let f = a.common_face(b).expect("loop segments lie on a face");
            (f, a, b)
        })
    }

    pub fn reversed(&self) -> PatchLoop {
        let mut e = self.edges.clone();
        e.reverse();
        PatchLoop::from_cycle(e)
    }

    /// Sorted edge list; identifies the loop regardless of orientation.
    pub fn signature(&self) -> Vec<CubeEdge> {
        let mut s = self.edges.clone();
        s.sort();
        s
    }

    /// Canonical triangulation: minimise diagonals whose endpoints share a
    /// cube face (such a diagonal lies in the face plane), ties broken by the
    /// smallest apex. Depends only on the loop, not on how it was reached.
    pub fn triangulate(&self) -> Vec<[CubeEdge; 3]> {
        self.plan().1
    }

    /// Whether every triangulation has a diagonal lying in a cube face.
    ///
    /// That only happens across an ambiguous face, and the cube on the other
    /// side may pick the same diagonal, which would give an edge four
    /// triangles. Such loops are fanned around an interior vertex instead.
    pub fn needs_center(&self) -> bool {
        self.plan().0 > 0
    }

    fn plan(&self) -> (u32, Vec<[CubeEdge; 3]>) {
        let v = &self.edges;
        let n = v.len();
        if n < 3 {
            return (0, Vec::new());
        }
        let flat = |i: usize, j: usize| -> u32 {
            let side = j == i + 1 || (i == 0 && j == n - 1);
            (!side && v[i].common_face(v[j]).is_some()) as u32
        };
        // cost[i][j], split[i][j] over the sub-polygon i..=j
        let mut cost = vec![vec![0u32; n]; n];
        let mut split = vec![vec![0usize; n]; n];
        for len in 2..n {
            for i in 0..n - len {
                let j = i + len;
                let mut best = u32::MAX;
                for k in i + 1..j {
                    let c = cost[i][k] + cost[k][j] + flat(i, k) + flat(k, j);
                    if c < best {
                        best = c;
                        split[i][j] = k;
                    }
                }
                cost[i][j] = best;
            }
        }
        let mut out = Vec::with_capacity(n - 2);
        let mut stack = vec![(0, n - 1)];
        while let Some((i, j)) = stack.pop() {
            if j < i + 2 {
                continue;
            }
            let k = split[i][j];
            out.push([v[i], v[k], v[j]]);
            stack.push((k, j));
            stack.push((i, k));
        }
        (cost[0][n - 1], out)
    }
}

/// Chains the face segments of a cube into oriented loops.
pub fn build_loops(mask: CaseMask, resolution: FaceResolution) -> Vec<PatchLoop> {
    let mut next: [Option<CubeEdge>; 12] = [None; 12];
    for face in CubeFace::ALL {
        let joined = resolution & (1 << face.0) != 0;
        for seg in face_segments(mask, face, joined) {
            let (a, b) = orient_segment(mask, face, seg);
            debug_assert!(next[a.0 as usize].is_none());
            next[a.0 as usize] = Some(b);
        }
    }
    let mut seen = [false; 12];
    let mut loops = Vec::new();
    for start in crossing_edges(mask) {
        if seen[start.0 as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            seen[cur.0 as usize] = true;
            cycle.push(cur);
            cur = next[cur.0 as usize].expect("every crossing edge continues its loop");
            if cur == start {
                break;
            }
        }
        loops.push(PatchLoop::from_cycle(cycle));
    }
    loops
}

/// Loops and triangles of one (case, resolution) pair.
#[derive(Debug, Clone)]
pub struct CubePatches {
    pub loops: Vec<PatchLoop>,
    pub triangles: Vec<Vec<[CubeEdge; 3]>>,
    pub needs_center: Vec<bool>,
}

/// Clears resolution bits of faces that are not ambiguous for `mask`.
pub fn normalize_resolution(mask: CaseMask, resolution: FaceResolution) -> FaceResolution {
    ambiguous_faces(mask).fold(0, |acc, f| acc | (resolution & (1 << f.0)))
}

/// Cached loops and triangulations for every case and face resolution.
pub fn cube_patches(mask: CaseMask, resolution: FaceResolution) -> &'static CubePatches {
    static TABLE: OnceLock<Vec<CubePatches>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(256 * 64);
        for mask in 0..=255u8 {
            for res in 0..64u8 {
                let loops = if normalize_resolution(mask, res) == res {
                    build_loops(mask, res)
                } else {
                    Vec::new()
                };
                let triangles = loops.iter().map(PatchLoop::triangulate).collect();
                let needs_center = loops.iter().map(PatchLoop::needs_center).collect();
                t.push(CubePatches {
                    loops,
                    triangles,
                    needs_center,
                });
            }
        }
        t
    });
    &table[mask as usize * 64 + normalize_resolution(mask, resolution) as usize]
}
