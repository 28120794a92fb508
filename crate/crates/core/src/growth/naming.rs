//! Corner names relative to a growth edge, and the corners that "meet the
//! requirements" for the patch grown from it.
//!
//! Corners on the face holding the growth edge get `SS` names, the corners
//! across the cube get the `S_S` name with the same suffix.

use std::fmt;

use super::GrowthEdgeKind;
use crate::cube::{across, CubeEdge, CubeFace};
use crate::error::{Error, Result};
use crate::interp::is_inside;
use crate::patch::CaseMask;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    SS,
    SS_I,
    SS_II,
    SS_I_II,
    SS_UP_I,
    SS_UP_II,
    S_S,
    S_S_I,
    S_S_II,
    S_S_I_II,
    S_S_UP_I,
    S_S_UP_II,
}

impl Role {
    pub fn on_growth_face(self) -> bool {
        use Role::*;
        matches!(self, SS | SS_I | SS_II | SS_I_II | SS_UP_I | SS_UP_II)
    }

    /// The role of the corner across the cube.
    pub fn across(self) -> Role {
        use Role::*;
        match self {
            SS => S_S,
            SS_I => S_S_I,
            SS_II => S_S_II,
            SS_I_II => S_S_I_II,
            SS_UP_I => S_S_UP_I,
            SS_UP_II => S_S_UP_II,
            S_S => SS,
            S_S_I => SS_I,
            S_S_II => SS_II,
            S_S_I_II => SS_I_II,
            S_S_UP_I => SS_UP_I,
            S_S_UP_II => SS_UP_II,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexNaming {
    roles: [Role; 8],
}

impl VertexNaming {
    pub fn role(&self, corner: usize) -> Role {
        self.roles[corner]
    }

    pub fn corner(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|r| *r == role)
    }
}

/// Which corners meet the requirements for growth from a given edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Meeting {
    /// The meeting corners are the inside (hu > Y) ones.
    pub inside: bool,
    pub corners: CaseMask,
}

fn check_edges(face: CubeFace, e_i: CubeEdge, e_ii: CubeEdge, kind: GrowthEdgeKind) -> Result<()> {
    let adjacent = e_i.shared_corner(e_ii).is_some();
    let ok = e_i != e_ii
        && face.contains_edge(e_i)
        && face.contains_edge(e_ii)
        && adjacent == (kind == GrowthEdgeKind::TriangleEdge);
    if ok {
        Ok(())
    } else {
        Err(Error::MalformedEdge(format!(
            "{e_i:?}, {e_ii:?} on {face:?} do not form a {kind:?}"
        )))
    }
}

/// Names the corners of the target cube. `meeting` is only consulted for
/// quadrangle edges, whose names depend on which end of each source edge
/// meets the requirements.
pub fn name_vertices(
    face: CubeFace,
    e_i: CubeEdge,
    e_ii: CubeEdge,
    kind: GrowthEdgeKind,
    meeting: CaseMask,
) -> Result<VertexNaming> {
    check_edges(face, e_i, e_ii, kind)?;
    let mut roles = [Role::SS; 8];
    let other = |e: CubeEdge, c: usize| {
        let (a, b) = e.corners();
        if a == c {
            b
        } else {
            a
        }
    };
    let mut set = |c: usize, r: Role| {
        roles[c] = r;
        roles[across(face, c)] = r.across();
    };
    match kind {
        GrowthEdgeKind::TriangleEdge => {
            let ss = e_i.shared_corner(e_ii).expect("checked adjacent");
            let ss_i = other(e_i, ss);
            let ss_ii = other(e_ii, ss);
            let diag = face
                .corners()
                .into_iter()
                .find(|c| ![ss, ss_i, ss_ii].contains(c))
                .expect("a face has four corners");
            set(ss, Role::SS);
            set(ss_i, Role::SS_I);
            set(ss_ii, Role::SS_II);
            set(diag, Role::SS_I_II);
        }
        GrowthEdgeKind::QuadrangleEdge => {
            for (e, yes, no) in [
                (e_i, Role::SS_I, Role::SS_UP_I),
                (e_ii, Role::SS_II, Role::SS_UP_II),
            ] {
                let (a, b) = e.corners();
                let (m, u) = if meeting & (1 << a) != 0 { (a, b) } else { (b, a) };
                set(m, yes);
                set(u, no);
            }
        }
    }
    Ok(VertexNaming { roles })
}

/// Triangle edges: corners on the same side of `threshold` as `SS`.
/// Quadrangle edges: the smaller side of the cube; on a 4-4 split the
/// inside corners.
pub fn reference_point(
    values: &[f32; 8],
    threshold: f64,
    kind: GrowthEdgeKind,
    e_i: CubeEdge,
    e_ii: CubeEdge,
) -> Meeting {
    let inside_mask = (0..8).fold(0u8, |m, c| {
        m | ((is_inside(values[c] as f64, threshold) as u8) << c)
    });
    let inside = match kind {
        GrowthEdgeKind::TriangleEdge => match e_i.shared_corner(e_ii) {
            Some(ss) => inside_mask & (1 << ss) != 0,
            None => true,
        },
        GrowthEdgeKind::QuadrangleEdge => inside_mask.count_ones() <= 4,
    };
    Meeting {
        inside,
        corners: if inside { inside_mask } else { !inside_mask },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Rotation;
    use crate::patch::edge_crosses;

    fn pairs() -> Vec<(CubeFace, CubeEdge, CubeEdge, GrowthEdgeKind)> {
        let mut out = Vec::new();
        for f in CubeFace::ALL {
            for a in f.edges() {
                for b in f.edges() {
                    if a == b {
                        continue;
                    }
                    let kind = if a.shared_corner(b).is_some() {
                        GrowthEdgeKind::TriangleEdge
                    } else {
                        GrowthEdgeKind::QuadrangleEdge
                    };
                    out.push((f, a, b, kind));
                }
            }
        }
        out
    }

    fn values(mask: CaseMask) -> [f32; 8] {
        std::array::from_fn(|c| if mask & (1 << c) != 0 { 100.0 } else { 0.0 })
    }

    #[test]
    fn four_ss_names_on_the_growth_face() {
        for (f, a, b, kind) in pairs() {
            for mask in 0..=255u8 {
                if !(edge_crosses(mask, a) && edge_crosses(mask, b)) {
                    continue;
                }
                let m = reference_point(&values(mask), 50.0, kind, a, b);
                let n = name_vertices(f, a, b, kind, m.corners).unwrap();
                for c in 0..8 {
                    assert_eq!(n.role(c).on_growth_face(), f.contains_corner(c));
                    // suffix pairing across the cube
                    assert_eq!(n.role(across(f, c)), n.role(c).across());
                }
                let mut roles: Vec<Role> = (0..8).map(|c| n.role(c)).collect();
                roles.sort_by_key(|r| *r as u8);
                roles.dedup();
                assert_eq!(roles.len(), 8);
            }
        }
    }

    #[test]
    fn triangle_reference_follows_ss() {
        let f = CubeFace::new(2, 0);
        let (a, b) = (CubeEdge::between(0, 1).unwrap(), CubeEdge::between(0, 2).unwrap());
        let mut v = [0.0f32; 8];
        v[0] = 100.0;
        v[7] = 100.0;
        let m = reference_point(&v, 50.0, GrowthEdgeKind::TriangleEdge, a, b);
        assert!(m.inside);
        assert_eq!(m.corners, 0b1000_0001);
        let n = name_vertices(f, a, b, GrowthEdgeKind::TriangleEdge, m.corners).unwrap();
        assert_eq!(n.corner(Role::SS), Some(0));
        assert_eq!(n.corner(Role::SS_I), Some(1));
        assert_eq!(n.corner(Role::SS_II), Some(2));
        assert_eq!(n.corner(Role::SS_I_II), Some(3));
        assert_eq!(n.corner(Role::S_S_I_II), Some(7));
    }

    #[test]
    fn quadrangle_reference_is_the_smaller_side() {
        let (a, b) = (CubeEdge::between(0, 2).unwrap(), CubeEdge::between(1, 3).unwrap());
        let q = GrowthEdgeKind::QuadrangleEdge;
        let mut v = [0.0f32; 8];
        v[0] = 100.0;
        assert_eq!(reference_point(&v, 50.0, q, a, b).corners, 0b1);
        let v = [100.0, 100.0, 0.0, 0.0, 100.0, 100.0, 100.0, 100.0];
        let m = reference_point(&v, 50.0, q, a, b);
        assert!(!m.inside);
        assert_eq!(m.corners, 0b1100);
        // 4-4 split goes to the inside corners
        let v = [100.0, 100.0, 0.0, 0.0, 100.0, 100.0, 0.0, 0.0];
        assert_eq!(reference_point(&v, 50.0, q, a, b).corners, 0b0011_0011);
        let n = name_vertices(CubeFace::new(0, 0), a, b, q, 0b0011_0011);
        assert!(n.is_err(), "edges of the z face are not on the x face");
        let n = name_vertices(CubeFace::new(2, 0), a, b, q, 0b0011_0011).unwrap();
        assert_eq!(n.corner(Role::SS_I), Some(0));
        assert_eq!(n.corner(Role::SS_UP_I), Some(2));
        assert_eq!(n.corner(Role::S_S_UP_II), Some(7));
    }

    #[test]
    fn naming_commutes_with_rotation() {
        let rotations = Rotation::all();
        for (f, a, b, kind) in pairs() {
            for mask in 0..=255u8 {
                if !(edge_crosses(mask, a) && edge_crosses(mask, b)) {
                    continue;
                }
                let m = reference_point(&values(mask), 50.0, kind, a, b);
                let n = name_vertices(f, a, b, kind, m.corners).unwrap();
                for r in &rotations {
                    let (rf, ra, rb) = (r.face(f), r.edge(a), r.edge(b));
                    let rm = reference_point(&values(r.mask(mask)), 50.0, kind, ra, rb);
                    assert_eq!(rm.corners, r.mask(m.corners));
                    let rn = name_vertices(rf, ra, rb, kind, rm.corners).unwrap();
                    for c in 0..8 {
                        assert_eq!(rn.role(r.corner(c)), n.role(c));
                    }
                }
            }
        }
    }
}
