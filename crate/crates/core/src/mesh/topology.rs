use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::TriangleMesh;

/// Edge incidence tallies of a welded mesh.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub edge_count: usize,
    /// Edges with exactly one incident triangle.
    pub boundary_edges: usize,
    /// Edges with exactly two incident triangles.
    pub manifold_edges: usize,
    /// Edges with three or more incident triangles.
    pub nonmanifold_edges: usize,
    pub component_count: usize,
    /// Boundary edges lying in a plane of the volume hull.
    pub hull_boundary_edges: usize,
    /// No boundary edges away from the hull and no non-manifold edges.
    pub watertight: bool,
}

fn edge_incidence(mesh: &TriangleMesh) -> HashMap<(u32, u32), u32> {
    let mut count = HashMap::with_capacity(mesh.triangle_count() * 3 / 2);
    for t in mesh.triangles() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            *count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    count
}

pub fn topology_report(mesh: &TriangleMesh) -> TopologyReport {
    let incidence = edge_incidence(mesh);
    let hull = mesh.hull_planes();
    let mut r = TopologyReport {
        edge_count: incidence.len(),
        boundary_edges: 0,
        manifold_edges: 0,
        nonmanifold_edges: 0,
        component_count: component_labels(mesh).1,
        hull_boundary_edges: 0,
        watertight: false,
    };
    for (&(a, b), &n) in &incidence {
        match n {
            1 => {
                r.boundary_edges += 1;
                if hull.is_some_and(|h| h[a as usize] & h[b as usize] != 0) {
                    r.hull_boundary_edges += 1;
                }
            }
            2 => r.manifold_edges += 1,
            _ => r.nonmanifold_edges += 1,
        }
    }
    r.watertight = r.boundary_edges == r.hull_boundary_edges && r.nonmanifold_edges == 0;
    r
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Per-triangle component label, labels numbered by first appearance of the
/// component's smallest vertex index.
fn component_labels(mesh: &TriangleMesh) -> (Vec<usize>, usize) {
    let mut parent: Vec<u32> = (0..mesh.vertex_count() as u32).collect();
    for t in mesh.triangles() {
        for &v in &t[1..] {
            let (ra, rb) = (find(&mut parent, t[0]), find(&mut parent, v));
            if ra != rb {
                // keep the smaller index as root so roots are component minima
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi as usize] = lo;
            }
        }
    }
    let mut roots: Vec<u32> = mesh
        .triangles()
        .iter()
        .map(|t| find(&mut parent, t[0]))
        .collect();
    let mut ordered = roots.clone();
    ordered.sort_unstable();
    ordered.dedup();
    let label: HashMap<u32, usize> = ordered.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let labels = roots.drain(..).map(|r| label[&r]).collect();
    (labels, ordered.len())
}

/// Splits the mesh into vertex-connected pieces, ordered by their smallest
/// vertex index.
pub fn connected_components(mesh: &TriangleMesh) -> Vec<TriangleMesh> {
    let (labels, count) = component_labels(mesh);
    let mut groups = vec![Vec::new(); count];
    for (t, l) in labels.into_iter().enumerate() {
        groups[l].push(t);
    }
    groups.iter().map(|g| mesh.subset(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn tetrahedron(offset: f64) -> TriangleMesh {
        let v = vec![
            [offset, 0.0, 0.0],
            [offset + 1.0, 0.0, 0.0],
            [offset, 1.0, 0.0],
            [offset, 0.0, 1.0],
        ];
        TriangleMesh::new(v, vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]).unwrap()
    }

    fn merge(a: &TriangleMesh, b: &TriangleMesh) -> TriangleMesh {
        let n = a.vertex_count() as u32;
        let mut v = a.vertices().to_vec();
        v.extend_from_slice(b.vertices());
        let mut t = a.triangles().to_vec();
        t.extend(b.triangles().iter().map(|t| t.map(|i| i + n)));
        TriangleMesh::new(v, t).unwrap()
    }

    #[test]
    fn single_triangle_is_open() {
        let m = TriangleMesh::new(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![[0, 1, 2]])
            .unwrap();
        let r = topology_report(&m);
        assert_eq!(r.boundary_edges, 3);
        assert_eq!(r.edge_count, 3);
        assert!(!r.watertight);
    }

    #[test]
    fn tetrahedron_is_closed() {
        let r = topology_report(&tetrahedron(0.0));
        assert_eq!(r.edge_count, 6);
        assert_eq!(r.manifold_edges, 6);
        assert_eq!(r.component_count, 1);
        assert!(r.watertight);
    }

    #[test]
    fn hull_edges_are_excused() {
        let m = TriangleMesh::from_parts(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            None,
            Some(vec![0b1, 0b1, 0b1]),
            vec![[0, 1, 2]],
        );
        let r = topology_report(&m);
        assert_eq!(r.hull_boundary_edges, 3);
        assert!(r.watertight);
    }

    #[test]
    fn fin_is_nonmanifold() {
        let mut t = tetrahedron(0.0);
        let mut v = t.vertices().to_vec();
        v.push([0.5, 0.5, -1.0]);
        let mut tris = t.triangles().to_vec();
        tris.push([0, 1, 4]);
        t = TriangleMesh::new(v, tris).unwrap();
        let r = topology_report(&t);
        assert_eq!(r.nonmanifold_edges, 1);
        assert_eq!(r.boundary_edges, 2);
        assert!(!r.watertight);
    }

    #[test]
    fn components() {
        let two = merge(&tetrahedron(0.0), &tetrahedron(5.0));
        let parts = connected_components(&two);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].vertices()[0], [0.0, 0.0, 0.0]);
        assert_eq!(parts[1].vertices()[0], [5.0, 0.0, 0.0]);
        assert!(parts.iter().all(|p| topology_report(p).watertight));
        assert!(connected_components(&TriangleMesh::default()).is_empty());
    }

    proptest! {
        #[test]
        fn tallies_and_components_are_stable(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
            let m = merge(&tetrahedron(0.0), &tetrahedron(3.0));
            let shuffled = TriangleMesh::new(
                m.vertices().to_vec(),
                perm.iter().map(|&i| m.triangles()[i]).collect(),
            ).unwrap();
            let r = topology_report(&shuffled);
            prop_assert_eq!(r.boundary_edges + r.manifold_edges + r.nonmanifold_edges, r.edge_count);
            prop_assert_eq!(r.component_count, 2);
            prop_assert_eq!(connected_components(&shuffled).len(), 2);
        }
    }
}
