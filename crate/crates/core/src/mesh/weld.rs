use std::collections::HashMap;

use super::TriangleMesh;
use crate::volume::Point3;

fn cell(p: Point3, size: f64) -> [i64; 3] {
    p.map(|c| (c / size).floor() as i64)
}

fn key(p: Point3) -> [u64; 3] {
    // +0.0 and -0.0 weld together
    p.map(|c| if c == 0.0 { 0 } else { c.to_bits() })
}

/// Merges vertices closer than `epsilon` (exact duplicates for 0), keeping
/// the first vertex of each cluster, and drops triangles that collapse.
pub fn weld(mesh: &TriangleMesh, epsilon: f64) -> TriangleMesh {
    let epsilon = epsilon.max(0.0);
    let n = mesh.vertex_count();
    let mut remap = vec![0u32; n];
    let mut kept: Vec<usize> = Vec::new();
    if epsilon == 0.0 {
        let mut seen: HashMap<[u64; 3], u32> = HashMap::with_capacity(n);
        for (i, p) in mesh.vertices().iter().enumerate() {
            remap[i] = *seen.entry(key(*p)).or_insert_with(|| {
                kept.push(i);
                (kept.len() - 1) as u32
            });
        }
    } else {
        let mut grid: HashMap<[i64; 3], Vec<u32>> = HashMap::new();
        let eps2 = epsilon * epsilon;
        for (i, p) in mesh.vertices().iter().enumerate() {
            let c = cell(*p, epsilon);
            let mut found = None;
            'search: for dz in -1..=1 {
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let Some(bucket) = grid.get(&[c[0] + dx, c[1] + dy, c[2] + dz]) else {
                            continue;
                        };
                        for &r in bucket {
                            let q = mesh.vertices()[kept[r as usize]];
                            let d2: f64 = (0..3).map(|a| (p[a] - q[a]).powi(2)).sum();
                            if d2 <= eps2 {
                                found = Some(r);
                                break 'search;
                            }
                        }
                    }
                }
            }
            remap[i] = found.unwrap_or_else(|| {
                kept.push(i);
                let r = (kept.len() - 1) as u32;
                grid.entry(c).or_default().push(r);
                r
            });
        }
    }
    let vertices = kept.iter().map(|&i| mesh.vertices()[i]).collect();
    let normals = mesh.normals().map(|ns| kept.iter().map(|&i| ns[i]).collect());
    let hull = mesh.hull_planes().map(|hs| kept.iter().map(|&i| hs[i]).collect());
    let triangles = mesh
        .triangles()
        .iter()
        .map(|t| t.map(|v| remap[v as usize]))
        .filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
        .collect();
    TriangleMesh::from_parts(vertices, normals, hull, triangles)
}
