//! Classic marching cubes, kept as the baseline: no ambiguity resolution,
//! so adjacent cubes can disagree about a shared face and leave holes.

mod table;

pub use table::{case_table, CaseEntry, CaseTable, Derivation};

use crate::interp::{is_inside, InterpMode};
use crate::mesh::TriangleMesh;
use crate::patch::CaseMask;
use crate::surface::SurfaceBuilder;
use crate::volume::Volume;

/// Inside-corner mask of one cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeCase(pub CaseMask);

impl CubeCase {
    pub fn mask(self) -> CaseMask {
        self.0
    }
}

pub fn classify_cube(corners: &[f32; 8], threshold: f64) -> CubeCase {
    let mut mask = 0u8;
    for (n, hu) in corners.iter().enumerate() {
        if is_inside(*hu as f64, threshold) {
            mask |= 1 << n;
        }
    }
    CubeCase(mask)
}

/// One corner on its own side of the threshold: a single triangle.
pub fn is_config1(case: CubeCase) -> bool {
    matches!(case.0.count_ones(), 1 | 7)
}

/// Runs marching cubes over every cube of the volume.
pub fn extract_mc(v: &Volume, threshold: f64, mode: InterpMode) -> TriangleMesh {
    let table = case_table();
    let mut out = SurfaceBuilder::new(v, threshold, mode);
    for cube in v.cubes() {
        let case = classify_cube(&v.corner_values(cube), threshold);
        for tri in table.triangles(case.0) {
            out.push(cube, *tri)
                .expect("table triangles only use crossing edges");
        }
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{connected_components, topology_report};
    use crate::volume::{mc_example, Generator};

    #[test]
    fn classify_examples() {
        assert_eq!(classify_cube(&[0.0; 8], 50.0).0, 0);
        assert_eq!(classify_cube(&[100.0; 8], 50.0).0, 255);
        let mut one = [0.0; 8];
        one[0] = 100.0;
        let c = classify_cube(&one, 50.0);
        assert_eq!(c.0, 1);
        assert!(is_config1(c));
        assert_eq!(case_table().triangles(1).len(), 1);
        // a corner exactly at the threshold is outside
        assert_eq!(classify_cube(&[50.0; 8], 50.0).0, 0);
    }

    #[test]
    fn config1_masks() {
        assert!(is_config1(CubeCase(1)));
        assert!(!is_config1(CubeCase(0)));
        assert!(is_config1(CubeCase(254)));
        assert!(!is_config1(CubeCase(3)));
    }

    #[test]
    fn empty_volume_gives_empty_mesh() {
        let v = Volume::new([4, 4, 4], vec![0.0; 64]).unwrap();
        assert!(extract_mc(&v, 50.0, InterpMode::Linear).is_empty());
    }

    #[test]
    fn sphere_is_closed() {
        let v = Generator::sphere(20).build().unwrap();
        let m = extract_mc(&v, 50.0, InterpMode::Linear);
        let r = topology_report(&m);
        assert!(r.watertight, "{r:?}");
        assert_eq!(r.boundary_edges, 0);
        assert_eq!(r.component_count, 1);
        assert_eq!(connected_components(&m).len(), 1);
        // outward winding encloses a positive volume
        let vol: f64 = m
            .triangles()
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| m.vertices()[i as usize]);
                a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0])
            })
            .sum::<f64>()
            / 6.0;
        let r = 0.3 * 20.0;
        assert!((vol / (4.0 / 3.0 * std::f64::consts::PI * r * r * r) - 1.0).abs() < 0.1, "{vol}");
    }

    #[test]
    fn two_spheres_two_components() {
        let v = Generator::two_spheres(24).build().unwrap();
        let m = extract_mc(&v, 50.0, InterpMode::default());
        assert_eq!(topology_report(&m).component_count, 2);
    }

    #[test]
    fn mc_example_has_holes() {
        let m = extract_mc(&mc_example(100.0).unwrap(), 50.0, InterpMode::Linear);
        assert!(m.triangle_count() > 0);
        assert!(topology_report(&m).boundary_edges > 0);
    }
}
