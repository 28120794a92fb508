use std::collections::{BTreeSet, HashMap};

use isogrow::growth::{CubeMarks, EdgeGrowth, EmittedPatch, GrowthObserver, SeedRegion};
use isogrow::interp::{edge_intersection, InterpMode};
use isogrow::mc::extract_mc;
use isogrow::mesh::{connected_components, topology_report};
use isogrow::volume::{CubeIndex, EdgeId, FaceId, Volume};
use isogrow::Error;
use proptest::prelude::*;

#[derive(Default)]
struct Recorder {
    marks: HashMap<[usize; 3], CubeMarks>,
    drops: usize,
}

impl GrowthObserver for Recorder {
    fn marks_changed(&mut self, cube: CubeIndex, before: CubeMarks, after: CubeMarks) {
        let last = self.marks.insert(cube.0, after).unwrap_or_default();
        if last != before || !before.le(after) {
            self.drops += 1;
        }
    }
}

fn median(values: &[f32]) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s[s.len() / 2] as f64
}

type Sides = HashMap<FaceId, [BTreeSet<(EdgeId, EdgeId)>; 2]>;

fn segments_by_side(patches: &[EmittedPatch]) -> Sides {
    let mut sides: Sides = HashMap::new();
    for p in patches {
        for (face, a, b) in p.face_segments() {
            // side 0: the cube below the face
            let side = (face.origin[face.normal.index()] != p.cube.0[face.normal.index()]) as usize;
            sides.entry(face).or_default()[side].insert((a, b));
        }
    }
    sides
}

fn check(values: Vec<f32>) -> Result<(), TestCaseError> {
    let v = Volume::new([4, 4, 4], values).unwrap();
    let y = median(v.values());
    let mut rec = Recorder::default();
    let region = SeedRegion::Box { lo: [0; 3], hi: [3; 3] };
    let out = match EdgeGrowth::new(&v, y, InterpMode::default()).run_observed(&region, &mut rec) {
        Err(Error::NoSeeds { .. }) => return Ok(()),
        r => r.unwrap(),
    };
    prop_assert_eq!(rec.drops, 0, "marks went down or skipped a change");

    for (face, [lo, hi]) in segments_by_side(&out.patches) {
        let both = face.cubes(&v).iter().all(Option::is_some);
        if both {
            prop_assert_eq!(&lo, &hi, "face {:?}", face);
        }
    }

    let r = topology_report(&out.mesh);
    prop_assert_eq!(r.nonmanifold_edges, 0);
    prop_assert!(r.watertight, "{:?}", r);

    let mc = extract_mc(&v, y, InterpMode::default());
    let key = |p: &[f64; 3]| p.map(f64::to_bits);
    let mc_vertices: BTreeSet<_> = mc.vertices().iter().map(key).collect();
    // fan centres are the only vertices off the grid edges
    let extra = out.mesh.vertices().iter().filter(|p| !mc_vertices.contains(&key(p))).count();
    prop_assert_eq!(extra, out.stats.fanned);

    // every component holds a seed triangle
    let seeds: Vec<[f64; 3]> = out
        .patches
        .iter()
        .filter(|p| p.config.is_none())
        .map(|p| {
            let e = p.cube.edge_id(p.patch.edges()[0]);
            let (a, b) = e.endpoints();
            let (ha, hb) = (v.at(a) as f64, v.at(b) as f64);
            edge_intersection(v.position(a), v.position(b), ha, hb, y, &InterpMode::default()).unwrap()
        })
        .collect();
    for part in connected_components(&out.mesh) {
        prop_assert!(part.vertices().iter().any(|p| seeds.contains(p)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_volumes_grow_without_cracks(values in prop::collection::vec(0u8..=255, 64)) {
        check(values.into_iter().map(f32::from).collect())?;
    }

    #[test]
    fn two_level_volumes_grow_without_cracks(bits in any::<u64>()) {
        check((0..64).map(|i| if bits >> i & 1 == 1 { 100.0 } else { 0.0 }).collect())?;
    }
}
