//! Edge-growth reconstruction.
//!
//! Seed triangles are taken from single-triangle cubes. Every face segment
//! of an extracted patch becomes a growth edge into the cube across the
//! face, where only the patch through that segment is extracted. Growth
//! stops at segments whose far side is already done.
//!
//! The first cube to touch an ambiguous face decides how it is split, and
//! the decision is shared with the cube on the other side. Both cubes
//! therefore cut the face into the same segments and the surface has no
//! cracks.

mod edge;
mod marks;
mod naming;
mod seed;

pub use edge::{classify_growth_edge, GrowthEdge, GrowthEdgeKind};
pub use marks::{
    classify_patch, note_enqueued, should_enqueue, update_marks, ConfigId, CubeMarks, MARK_FULL,
};
pub use naming::{name_vertices, reference_point, Meeting, Role, VertexNaming};
pub use seed::{select_seeds, SeedRegion};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use log::debug;
use serde::{Deserialize, Serialize};

use crate::cube::{CubeEdge, CubeFace};
use crate::error::{Error, Result};
use crate::interp::{InterpMode, InterpParams};
use crate::mc::classify_cube;
use crate::mesh::TriangleMesh;
use crate::patch::{ambiguous_faces, cube_patches, CaseMask, CubePatches, FaceResolution, PatchLoop};
use crate::surface::{edge_vertex, SurfaceBuilder};
use crate::volume::{CubeIndex, EdgeId, FaceId, Volume};

/// Counters of one run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthStats {
    pub seeds: usize,
    /// Grown patches per configuration number.
    pub configs: BTreeMap<u8, usize>,
    /// Grown patches, seeds excluded.
    pub patches: usize,
    pub peak_queue: usize,
    pub cubes_touched: usize,
    /// Dequeued edges whose cube was finished in the meantime.
    pub stale_drops: usize,
    /// Offers refused by the target's marks.
    pub refused: usize,
    /// Patches fanned around an interior vertex.
    pub fanned: usize,
}

/// A patch written to the output mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct EmittedPatch {
    pub cube: CubeIndex,
    /// `None` for seed triangles.
    pub config: Option<ConfigId>,
    pub mask: CaseMask,
    pub resolution: FaceResolution,
    pub patch: PatchLoop,
}

impl EmittedPatch {
    /// The patch's face segments as global keys, each pair sorted.
    pub fn face_segments(&self) -> Vec<(FaceId, EdgeId, EdgeId)> {
        self.patch
            .segments()
            .map(|(f, a, b)| {
                let (a, b) = (self.cube.edge_id(a), self.cube.edge_id(b));
                (self.cube.face_id(f), a.min(b), a.max(b))
            })
            .collect()
    }
}

/// Hooks into a run, for instrumentation.
pub trait GrowthObserver {
    fn marks_changed(&mut self, _cube: CubeIndex, _before: CubeMarks, _after: CubeMarks) {}
    fn patch_emitted(&mut self, _patch: &EmittedPatch) {}
}

impl GrowthObserver for () {}

pub struct GrowthOutput {
    pub mesh: TriangleMesh,
    pub stats: GrowthStats,
    pub patches: Vec<EmittedPatch>,
}

struct CubeState {
    mask: CaseMask,
    resolution: FaceResolution,
    emitted: u8,
    pending: u8,
}

impl CubeState {
    fn patches(&self) -> &'static CubePatches {
        cube_patches(self.mask, self.resolution)
    }
}

struct Queued {
    edge: GrowthEdge,
    patch: usize,
}

/// State of one reconstruction run.
pub struct EdgeGrowth<'v> {
    volume: &'v Volume,
    threshold: f64,
    mode: InterpMode,
    surface: SurfaceBuilder<'v>,
    marks: Vec<CubeMarks>,
    cubes: HashMap<usize, CubeState>,
    faces: HashMap<FaceId, bool>,
    consumed: HashSet<(EdgeId, EdgeId)>,
    queue: VecDeque<Queued>,
    stats: GrowthStats,
    patches: Vec<EmittedPatch>,
}

impl<'v> EdgeGrowth<'v> {
    pub fn new(volume: &'v Volume, threshold: f64, mode: InterpMode) -> Self {
        EdgeGrowth {
            volume,
            threshold,
            mode,
            surface: SurfaceBuilder::new(volume, threshold, mode),
            marks: vec![CubeMarks::default(); volume.cube_count()],
            cubes: HashMap::new(),
            faces: HashMap::new(),
            consumed: HashSet::new(),
            queue: VecDeque::new(),
            stats: GrowthStats::default(),
            patches: Vec::new(),
        }
    }

    pub fn run(self, region: &SeedRegion) -> Result<GrowthOutput> {
        self.run_observed(region, &mut ())
    }

    pub fn run_observed(
        mut self,
        region: &SeedRegion,
        obs: &mut dyn GrowthObserver,
    ) -> Result<GrowthOutput> {
        let seeds = select_seeds(self.volume, self.threshold, region)?;
        self.stats.seeds = seeds.len();
        // mark every seed cube finished before any growth is offered, so
        // seeds never grow into each other
        for &cube in &seeds {
            self.touch(cube, None);
            self.set_marks(cube, CubeMarks::FULL, obs);
        }
        let first = self.patches.len();
        for &cube in &seeds {
            self.emit(cube, 0, None, obs)?;
        }
        for i in first..self.patches.len() {
            let p = self.patches[i].clone();
            self.offer_segments(p.cube, &p.patch, obs)?;
        }
        while let Some(q) = self.queue.pop_front() {
            let cube = q.edge.target_cube;
            if self.marks[self.volume.cube_offset(cube)].processing == MARK_FULL {
                self.stats.stale_drops += 1;
                continue;
            }
            self.grow(q, obs)?;
        }
        debug!(
            "edge growth: {} seeds, {} patches, {} triangles, peak queue {}",
            self.stats.seeds,
            self.stats.patches,
            self.surface.triangle_count(),
            self.stats.peak_queue
        );
        Ok(GrowthOutput {
            mesh: self.surface.finish(),
            stats: self.stats,
            patches: self.patches,
        })
    }

    fn set_marks(&mut self, cube: CubeIndex, next: CubeMarks, obs: &mut dyn GrowthObserver) {
        let slot = &mut self.marks[self.volume.cube_offset(cube)];
        let before = *slot;
        debug_assert!(before.le(next), "marks of {:?} would drop", cube.0);
        if before != next {
            *slot = next;
            obs.marks_changed(cube, before, next);
        }
    }

    /// Fixes the loops of a cube on first contact. Ambiguous faces already
    /// split by a neighbour keep that split; the others join the corners
    /// that meet the requirements of the entering growth edge.
    fn touch(&mut self, cube: CubeIndex, entry: Option<(GrowthEdgeKind, CubeEdge, CubeEdge)>) {
        let off = self.volume.cube_offset(cube);
        if self.cubes.contains_key(&off) {
            return;
        }
        let values = self.volume.corner_values(cube);
        let mask = classify_cube(&values, self.threshold).mask();
        let mut resolution = 0;
        for face in ambiguous_faces(mask) {
            let id = cube.face_id(face);
            let joined = *self.faces.entry(id).or_insert_with(|| match entry {
                Some((kind, a, b)) => reference_point(&values, self.threshold, kind, a, b).inside,
                None => false,
            });
            if joined {
                resolution |= 1 << face.0;
            }
        }
        self.stats.cubes_touched += 1;
        self.cubes.insert(
            off,
            CubeState {
                mask,
                resolution,
                emitted: 0,
                pending: 0,
            },
        );
    }

    fn emit(
        &mut self,
        cube: CubeIndex,
        index: usize,
        config: Option<ConfigId>,
        obs: &mut dyn GrowthObserver,
    ) -> Result<()> {
        let state = self
            .cubes
            .get_mut(&self.volume.cube_offset(cube))
            .ok_or_else(|| Error::Internal(format!("cube {:?} was never touched", cube.0)))?;
        state.emitted |= 1 << index;
        state.pending &= !(1 << index);
        let (mask, resolution) = (state.mask, state.resolution);
        let patches = state.patches();
        if patches.needs_center[index] {
            self.surface.push_fan(cube, patches.loops[index].edges())?;
            self.stats.fanned += 1;
        } else {
            for tri in &patches.triangles[index] {
                self.surface.push(cube, *tri)?;
            }
        }
        let p = EmittedPatch {
            cube,
            config,
            mask,
            resolution,
            patch: patches.loops[index].clone(),
        };
        obs.patch_emitted(&p);
        self.patches.push(p);
        Ok(())
    }

    fn grow(&mut self, q: Queued, obs: &mut dyn GrowthObserver) -> Result<()> {
        let cube = q.edge.target_cube;
        let kind = classify_growth_edge(&q.edge)?;
        let state = &self.cubes[&self.volume.cube_offset(cube)];
        let patches = state.patches();
        let all = (1u8 << patches.loops.len()) - 1;
        let config = classify_patch(
            kind,
            patches.loops[q.patch].len(),
            patches.loops.iter().all(|l| l.len() == 3),
            (state.emitted | 1 << q.patch) == all,
        );
        self.emit(cube, q.patch, Some(config), obs)?;
        *self.stats.configs.entry(config.get()).or_insert(0) += 1;
        self.stats.patches += 1;
        let marks = self.marks[self.volume.cube_offset(cube)];
        self.set_marks(cube, update_marks(marks, config), obs);
        let patch = patches.loops[q.patch].clone();
        self.offer_segments(cube, &patch, obs)
    }

    fn offer_segments(
        &mut self,
        cube: CubeIndex,
        patch: &PatchLoop,
        obs: &mut dyn GrowthObserver,
    ) -> Result<()> {
        for (face, a, b) in patch.segments() {
            let (ga, gb) = (cube.edge_id(a), cube.edge_id(b));
            // a segment is shared by exactly one patch on each side; once
            // seen it has been offered already, or came in as a growth edge
            if !self.consumed.insert((ga.min(gb), ga.max(gb))) {
                continue;
            }
            self.offer(cube, face, ga, gb, obs)?;
        }
        Ok(())
    }

    fn offer(
        &mut self,
        from: CubeIndex,
        face: CubeFace,
        a: EdgeId,
        b: EdgeId,
        obs: &mut dyn GrowthObserver,
    ) -> Result<()> {
        let Some(target) = from.neighbour(face, self.volume) else {
            return Ok(());
        };
        let off = self.volume.cube_offset(target);
        if !should_enqueue(self.marks[off]) {
            self.stats.refused += 1;
            return Ok(());
        }
        let (va, vb) = (
            edge_vertex(self.volume, a, self.threshold, &self.mode)?,
            edge_vertex(self.volume, b, self.threshold, &self.mode)?,
        );
        let edge = GrowthEdge {
            endpoints: [va.position, vb.position],
            source_edges: [a, b],
            gradients: [va.gradient, vb.gradient],
            shared_face: from.face_id(face),
            target_cube: target,
        };
        let kind = classify_growth_edge(&edge)?;
        let (_, la, lb) = edge.local()?;
        self.touch(target, Some((kind, la, lb)));
        let state = self.cubes.get_mut(&off).expect("touched above");
        let patches = state.patches();
        let index = patches
            .loops
            .iter()
            .position(|l| l.has_segment(la, lb))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "cube {:?} has no patch through {la:?}-{lb:?}",
                    target.0
                ))
            })?;
        if (state.emitted | state.pending) & (1 << index) != 0 {
            return Ok(());
        }
        state.pending |= 1 << index;
        let marks = self.marks[off];
        self.set_marks(target, note_enqueued(marks), obs);
        self.queue.push_back(Queued { edge, patch: index });
        self.stats.peak_queue = self.stats.peak_queue.max(self.queue.len());
        Ok(())
    }
}

/// Edge-growth reconstruction with three-segment interpolation.
pub fn reconstruct(
    v: &Volume,
    threshold: f64,
    region: &SeedRegion,
    params: InterpParams,
) -> Result<TriangleMesh> {
    Ok(EdgeGrowth::new(v, threshold, InterpMode::ThreeSegment(params))
        .run(region)?
        .mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::extract_mc;
    use crate::mesh::{connected_components, topology_report};
    use crate::volume::{mc_example, Generator};

    fn grow(v: &Volume, region: &SeedRegion) -> GrowthOutput {
        EdgeGrowth::new(v, 50.0, InterpMode::default()).run(region).unwrap()
    }

    #[test]
    fn mc_example_is_closed() {
        let v = mc_example(100.0).unwrap();
        let out = grow(&v, &SeedRegion::MiddleLayer);
        let r = topology_report(&out.mesh);
        assert!(out.mesh.triangle_count() > 0);
        assert_eq!(r.boundary_edges, 0, "{r:?}");
        assert_eq!(r.nonmanifold_edges, 0, "{r:?}");
        assert_eq!(out.stats.stale_drops, 0);
    }

    #[test]
    fn sphere_matches_marching_cubes() {
        let v = Generator::sphere(20).build().unwrap();
        // the equator layer has no single-triangle cubes
        let out = grow(&v, &SeedRegion::Box { lo: [0; 3], hi: [19; 3] });
        let mc = extract_mc(&v, 50.0, InterpMode::default());
        assert_eq!(out.mesh.triangle_count(), mc.triangle_count());
        let mut a = out.mesh.vertices().to_vec();
        let mut b = mc.vertices().to_vec();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(a, b);
        assert!(topology_report(&out.mesh).watertight);
    }

    #[test]
    fn slab_becomes_a_closed_box() {
        // one inside plane in the middle of a 3x3x3 grid, padded so the
        // surface stays off the hull
        let v = Volume::from_fn([5, 5, 5], |x, y, z| {
            if (1..=3).contains(&x) && (1..=3).contains(&y) && z == 2 {
                100.0
            } else {
                0.0
            }
        })
        .unwrap();
        let out = grow(&v, &SeedRegion::Layer(1));
        let r = topology_report(&out.mesh);
        assert!(r.watertight, "{r:?}");
        assert_eq!(r.boundary_edges, 0);
        assert_eq!(r.component_count, 1);
        assert!(out.stats.configs.keys().any(|&c| c >= 12), "{:?}", out.stats.configs);
    }

    #[test]
    fn shell_skips_the_cavity() {
        let v = Generator::shell(24).build().unwrap();
        let c = (24.0 - 1.0) / 2.0;
        let x1 = (c - 0.2 * 24.0 - 1.0) as usize;
        let region = SeedRegion::Box { lo: [0, 0, 0], hi: [x1, 23, 23] };
        let out = grow(&v, &region);
        let mc = extract_mc(&v, 50.0, InterpMode::default());
        let parts = connected_components(&mc);
        assert_eq!(parts.len(), 2);
        let inner = parts.iter().map(|p| p.triangle_count()).min().unwrap();
        assert_eq!(out.mesh.triangle_count() + inner, mc.triangle_count());
    }

    #[test]
    fn no_seeds_is_reported() {
        let v = Volume::new([4, 4, 4], vec![0.0; 64]).unwrap();
        let r = EdgeGrowth::new(&v, 50.0, InterpMode::default()).run(&SeedRegion::MiddleLayer);
        assert!(matches!(r, Err(Error::NoSeeds { .. })));
    }

    #[test]
    fn runs_are_deterministic() {
        let v = mc_example(100.0).unwrap();
        let a = grow(&v, &SeedRegion::MiddleLayer);
        let b = grow(&v, &SeedRegion::MiddleLayer);
        assert_eq!(a.mesh, b.mesh);
        assert_eq!(a.stats, b.stats);
    }
}
