//! The 256-entry marching cubes case table, generated from the 15 base
//! configurations by the 24 cube rotations and inside/outside
//! complementation.
//!
//! Each base configuration is triangulated with the inside corners kept
//! apart on every ambiguous face. A complemented entry reuses the loops of
//! its partner with the winding flipped, so on those entries the *outside*
//! corners end up apart instead. Neighbouring cubes that land on different
//! sides of that split disagree about their shared face; those are the
//! classic marching cubes holes and they are kept on purpose.

use std::sync::OnceLock;

use crate::cube::{CubeEdge, Rotation};
use crate::patch::{build_loops, CaseMask, PatchLoop};

/// How a table entry was derived from its base configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derivation {
    /// Index into [`CaseTable::bases`].
    pub base: usize,
    /// Index into [`Rotation::all`].
    pub rotation: usize,
    pub complemented: bool,
}

#[derive(Debug, Clone)]
pub struct CaseEntry {
    pub loops: Vec<PatchLoop>,
    pub triangles: Vec<[CubeEdge; 3]>,
    pub derivation: Derivation,
}

#[derive(Debug, Clone)]
pub struct CaseTable {
    bases: Vec<CaseMask>,
    entries: Vec<CaseEntry>,
}

impl CaseTable {
    /// Representative masks of the base configurations, ordered by inside
    /// corner count, then by mask.
    pub fn bases(&self) -> &[CaseMask] {
        &self.bases
    }

    pub fn entry(&self, mask: CaseMask) -> &CaseEntry {
        &self.entries[mask as usize]
    }

    pub fn triangles(&self, mask: CaseMask) -> &[[CubeEdge; 3]] {
        &self.entries[mask as usize].triangles
    }

    fn generate() -> CaseTable {
        let rotations = Rotation::all();
        let mut bases: Vec<CaseMask> = Vec::new();
        let mut covered = [false; 256];
        let mut order: Vec<CaseMask> = (0..=255).collect();
        order.sort_by_key(|m| (m.count_ones(), *m));
        for m in order {
            if covered[m as usize] {
                continue;
            }
            bases.push(m);
            for r in &rotations {
                let img = r.mask(m);
                covered[img as usize] = true;
                covered[!img as usize] = true;
            }
        }

        let mut entries: Vec<Option<CaseEntry>> = vec![None; 256];
        for (b, &base) in bases.iter().enumerate() {
            let base_loops = build_loops(base, 0);
            for (ri, r) in rotations.iter().enumerate() {
                let img = r.mask(base);
                if entries[img as usize].is_some() {
                    continue;
                }
                let loops: Vec<PatchLoop> = base_loops
                    .iter()
                    .map(|l| PatchLoop::from_cycle(l.edges().iter().map(|e| r.edge(*e)).collect()))
                    .collect();
                entries[img as usize] = Some(CaseEntry {
                    triangles: loops.iter().flat_map(|l| l.triangulate()).collect(),
                    loops,
                    derivation: Derivation {
                        base: b,
                        rotation: ri,
                        complemented: false,
                    },
                });
            }
        }
        for m in 0..=255u8 {
            if entries[m as usize].is_some() {
                continue;
            }
            let partner = entries[!m as usize]
                .as_ref()
                .expect("every complement class has a rotated member");
            let loops: Vec<PatchLoop> = partner.loops.iter().map(PatchLoop::reversed).collect();
            let derivation = Derivation {
                complemented: true,
                ..partner.derivation
            };
            entries[m as usize] = Some(CaseEntry {
                triangles: loops.iter().flat_map(|l| l.triangulate()).collect(),
                loops,
                derivation,
            });
        }
        CaseTable {
            bases,
            entries: entries.into_iter().map(Option::unwrap).collect(),
        }
    }
}

pub fn case_table() -> &'static CaseTable {
    static TABLE: OnceLock<CaseTable> = OnceLock::new();
    TABLE.get_or_init(CaseTable::generate)
}
