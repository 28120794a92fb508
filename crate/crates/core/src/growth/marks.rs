//! Per-cube processing and growth marks, and the configuration numbers
//! that drive them.
//!
//! A grown patch is one closed loop of edge crossings in the target cube.
//! Its configuration number depends on the growth-edge kind, the loop
//! length `L`, and whether the patch finishes the cube (no other patch of
//! the cube is still missing):
//!
//! | kind       | patch                                   | config |
//! |------------|-----------------------------------------|--------|
//! | triangle   | triangle, every patch in the cube is one|  1     |
//! | triangle   | L = 3, more to come                     |  2     |
//! | triangle   | L = 4, more to come                     |  3     |
//! | triangle   | L = 3, finishes                         |  4     |
//! | triangle   | L = 4, finishes                         |  5     |
//! | triangle   | L = 5..=6, more to come                 |  6     |
//! | triangle   | L = 5, finishes                         |  7     |
//! | triangle   | L = 6, finishes                         |  8     |
//! | triangle   | L >= 7, more to come                    |  9     |
//! | triangle   | L = 7..=8, finishes                     | 10     |
//! | triangle   | L >= 9, finishes                        | 11     |
//! | quadrangle | L = 4, more to come / finishes          | 12 / 13|
//! | quadrangle | L = 5..=6, more to come / finishes      | 14 / 15|
//! | quadrangle | L >= 7, more to come / finishes         | 16 / 17|
//!
//! Finishing configurations set the processing mark to 4, the others to 3,
//! and configuration 1 adds one.

use serde::{Deserialize, Serialize};

use super::GrowthEdgeKind;

/// Level at which a mark stops the cube from taking more growth.
pub const MARK_FULL: u8 = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeMarks {
    pub processing: u8,
    pub growth: u8,
}

impl CubeMarks {
    pub const FULL: CubeMarks = CubeMarks {
        processing: MARK_FULL,
        growth: MARK_FULL,
    };

    /// Neither mark decreased going from `self` to `next`.
    pub fn le(self, next: CubeMarks) -> bool {
        self.processing <= next.processing && self.growth <= next.growth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfigId(u8);

impl ConfigId {
    pub fn new(n: u8) -> Option<ConfigId> {
        (1..=17).contains(&n).then_some(ConfigId(n))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn kind(self) -> GrowthEdgeKind {
        if self.0 <= 11 {
            GrowthEdgeKind::TriangleEdge
        } else {
            GrowthEdgeKind::QuadrangleEdge
        }
    }

    /// Whether the configuration finishes its cube.
    pub fn finishes(self) -> bool {
        matches!(self.0, 4 | 5 | 7 | 8 | 10 | 11 | 13 | 15 | 17)
    }
}

/// Configuration of a patch of `loop_len` crossings grown from a `kind`
/// edge. `all_triangles` says every patch of the cube is a triangle,
/// `finishes` that no other patch of the cube is left.
pub fn classify_patch(
    kind: GrowthEdgeKind,
    loop_len: usize,
    all_triangles: bool,
    finishes: bool,
) -> ConfigId {
    let n = match kind {
        GrowthEdgeKind::TriangleEdge if all_triangles => 1,
        GrowthEdgeKind::TriangleEdge => match (loop_len, finishes) {
            (0..=3, false) => 2,
            (4, false) => 3,
            (0..=3, true) => 4,
            (4, true) => 5,
            (5 | 6, false) => 6,
            (5, true) => 7,
            (6, true) => 8,
            (_, false) => 9,
            (7 | 8, true) => 10,
            (_, true) => 11,
        },
        GrowthEdgeKind::QuadrangleEdge => {
            let band = match loop_len {
                0..=4 => 12,
                5 | 6 => 14,
                _ => 16,
            };
            band + finishes as u8
        }
    };
    ConfigId(n)
}

pub fn update_marks(marks: CubeMarks, config: ConfigId) -> CubeMarks {
    let processing = if config.get() == 1 {
        (marks.processing + 1).min(MARK_FULL)
    } else if config.finishes() {
        MARK_FULL
    } else {
        marks.processing.max(3)
    };
    CubeMarks { processing, ..marks }
}

/// Whether a growth edge may be queued towards a cube with these marks.
pub fn should_enqueue(target: CubeMarks) -> bool {
    target.processing != MARK_FULL && target.growth != MARK_FULL
}

/// Marks after queueing one more growth edge towards the cube.
pub fn note_enqueued(marks: CubeMarks) -> CubeMarks {
    CubeMarks {
        growth: (marks.growth + 1).min(MARK_FULL),
        ..marks
    }
}
