use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mc::{classify_cube, is_config1};
use crate::volume::{CubeIndex, Volume};

/// Where seed triangles are harvested, in cube coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SeedRegion {
    /// The cube layer `k = (nz - 2) / 2`.
    #[default]
    MiddleLayer,
    /// Cube layer `k`.
    Layer(usize),
    /// Half-open box `lo <= c < hi` per axis, clipped to the grid.
    Box { lo: [usize; 3], hi: [usize; 3] },
    Cubes(Vec<CubeIndex>),
}

impl SeedRegion {
    /// The in-grid cubes of the region, x fastest.
    pub fn cubes(&self, v: &Volume) -> Result<Vec<CubeIndex>> {
        let cd = v.cube_dims();
        let (lo, hi) = match self {
            SeedRegion::MiddleLayer => {
                let k = (cd[2] - 1) / 2;
                ([0, 0, k], [cd[0], cd[1], k + 1])
            }
            SeedRegion::Layer(k) => ([0, 0, *k], [cd[0], cd[1], k + 1]),
            SeedRegion::Box { lo, hi } => (*lo, *hi),
            SeedRegion::Cubes(list) => {
                if let Some(c) = list.iter().find(|c| !v.contains_cube(**c)) {
                    return Err(Error::InvalidSeedRegion(format!(
                        "cube {:?} is outside the {cd:?} cube grid",
                        c.0
                    )));
                }
                if list.is_empty() {
                    return Err(Error::InvalidSeedRegion("empty cube list".into()));
                }
                return Ok(list.clone());
            }
        };
        let hi: [usize; 3] = std::array::from_fn(|a| hi[a].min(cd[a]));
        if (0..3).any(|a| lo[a] >= hi[a]) {
            return Err(Error::InvalidSeedRegion(format!(
                "{self} does not intersect the {cd:?} cube grid"
            )));
        }
        let mut out = Vec::new();
        for k in lo[2]..hi[2] {
            for j in lo[1]..hi[1] {
                for i in lo[0]..hi[0] {
                    out.push(CubeIndex([i, j, k]));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SeedRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedRegion::MiddleLayer => f.write_str("middle"),
            SeedRegion::Layer(k) => write!(f, "{k}"),
            SeedRegion::Box { lo, hi } => {
                write!(f, "{},{},{},{},{},{}", lo[0], hi[0], lo[1], hi[1], lo[2], hi[2])
            }
            SeedRegion::Cubes(list) => write!(f, "{} listed cubes", list.len()),
        }
    }
}

/// `middle`, a layer number, or a box `x0,x1,y0,y1,z0,z1`.
impl FromStr for SeedRegion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "middle" {
            return Ok(SeedRegion::MiddleLayer);
        }
        let bad = || Error::InvalidSeedRegion(format!("`{s}`: expected `middle`, a layer, or x0,x1,y0,y1,z0,z1"));
        let nums: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match nums[..] {
            [k] => Ok(SeedRegion::Layer(k)),
            [x0, x1, y0, y1, z0, z1] => {
                if x0 >= x1 || y0 >= y1 || z0 >= z1 {
                    return Err(Error::InvalidSeedRegion(format!("`{s}` is an empty box")));
                }
                Ok(SeedRegion::Box {
                    lo: [x0, y0, z0],
                    hi: [x1, y1, z1],
                })
            }
            _ => Err(bad()),
        }
    }
}

/// The single-triangle cubes of the region, in region order.
pub fn select_seeds(v: &Volume, threshold: f64, region: &SeedRegion) -> Result<Vec<CubeIndex>> {
    let seeds: Vec<CubeIndex> = region
        .cubes(v)?
        .into_iter()
        .filter(|c| is_config1(classify_cube(&v.corner_values(*c), threshold)))
        .collect();
    if seeds.is_empty() {
        return Err(Error::NoSeeds {
            region: region.to_string(),
        });
    }
    Ok(seeds)
}
