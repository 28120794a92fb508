//! Placement of iso-surface vertices on cube edges.
//!
//! Besides plain linear interpolation and midpoint placement this offers
//! three-segment interpolation: the linear ratio `k` is quantised to one of
//! `{q, 0.5, p}` by comparing it against a lower limit `m` and an upper
//! limit `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::Point3;

/// Whether a gray value lies strictly above the threshold. A value equal to
/// the threshold counts as outside.
#[inline]
pub fn is_inside(hu: f64, threshold: f64) -> bool {
    hu > threshold
}

/// Whether the edge between two gray values crosses the iso-surface.
#[inline]
pub fn crosses(hu1: f64, hu2: f64, threshold: f64) -> bool {
    is_inside(hu1, threshold) != is_inside(hu2, threshold)
}

/// Quantisation parameters for three-segment interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterpParams {
    q: f64,
    m: f64,
    n: f64,
    p: f64,
}

impl InterpParams {
    pub const DEFAULT: InterpParams = InterpParams {
        q: 0.25,
        m: 0.3,
        n: 0.7,
        p: 0.75,
    };

    /// Requires `0 < q < m < n < p < 1` and `q + p = 1`.
    pub fn new(q: f64, m: f64, n: f64, p: f64) -> Result<Self> {
        if !(0.0 < q && q < m && m < n && n < p && p < 1.0) {
            return Err(Error::InvalidInterpParams(format!(
                "need 0 < q < m < n < p < 1, got q={q} m={m} n={n} p={p}"
            )));
        }
        if ((q + p) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInterpParams(format!(
                "need q + p = 1, got {}",
                q + p
            )));
        }
        Ok(InterpParams { q, m, n, p })
    }

    pub fn lower_value(&self) -> f64 {
        self.q
    }
    pub fn lower_limit(&self) -> f64 {
        self.m
    }
    pub fn upper_limit(&self) -> f64 {
        self.n
    }
    pub fn upper_value(&self) -> f64 {
        self.p
    }
}

impl Default for InterpParams {
    fn default() -> Self {
        InterpParams::DEFAULT
    }
}

impl FromStr for InterpParams {
    type Err = Error;

    /// Parses `q,m,n,p`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInterpParams(format!("`{s}`: {e}")))?;
        match parts[..] {
            [q, m, n, p] => InterpParams::new(q, m, n, p),
            _ => Err(Error::InvalidInterpParams(format!(
                "`{s}`: expected four comma-separated numbers q,m,n,p"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum InterpMode {
    Linear,
    Midpoint,
    ThreeSegment(InterpParams),
}

impl Default for InterpMode {
    fn default() -> Self {
        InterpMode::ThreeSegment(InterpParams::DEFAULT)
    }
}

impl fmt::Display for InterpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpMode::Linear => f.write_str("linear"),
            InterpMode::Midpoint => f.write_str("midpoint"),
            InterpMode::ThreeSegment(p) => {
                write!(f, "three-segment({},{},{},{})", p.q, p.m, p.n, p.p)
            }
        }
    }
}

/// `k = (Y - hu1) / (hu2 - hu1)`.
pub fn interp_ratio(hu1: f64, hu2: f64, threshold: f64) -> Result<f64> {
    if hu1 == hu2 {
        return Err(Error::NoCrossing(hu1, hu2));
    }
    let k = (threshold - hu1) / (hu2 - hu1);
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::NoCrossing(hu1, hu2));
    }
    Ok(k)
}

/// Quantises `k` to `q`, `0.5` or `p`, keeping its sign. Both limits are
/// strict: `|k| == m` and `|k| == n` map to `0.5`.
pub fn snap_three_segment(k: f64, params: &InterpParams) -> f64 {
    let mag = k.abs();
    let snapped = if mag < params.m {
        params.q
    } else if mag > params.n {
        params.p
    } else {
        0.5
    };
    snapped.copysign(k)
}

impl InterpMode {
    /// Final ratio along the edge for a raw linear ratio `k`.
    pub fn ratio(&self, k: f64) -> f64 {
        match self {
            InterpMode::Linear => k,
            InterpMode::Midpoint => 0.5,
            InterpMode::ThreeSegment(params) => snap_three_segment(k, params),
        }
    }
}

/// Intersection point of the iso-surface with the edge `p1`-`p2`.
pub fn edge_intersection(
    p1: Point3,
    p2: Point3,
    hu1: f64,
    hu2: f64,
    threshold: f64,
    mode: &InterpMode,
) -> Result<Point3> {
    let k = mode.ratio(interp_ratio(hu1, hu2, threshold)?);
    Ok(lerp(p1, p2, k))
}

#[inline]
pub(crate) fn lerp(a: Point3, b: Point3, t: f64) -> Point3 {
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}
