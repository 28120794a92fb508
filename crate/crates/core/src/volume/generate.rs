//! Synthetic test volumes.

use serde::{Deserialize, Serialize};

use super::Volume;
use crate::error::{Error, Result};

const MC_EXAMPLE_SIZE: usize = 10;

// (row, col) pairs, 1-based as printed. The printed listing has 12 rows for
// a 10x10 layer; one all-zero row is dropped at each end, so printed row r
// lands on y = r - 2.
const MC_EXAMPLE_THIN: [(usize, usize); 7] = [(3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 8), (9, 9)];
const MC_EXAMPLE_THICK: [(usize, &[usize]); 8] = [
    (3, &[3, 4]),
    (4, &[3, 4, 5]),
    (5, &[4, 5, 6]),
    (6, &[5, 6, 7]),
    (7, &[6, 7, 8]),
    (8, &[7, 8, 9]),
    (9, &[8, 9]),
    (10, &[9]),
];

/// The 10x10x10 diagonal-band volume used to expose marching cubes holes.
///
/// All layers are zero except 1-based layers 5 (a one-cell diagonal) and
/// 6, 7 (an identical 2-3 cell thick diagonal). Rows map to y, columns to
/// x, layers to z.
pub fn mc_example(a: f32) -> Result<Volume> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidGenerator(format!("mc-example needs a > 0, got {a}")));
    }
    let n = MC_EXAMPLE_SIZE;
    let mut values = vec![0.0f32; n * n * n];
    let mut set = |row: usize, col: usize, layer: usize| {
        values[(col - 1) + n * ((row - 2) + n * (layer - 1))] = a;
    };
    for (row, col) in MC_EXAMPLE_THIN {
        set(row, col, 5);
    }
    for layer in [6, 7] {
        for (row, cols) in MC_EXAMPLE_THICK {
            for &col in cols {
                set(row, col, layer);
            }
        }
    }
    Volume::new([n; 3], values)
}

/// A ball in grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: [f64; 3],
    pub radius: f64,
}

impl Sphere {
    fn contains(&self, p: [f64; 3]) -> bool {
        let d2: f64 = (0..3).map(|i| (p[i] - self.center[i]).powi(2)).sum();
        d2 <= self.radius * self.radius
    }

    fn check(&self, dims: [usize; 3]) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidGenerator(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        for a in 0..3 {
            let (lo, hi) = (self.center[a] - self.radius, self.center[a] + self.radius);
            if lo < 0.0 || hi > (dims[a] - 1) as f64 {
                return Err(Error::InvalidGenerator(format!(
                    "sphere at {:?} with radius {} does not fit in {:?}",
                    self.center, self.radius, dims
                )));
            }
        }
        Ok(())
    }

    /// Box of the cubes with a corner inside the ball. Any surface that
    /// separates the ball's samples from the rest stays within it.
    pub fn support_box(&self) -> ([f64; 3], [f64; 3]) {
        (
            self.center.map(|c| (c - self.radius).ceil() - 1.0),
            self.center.map(|c| (c + self.radius).floor() + 1.0),
        )
    }
}

fn check_dims(dims: [usize; 3]) -> Result<()> {
    if dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidGenerator(format!("dims {dims:?} too small")));
    }
    Ok(())
}

fn point(x: usize, y: usize, z: usize) -> [f64; 3] {
    [x as f64, y as f64, z as f64]
}

pub fn gen_sphere(dims: [usize; 3], sphere: Sphere, inside: f32, outside: f32) -> Result<Volume> {
    check_dims(dims)?;
    sphere.check(dims)?;
    Volume::from_fn(dims, |x, y, z| {
        if sphere.contains(point(x, y, z)) {
            inside
        } else {
            outside
        }
    })
}

/// Two balls with disjoint supports.
pub fn gen_two_spheres(
    dims: [usize; 3],
    first: Sphere,
    second: Sphere,
    inside: f32,
    outside: f32,
) -> Result<Volume> {
    check_dims(dims)?;
    first.check(dims)?;
    second.check(dims)?;
    let d: f64 = (0..3)
        .map(|i| (first.center[i] - second.center[i]).powi(2))
        .sum::<f64>()
        .sqrt();
    if d <= first.radius + second.radius {
        return Err(Error::InvalidGenerator("spheres overlap".into()));
    }
    Volume::from_fn(dims, |x, y, z| {
        let p = point(x, y, z);
        if first.contains(p) || second.contains(p) {
            inside
        } else {
            outside
        }
    })
}

/// A ball of radius `outer` with a concentric cavity of radius `inner`.
pub fn gen_shell(
    dims: [usize; 3],
    center: [f64; 3],
    outer: f64,
    inner: f64,
    inside: f32,
    outside: f32,
) -> Result<Volume> {
    check_dims(dims)?;
    let shell = Sphere {
        center,
        radius: outer,
    };
    shell.check(dims)?;
    if !(inner > 0.0 && inner < outer) {
        return Err(Error::InvalidGenerator(format!(
            "cavity radius {inner} must lie in (0, {outer})"
        )));
    }
    let cavity = Sphere {
        center,
        radius: inner,
    };
    Volume::from_fn(dims, |x, y, z| {
        let p = point(x, y, z);
        if shell.contains(p) && !cavity.contains(p) {
            inside
        } else {
            outside
        }
    })
}

fn default_a() -> f32 {
    100.0
}
fn default_inside() -> f32 {
    100.0
}
fn default_outside() -> f32 {
    0.0
}

/// A named generator with its parameters, as used by the CLI and bench
/// suites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Generator {
    McExample {
        #[serde(default = "default_a")]
        a: f32,
    },
    Sphere {
        dims: [usize; 3],
        sphere: Sphere,
        #[serde(default = "default_inside")]
        inside: f32,
        #[serde(default = "default_outside")]
        outside: f32,
    },
    TwoSpheres {
        dims: [usize; 3],
        first: Sphere,
        second: Sphere,
        #[serde(default = "default_inside")]
        inside: f32,
        #[serde(default = "default_outside")]
        outside: f32,
    },
    Shell {
        dims: [usize; 3],
        center: [f64; 3],
        outer: f64,
        inner: f64,
        #[serde(default = "default_inside")]
        inside: f32,
        #[serde(default = "default_outside")]
        outside: f32,
    },
}

impl Generator {
    /// Default sphere: radius `0.3 n` in an `n`-cube, centred slightly off
    /// the grid middle so the surface avoids symmetric grid alignments.
    pub fn sphere(n: usize) -> Self {
        let c = (n as f64 - 1.0) / 2.0 + 0.17;
        Generator::Sphere {
            dims: [n; 3],
            sphere: Sphere {
                center: [c, c - 0.09, c + 0.05],
                radius: (n as f64 * 0.3).min(c - 1.0),
            },
            inside: 100.0,
            outside: 0.0,
        }
    }

    /// Default pair: two balls side by side along x.
    pub fn two_spheres(n: usize) -> Self {
        let c = (n as f64 - 1.0) / 2.0 + 0.13;
        let r = n as f64 * 0.18;
        Generator::TwoSpheres {
            dims: [n; 3],
            first: Sphere {
                center: [n as f64 * 0.27, c, c + 0.07],
                radius: r,
            },
            second: Sphere {
                center: [n as f64 * 0.72, c - 0.11, c],
                radius: r,
            },
            inside: 100.0,
            outside: 0.0,
        }
    }

    pub fn shell(n: usize) -> Self {
        let c = (n as f64 - 1.0) / 2.0 + 0.17;
        Generator::Shell {
            dims: [n; 3],
            center: [c, c - 0.09, c + 0.05],
            outer: n as f64 * 0.4,
            inner: n as f64 * 0.2,
            inside: 100.0,
            outside: 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::McExample { .. } => "mc-example",
            Generator::Sphere { .. } => "sphere",
            Generator::TwoSpheres { .. } => "two-spheres",
            Generator::Shell { .. } => "shell",
        }
    }

    /// A generator by name with its default layout at size `n`. Only
    /// `mc-example` uses `a`, and it is always 10 cubed.
    pub fn named(name: &str, n: usize, a: f32) -> Result<Generator> {
        Ok(match name {
            "mc-example" => Generator::McExample { a },
            "sphere" => Generator::sphere(n),
            "two-spheres" => Generator::two_spheres(n),
            "shell" => Generator::shell(n),
            _ => {
                return Err(Error::InvalidGenerator(format!(
                    "unknown generator `{name}`; expected mc-example, sphere, two-spheres or shell"
                )))
            }
        })
    }

    pub fn build(&self) -> Result<Volume> {
        match self {
            Generator::McExample { a } => mc_example(*a),
            Generator::Sphere {
                dims,
                sphere,
                inside,
                outside,
            } => gen_sphere(*dims, *sphere, *inside, *outside),
            Generator::TwoSpheres {
                dims,
                first,
                second,
                inside,
                outside,
            } => gen_two_spheres(*dims, *first, *second, *inside, *outside),
            Generator::Shell {
                dims,
                center,
                outer,
                inner,
                inside,
                outside,
            } => gen_shell(*dims, *center, *outer, *inner, *inside, *outside),
        }
    }
}
