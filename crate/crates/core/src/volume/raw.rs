//! Headerless binary volumes with a JSON sidecar descriptor.
//!
//! The descriptor looks like:
//!
//! ```json
//! {
//!   "data_file": "head.raw",
//!   "dims": [256, 256, 145],
//!   "value_type": "u16",
//!   "endianness": "little",
//!   "spacing": [0.9, 0.9, 1.25]
//! }
//! ```
//!
//! `data_file` is resolved relative to the descriptor. `endianness` and
//! `spacing` are optional (little, unit spacing). Samples are stored x
//! fastest, z slowest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::Volume;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    U8,
    U16,
    F32,
}

impl ValueKind {
    pub fn width(self) -> usize {
        match self {
            ValueKind::U8 => 1,
            ValueKind::U16 => 2,
            ValueKind::F32 => 4,
        }
    }
}

impl std::str::FromStr for ValueKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "u8" => Ok(ValueKind::U8),
            "u16" => Ok(ValueKind::U16),
            "f32" => Ok(ValueKind::F32),
            other => Err(format!("unknown value type `{other}` (expected u8, u16 or f32)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endianness {
    #[default]
    Little,
    Big,
}

fn unit_spacing() -> [f64; 3] {
    [1.0; 3]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDescriptor {
    pub data_file: PathBuf,
    pub dims: [usize; 3],
    pub value_type: ValueKind,
    #[serde(default)]
    pub endianness: Endianness,
    #[serde(default = "unit_spacing")]
    pub spacing: [f64; 3],
}

impl RawDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Loads the volume the descriptor points at; `base` is the directory
    /// relative paths are resolved against.
    pub fn load(&self, base: &Path) -> Result<Volume> {
        let path = base.join(&self.data_file);
        let v = load_raw(&path, self.dims, self.value_type, self.endianness)?;
        Volume::with_spacing(self.dims, self.spacing, v.values)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// Reads a descriptor and the volume it references.
pub fn read_descriptor(path: &Path) -> Result<(RawDescriptor, Volume)> {
    let desc = RawDescriptor::parse(&fs::read_to_string(path)?)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let v = desc.load(base)?;
    Ok((desc, v))
}

pub fn load_raw(
    path: &Path,
    dims: [usize; 3],
    kind: ValueKind,
    endianness: Endianness,
) -> Result<Volume> {
    let bytes = fs::read(path)?;
    decode_raw(&bytes, dims, kind, endianness)
}

/// Decodes an in-memory raw blob.
pub fn decode_raw(
    bytes: &[u8],
    dims: [usize; 3],
    kind: ValueKind,
    endianness: Endianness,
) -> Result<Volume> {
    let expected = dims
        .iter()
        .try_fold(kind.width() as u64, |acc, &d| acc.checked_mul(d as u64))
        .unwrap_or(u64::MAX);
    if expected != bytes.len() as u64 {
        return Err(Error::SizeMismatch {
            dims,
            expected,
            found: bytes.len() as u64,
        });
    }
    let big = endianness == Endianness::Big;
    let values: Vec<f32> = match kind {
        ValueKind::U8 => bytes.iter().map(|&b| b as f32).collect(),
        ValueKind::U16 => bytes
            .chunks_exact(2)
            .map(|c| {
                let b = [c[0], c[1]];
                (if big { u16::from_be_bytes(b) } else { u16::from_le_bytes(b) }) as f32
            })
            .collect(),
        ValueKind::F32 => bytes
            .chunks_exact(4)
            .map(|c| {
                let b = [c[0], c[1], c[2], c[3]];
                if big {
                    f32::from_be_bytes(b)
                } else {
                    f32::from_le_bytes(b)
                }
            })
            .collect(),
    };
    Volume::new(dims, values)
}

/// Encodes the volume in the given layout. Values are rounded and saturated
/// for the integer kinds.
pub fn encode_raw(v: &Volume, kind: ValueKind, endianness: Endianness) -> Vec<u8> {
    let big = endianness == Endianness::Big;
    let mut out = Vec::with_capacity(v.values().len() * kind.width());
    for &x in v.values() {
        match kind {
            ValueKind::U8 => out.push(x.round().clamp(0.0, 255.0) as u8),
            ValueKind::U16 => {
                let s = x.round().clamp(0.0, 65535.0) as u16;
                out.extend_from_slice(&if big { s.to_be_bytes() } else { s.to_le_bytes() });
            }
            ValueKind::F32 => {
                out.extend_from_slice(&if big { x.to_be_bytes() } else { x.to_le_bytes() })
            }
        }
    }
    out
}

pub fn write_raw(v: &Volume, path: &Path, kind: ValueKind, endianness: Endianness) -> Result<()> {
    fs::write(path, encode_raw(v, kind, endianness))?;
    Ok(())
}
