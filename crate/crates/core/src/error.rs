use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by volume ingestion, extraction and mesh I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid volume: {0}")]
    InvalidVolume(String),

    #[error("raw data size mismatch: expected {expected} bytes for {dims:?}, found {found}")]
    SizeMismatch {
        dims: [usize; 3],
        expected: u64,
        found: u64,
    },

    #[error("slice {index} is {found:?}, expected {expected:?}")]
    SliceMismatch {
        index: usize,
        expected: (u32, u32),
        found: (u32, u32),
    },

    #[error("cube {0:?} is outside the volume")]
    CubeOutOfRange([usize; 3]),

    #[error("edge values {0} and {1} do not cross the threshold")]
    NoCrossing(f64, f64),

    #[error("invalid interpolation parameters: {0}")]
    InvalidInterpParams(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("malformed growth edge: {0}")]
    MalformedEdge(String),

    #[error(
        "no seed triangles found in {region}; widen the seed region or pick another layer"
    )]
    NoSeeds { region: String },

    #[error("invalid seed region: {0}")]
    InvalidSeedRegion(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("descriptor: {0}")]
    Descriptor(#[from] serde_json::Error),

    #[error("image {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
