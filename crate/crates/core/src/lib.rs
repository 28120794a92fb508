//! Iso-surface extraction from scalar volumes: a marching cubes baseline
//! and an edge-growth reconstruction that follows the surface outward from
//! single-triangle seed cubes and never leaves ambiguity holes.

pub mod cube;
mod error;
pub mod growth;
pub mod interp;
pub mod mc;
pub mod mesh;
pub mod patch;
pub mod surface;
pub mod volume;

pub use error::{Error, Result};
