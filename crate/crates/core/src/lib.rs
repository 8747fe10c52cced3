//! Exact computations with birational maps of the projective plane.

pub mod cremap;
pub mod dynamics;
pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod groups;
pub mod halphen;
pub mod report;
pub mod torus_normal;

pub use error::{Error, Result};
