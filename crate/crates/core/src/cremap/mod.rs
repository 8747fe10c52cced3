//! Rational maps of the projective plane and of the affine chart z = 1.

pub mod affine;
pub mod inverse;
pub mod map;
pub mod mapfile;

pub use affine::AffineBirMap;
pub use inverse::solve_inverse;
pub use map::{commutes, conjugate, verify_inverse, RationalMapP2, DEFAULT_BIT_CAP};
pub use mapfile::{parse_map_body, parse_point, MapFile};

use crate::error::Result;
use crate::exactalg::{parse_poly, Field};

/// Builds a P2 map from three component strings.
pub fn make_map(field: &Field, comps: [&str; 3]) -> Result<RationalMapP2> {
    let [a, b, c] = comps.map(|s| parse_poly(field, s));
    RationalMapP2::new([a?, b?, c?])
}

/// Builds a P2 map from an affine pair.
pub fn make_affine_map(field: &Field, f1: &str, f2: &str) -> Result<RationalMapP2> {
    AffineBirMap::parse(field, f1, f2)?.to_p2()
}

#[cfg(test)]
mod tests;
