//! Map files:
//!
//! ```text
//! # comment
//! field: t^4+1
//! map P2 [p0, p1, p2]        or   map A2 [f1(x,y), f2(x,y)]
//! inverse P2 [q0, q1, q2]    (optional, same forms as map)
//! pencil: (1:0:0)            (optional)
//! ```

use super::affine::AffineBirMap;
use super::map::RationalMapP2;
use crate::error::{Error, Result};
use crate::exactalg::parse::split_list;
use crate::exactalg::{parse_poly, parse_scalar, Field, Scalar};

#[derive(Debug, Clone)]
pub struct MapFile {
    pub field: Field,
    pub map: RationalMapP2,
    pub affine: Option<AffineBirMap>,
    pub inverse: Option<RationalMapP2>,
    pub pencil: Option<[Scalar; 3]>,
}

/// Parses `(a:b:c)`.
pub fn parse_point(field: &Field, src: &str) -> Result<[Scalar; 3]> {
    let s = src.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected (a:b:c), got {s:?}")))?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three coordinates in {s:?}")));
    }
    let v: Vec<Scalar> = parts.iter().map(|p| parse_scalar(field, p)).collect::<Result<_>>()?;
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::Parse("(0:0:0) is not a point".into()));
    }
    Ok(v.try_into().unwrap())
}

/// Parses `P2 [..]` or `A2 [..]`.
pub fn parse_map_body(field: &Field, body: &str) -> Result<(RationalMapP2, Option<AffineBirMap>)> {
    let body = body.trim();
    let (kind, list) = body.split_at(body.find('[').ok_or_else(|| Error::Parse("expected [ ... ]".into()))?);
    let entries = split_list(list)?;
    match kind.trim() {
        "P2" => {
            if entries.len() != 3 {
                return Err(Error::Parse(format!("P2 map needs 3 components, got {}", entries.len())));
            }
            let c: Vec<_> = entries.iter().map(|e| parse_poly(field, e)).collect::<Result<_>>()?;
            let [a, b, c]: [_; 3] = c.try_into().unwrap();
            Ok((RationalMapP2::new([a, b, c])?, None))
        }
        "A2" => {
            if entries.len() != 2 {
                return Err(Error::Parse(format!("A2 map needs 2 components, got {}", entries.len())));
            }
            let a = AffineBirMap::parse(field, &entries[0], &entries[1])?;
            Ok((a.to_p2()?, Some(a)))
        }
        other => Err(Error::Parse(format!("unknown map kind {other:?} (expected P2 or A2)"))),
    }
}

impl MapFile {
    /// Parses a map file; `field_override` replaces any `field:` header.
    pub fn parse(src: &str, field_override: Option<&Field>) -> Result<Self> {
        let mut field = Field::Rational;
        let mut map_src = None;
        let mut inv_src = None;
        let mut pencil_src = None;
        for raw in src.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("field:") {
                field = Field::parse(rest)?;
            } else if let Some(rest) = line.strip_prefix("map") {
                map_src = Some(rest.to_string());
            } else if let Some(rest) = line.strip_prefix("inverse") {
                inv_src = Some(rest.to_string());
            } else if let Some(rest) = line.strip_prefix("pencil:") {
                pencil_src = Some(rest.to_string());
            } else if line.starts_with("torus:") {
                continue;
            } else {
                return Err(Error::Parse(format!("unrecognized line {line:?}")));
            }
        }
        if let Some(f) = field_override {
            field = f.clone();
        }
        let map_src = map_src.ok_or_else(|| Error::Parse("no `map` line".into()))?;
        let (map, affine) = parse_map_body(&field, &map_src)?;
        let inverse = inv_src.map(|s| parse_map_body(&field, &s).map(|m| m.0)).transpose()?;
        let pencil = pencil_src.map(|s| parse_point(&field, &s)).transpose()?;
        Ok(Self { field, map, affine, inverse, pencil })
    }
}
