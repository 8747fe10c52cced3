//! JSON conventions shared by all reports: rationals are `{"num", "den"}`
//! objects with integer (arbitrary precision) fields, extension scalars are
//! `{"coords": [...]}` in the basis 1, t, ..., and every top-level report
//! carries the schema version.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::exactalg::{Field, Scalar};

pub const SCHEMA_VERSION: &str = "1.0.0";

pub fn report_schema_version() -> &'static str {
    SCHEMA_VERSION
}

fn int_to_number(n: &BigInt) -> Number {
    n.to_string().parse().expect("integers are valid JSON numbers")
}

fn number_to_int<E: serde::de::Error>(n: &Number) -> Result<BigInt, E> {
    n.to_string().parse().map_err(|_| E::custom(format!("expected an integer, got {n}")))
}

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: Number,
    den: Number,
}

impl RatRepr {
    fn from_rational(q: &BigRational) -> Self {
        Self { num: int_to_number(q.numer()), den: int_to_number(q.denom()) }
    }

    fn to_rational<E: serde::de::Error>(&self) -> Result<BigRational, E> {
        let den = number_to_int::<E>(&self.den)?;
        if den.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(BigRational::new(number_to_int::<E>(&self.num)?, den))
    }
}

/// `#[serde(with = "rational")]` for `BigRational` fields.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RatRepr::from_rational(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RatRepr::deserialize(d)?.to_rational()
    }
}

/// `#[serde(with = "rational_opt")]` for `Option<BigRational>` fields.
pub mod rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(RatRepr::from_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<RatRepr>::deserialize(d)?.map(|r| r.to_rational()).transpose()
    }
}

/// `#[serde(with = "rational_vec")]` for `Vec<BigRational>` fields.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(RatRepr::from_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?.iter().map(RatRepr::to_rational).collect()
    }
}

/// `#[serde(with = "bigint")]` for `BigInt` fields.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        int_to_number(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        number_to_int(&Number::deserialize(d)?)
    }
}

/// A field element as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonScalar(pub Scalar);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rat(RatRepr),
    Ext { coords: Vec<RatRepr> },
}

impl Serialize for JsonScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Scalar::Rat(q) => ScalarRepr::Rat(RatRepr::from_rational(q)),
            Scalar::Ext(v) => ScalarRepr::Ext { coords: v.iter().map(RatRepr::from_rational).collect() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(JsonScalar(match ScalarRepr::deserialize(d)? {
            ScalarRepr::Rat(r) => Scalar::Rat(r.to_rational()?),
            ScalarRepr::Ext { coords } => {
                if coords.is_empty() {
                    return Err(D::Error::custom("empty coordinate list"));
                }
                Scalar::Ext(coords.iter().map(RatRepr::to_rational).collect::<Result<_, _>>()?)
            }
        }))
    }
}

impl JsonScalar {
    pub fn point(p: &[Scalar; 3]) -> [JsonScalar; 3] {
        std::array::from_fn(|i| JsonScalar(p[i].clone()))
    }

    /// Checks the element against a field context.
    pub fn into_scalar(self, field: &Field) -> crate::Result<Scalar> {
        field.check(&self.0)?;
        Ok(self.0)
    }
}
