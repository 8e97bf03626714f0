//! JSON encoding of arbitrary-precision integers.
//!
//! Integers that fit in an `i64` are written as JSON numbers; anything larger
//! is written as a decimal string. Both forms are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
                if v.fract() == 0.0 && v.abs() < 9.0e15 {
                    Ok(JsonInt((v as i64).into()))
                } else {
                    Err(E::custom(format!("{v} is not an exact integer")))
                }
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                BigInt::from_str(v.trim())
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub(crate) fn to_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(JsonInt).collect())
        .collect()
}

pub(crate) fn from_rows(rows: Vec<Vec<JsonInt>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| x.0).collect())
        .collect()
}

pub(crate) mod rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        to_rows(rows).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<JsonInt>>::deserialize(d).map(from_rows)
    }
}

pub(crate) mod vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .cloned()
            .map(JsonInt)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<JsonInt>::deserialize(d).map(|v| v.into_iter().map(|x| x.0).collect())
    }
}

pub(crate) mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }
}

pub(crate) mod opt_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(JsonInt).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<JsonInt>::deserialize(d).map(|v| v.map(|x| x.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_are_numbers_large_are_strings() {
        let small = serde_json::to_string(&JsonInt(BigInt::from(-7))).unwrap();
        assert_eq!(small, "-7");
        let big: BigInt = BigInt::from(10).pow(30);
        let s = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(s, format!("\"{big}\""));
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, big);
    }

    #[test]
    fn rejects_fractional_numbers() {
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
    }
}
