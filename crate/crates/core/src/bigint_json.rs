//! JSON encoding for arbitrary-precision integers: a plain number when the
//! value fits in `i64`, a decimal string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Json(pub BigInt);

impl From<&BigInt> for Json {
    fn from(b: &BigInt) -> Self {
        Json(b.clone())
    }
}

impl From<Json> for BigInt {
    fn from(j: Json) -> Self {
        j.0
    }
}

impl serde::Serialize for Json {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for Json {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize(d).map(Json)
    }
}

pub fn serialize<S: Serializer>(b: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match b.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&b.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    struct V;
    impl Visitor<'_> for V {
        type Value = BigInt;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a decimal string")
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            v.parse().map_err(E::custom)
        }
    }
    d.deserialize_any(V)
}

/// `#[serde(with = "crate::bigint_json::vec")]`
pub mod vec {
    use super::Json;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(Json::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<Json>::deserialize(d)?
            .into_iter()
            .map(|j| j.0)
            .collect())
    }
}
