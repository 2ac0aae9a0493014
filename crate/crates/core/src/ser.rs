//! Serde helpers. Big integers travel as decimal strings, except inside
//! forms, which are plain JSON integer arrays of arbitrary size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn big_opt<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    n.as_ref().map(|v| v.to_string()).serialize(s)
}

pub fn big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().serialize(s)
}

pub fn big_vec_de<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    use serde::de::Error as _;
    Vec::<String>::deserialize(d)?
        .iter()
        .map(|s| s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}"))))
        .collect()
}

/// A big integer as a JSON number token (exact, thanks to serde_json's
/// arbitrary-precision numbers).
pub(crate) fn json_number(n: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub(crate) fn from_json_number<E: serde::de::Error>(n: &serde_json::Number) -> Result<BigInt, E> {
    let s = n.to_string();
    s.parse().map_err(|_| E::custom(format!("expected an integer, got {s}")))
}

pub fn json_big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    json_number(n).serialize(s)
}
