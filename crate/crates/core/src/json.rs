//! Small serialization helpers shared by the report types.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::rational::Rational;

pub(crate) fn entry_int<M: SerializeMap>(map: &mut M, key: &str, n: &BigInt) -> Result<(), M::Error> {
    match n.to_i64() {
        Some(v) => map.serialize_entry(key, &v),
        None => map.serialize_entry(key, &n.to_string()),
    }
}

/// A rational as a bare JSON integer when integral, otherwise `"p/q"`.
pub struct Compact<'a>(pub &'a Rational);

impl Serialize for Compact<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (self.0.is_integer(), self.0.numer().to_i64()) {
            (true, Some(v)) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}
