//! JSON number encoding for big integers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

fn number(s: String) -> Number {
    Number::from_str(&s).expect("decimal integer is a JSON number")
}

pub(crate) fn ser_int_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|x| number(x.to_string())).collect::<Vec<_>>().serialize(s)
}

pub(crate) fn ser_uint_rows<S: Serializer>(rows: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
    rows.iter()
        .map(|r| r.iter().map(|x| number(x.to_string())).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

pub(crate) fn de_uint_rows<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
    let rows = Vec::<Vec<Number>>::deserialize(d)?;
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|n| BigUint::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("expected a nonnegative integer, found {n}"))))
                .collect()
        })
        .collect()
}
