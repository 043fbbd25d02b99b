use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::vector::{LatticeVector, RationalPoint};
use crate::arith::{format_rational, parse_rational};

/// Integer accepted from JSON as either a number or a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum LooseBigInt {
    Int(i64),
    Text(String),
}

impl LooseBigInt {
    pub fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            LooseBigInt::Int(i) => Ok(BigInt::from(i)),
            LooseBigInt::Text(s) => s.trim().parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

/// Integer written to JSON as a number when it fits in `i64`, else as a string.
#[derive(Serialize)]
#[serde(untagged)]
pub enum BigIntRepr {
    Int(i64),
    Text(String),
}

impl From<&BigInt> for BigIntRepr {
    fn from(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(i) => BigIntRepr::Int(i),
            None => BigIntRepr::Text(b.to_string()),
        }
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<BigIntRepr> = self.0.iter().map(BigIntRepr::from).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<LooseBigInt>::deserialize(d)?;
        if raw.len() != 3 {
            return Err(D::Error::custom(format!("expected 3 coordinates, got {}", raw.len())));
        }
        let mut it = raw.into_iter();
        let mut next = || it.next().unwrap().into_bigint::<D::Error>();
        Ok(LatticeVector([next()?, next()?, next()?]))
    }
}

/// Matrices are arrays of rows of decimal strings.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.row_vectors().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<LooseBigInt>>::deserialize(d)?;
        let rows = raw
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.into_bigint::<D::Error>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        IntegerMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LooseRational {
    Int(i64),
    Text(String),
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<LooseRational>::deserialize(d)?;
        if raw.len() != 3 {
            return Err(D::Error::custom(format!("expected 3 coordinates, got {}", raw.len())));
        }
        let parsed = raw
            .into_iter()
            .map(|x| match x {
                LooseRational::Int(i) => Ok(crate::arith::rat_int(i)),
                LooseRational::Text(t) => parse_rational(&t).map_err(D::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c]: [_; 3] = parsed.try_into().unwrap();
        Ok(RationalPoint([a, b, c]))
    }
}
