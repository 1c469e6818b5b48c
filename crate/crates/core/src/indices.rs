//! First and second Hyper-Zagreb indices.
//!
//! For a hypergraph with degrees `d(v)`:
//!
//! ```text
//! HM1 = sum over edges e of ( sum_{v in e} d(v) )^2
//! HM2 = sum over edges e of ( prod_{v in e} d(v) )^2
//! ```
//!
//! Every value is an exact arbitrary-precision integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::hypergraph::{Edge, Hypergraph};

/// Exact non-negative index value. Serializes as a decimal string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexValue(pub BigUint);

impl IndexValue {
    pub fn zero() -> Self {
        Self(BigUint::zero())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// Nearest `f64`, or `None` when the value exceeds the finite range.
    pub fn to_f64(&self) -> Option<f64> {
        let x = num_traits::ToPrimitive::to_f64(&self.0)?;
        x.is_finite().then_some(x)
    }
}

impl From<BigUint> for IndexValue {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl From<u64> for IndexValue {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<u128> for IndexValue {
    fn from(v: u128) -> Self {
        Self(BigUint::from(v))
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for IndexValue {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigUint::from_str(s.trim()).map(Self)
    }
}

impl Serialize for IndexValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for IndexValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which Hyper-Zagreb index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Index {
    #[serde(rename = "HM1")]
    Hm1,
    #[serde(rename = "HM2")]
    Hm2,
}

impl Index {
    pub const BOTH: [Index; 2] = [Index::Hm1, Index::Hm2];

    pub fn evaluate(self, h: &Hypergraph) -> IndexValue {
        match self {
            Index::Hm1 => hm1(h),
            Index::Hm2 => hm2(h),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Index::Hm1 => "HM1",
            Index::Hm2 => "HM2",
        })
    }
}

impl FromStr for Index {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hm1" => Ok(Index::Hm1),
            "hm2" => Ok(Index::Hm2),
            other => Err(format!("unknown index `{other}` (expected hm1 or hm2)")),
        }
    }
}

/// Degree sum and degree product of one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeContribution {
    pub edge: Vec<u32>,
    pub degree_sum: u64,
    #[serde(serialize_with = "decimal")]
    pub degree_product: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl EdgeContribution {
    fn of(edge: &Edge, degrees: &[usize]) -> Self {
        let mut sum = 0u64;
        let mut product = BigUint::one();
        for &v in edge.members() {
            let d = degrees[v as usize] as u64;
            sum += d;
            product *= d;
        }
        Self {
            edge: edge.members().to_vec(),
            degree_sum: sum,
            degree_product: product,
        }
    }

    pub fn hm1_term(&self) -> BigUint {
        let s = BigUint::from(self.degree_sum);
        &s * &s
    }

    pub fn hm2_term(&self) -> BigUint {
        &self.degree_product * &self.degree_product
    }
}

/// One contribution per edge, in canonical edge order.
pub fn edge_contributions(h: &Hypergraph) -> Vec<EdgeContribution> {
    h.edges().iter().map(|e| EdgeContribution::of(e, h.degrees())).collect()
}

pub fn hm1(h: &Hypergraph) -> IndexValue {
    let degrees = h.degrees();
    let total = h.edges().iter().fold(BigUint::zero(), |acc, e| {
        let s: u64 = e.members().iter().map(|&v| degrees[v as usize] as u64).sum();
        let s = BigUint::from(s);
        acc + &s * &s
    });
    IndexValue(total)
}

pub fn hm2(h: &Hypergraph) -> IndexValue {
    let degrees = h.degrees();
    let total = h.edges().iter().fold(BigUint::zero(), |acc, e| {
        let p = e
            .members()
            .iter()
            .fold(BigUint::one(), |p, &v| p * degrees[v as usize] as u64);
        acc + &p * &p
    });
    IndexValue(total)
}

/// Both indices at once.
pub fn indices(h: &Hypergraph) -> (IndexValue, IndexValue) {
    (hm1(h), hm2(h))
}
