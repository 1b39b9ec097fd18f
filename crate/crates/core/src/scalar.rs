//! Exact rationals, norms and the infinity sentinel.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, `p/q`. Whitespace around the tokens is ignored.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad rational numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad rational denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Parses a comma separated list of rationals, e.g. `1/2,1/2`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    if s.trim().is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty rational list".into() });
    }
    s.split(',').map(parse_rat).collect()
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_rat_list(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(t: &[Rat], alpha: &[u32]) -> Rat {
    let mut acc = Rat::zero();
    for (x, &a) in t.iter().zip(alpha) {
        if a != 0 {
            acc += x * Rat::from_integer(BigInt::from(a));
        }
    }
    acc
}

pub fn to_rats(alpha: &[u32]) -> Vec<Rat> {
    alpha.iter().map(|&a| int(a as i64)).collect()
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    LInf,
}

impl Norm {
    pub fn dual(self) -> Norm {
        match self {
            Norm::L1 => Norm::LInf,
            Norm::LInf => Norm::L1,
        }
    }

    pub fn eval(self, v: &[Rat]) -> Result<Rat> {
        if v.is_empty() {
            return Err(Error::Arity("norm of an empty vector".into()));
        }
        Ok(match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::LInf => v.iter().map(|x| x.abs()).max().unwrap(),
        })
    }

    pub fn parse(s: &str) -> Result<Norm> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "linf" => Ok(Norm::LInf),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown norm {s:?}") }),
        }
    }
}

pub fn norm_eval(n: Norm, v: &[Rat]) -> Result<Rat> {
    n.eval(v)
}

/// A value that may be `+infinity`, used for valuations of the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext<T> {
    Finite(T),
    Infinity,
}

impl<T> Ext<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Ext::Finite(x) => Some(x),
            Ext::Infinity => None,
        }
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            Ext::Finite(x) => Some(x),
            Ext::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Ext::Infinity)
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(x) => x.fmt(f),
            Ext::Infinity => f.write_str("inf"),
        }
    }
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// Serde adapter writing rationals as `"p/q"` strings and accepting strings or integers.
pub mod serde_rat {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rat(&s).map_err(D::Error::custom),
            Raw::I(i) => Ok(int(i)),
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeSeq;
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rat>, D::Error> {
            let raw: Vec<Raw> = Vec::deserialize(d)?;
            raw.into_iter()
                .map(|r| match r {
                    Raw::S(s) => parse_rat(&s).map_err(D::Error::custom),
                    Raw::I(i) => Ok(int(i)),
                })
                .collect()
        }
    }
}
