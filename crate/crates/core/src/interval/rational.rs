//! Exact scalars: arbitrary-precision rationals and their extension by ±∞.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^-n` as an exact rational.
pub fn dyadic(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Prints `p/q`, or `p` for integers. Never decimal.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Smallest integer `k ≥ 0` with `2^k ≥ x`.
pub fn ceil_log2(x: &Rational) -> u32 {
    let mut k = 0u32;
    let mut p = Rational::one();
    while &p < x {
        p *= int(2);
        k += 1;
    }
    k
}

/// A rational or one of the two infinities, totally ordered with
/// `-∞ < every rational < +∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedRational {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedRational::NegInfinity => ExtendedRational::PosInfinity,
            ExtendedRational::PosInfinity => ExtendedRational::NegInfinity,
            ExtendedRational::Finite(r) => ExtendedRational::Finite(-r),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            ExtendedRational::Finite(r) => ExtendedRational::Finite(r.abs()),
            _ => ExtendedRational::PosInfinity,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PosInfinity, NegInfinity) | (NegInfinity, PosInfinity) => {
                Err(Error::UndefinedInfinityArithmetic("∞ - ∞"))
            }
            (PosInfinity, _) | (_, PosInfinity) => Ok(PosInfinity),
            (NegInfinity, _) | (_, NegInfinity) => Ok(NegInfinity),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_scale(&self, c: &Rational) -> Result<Self> {
        match self {
            ExtendedRational::Finite(r) => Ok(ExtendedRational::Finite(r * c)),
            _ if c.is_zero() => Err(Error::UndefinedInfinityArithmetic("0 · ∞")),
            inf if c.is_positive() => Ok(inf.clone()),
            inf => Ok(inf.neg()),
        }
    }

    /// Compares against a finite threshold.
    pub fn cmp_rational(&self, t: &Rational) -> Ordering {
        match self {
            ExtendedRational::NegInfinity => Ordering::Less,
            ExtendedRational::PosInfinity => Ordering::Greater,
            ExtendedRational::Finite(r) => r.cmp(t),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInfinity => f.write_str("-inf"),
            ExtendedRational::PosInfinity => f.write_str("+inf"),
            ExtendedRational::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" | "+∞" | "∞" => Ok(ExtendedRational::PosInfinity),
            "-inf" | "-∞" => Ok(ExtendedRational::NegInfinity),
            other => parse_rational(other).map(ExtendedRational::Finite),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    /// Same as the parent module for `Option<Rational>`, with `null` for `None`.
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
