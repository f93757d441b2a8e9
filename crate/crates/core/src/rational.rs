//! Extended rationals ℚ ∪ {∞} over arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den >= 0`.
///
/// The sign lives on the numerator, zero is `0/1` and there is a single
/// unsigned infinity `1/0`. Because every value is stored in this canonical
/// form, structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    num: BigInt,
    den: BigInt,
}

impl ExtendedRational {
    /// Canonical representative of `p/q`. Rejects `0/0`.
    pub fn reduce(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        Ok(Self::reduce_nonzero(p, q))
    }

    pub(crate) fn reduce_nonzero(p: BigInt, q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        if q.is_zero() {
            return Self::infinity();
        }
        if p.is_zero() {
            return Self::zero();
        }
        let g = p.gcd(&q);
        let (mut num, mut den) = (p / &g, q / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    /// Builds `p/q` from machine integers.
    ///
    /// # Panics
    ///
    /// Panics on `0/0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::reduce(p, q).expect("0/0 is not an extended rational")
    }

    pub fn zero() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: BigInt::one(),
            den: BigInt::one(),
        }
    }

    pub fn infinity() -> Self {
        Self {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// True for finite values strictly greater than zero.
    pub fn is_positive_finite(&self) -> bool {
        !self.is_infinite() && self.num.is_positive()
    }

    /// `q/p`; the reciprocal of `0` is `∞` and vice versa.
    pub fn recip(&self) -> Self {
        Self::reduce_nonzero(self.den.clone(), self.num.clone())
    }

    /// The mediant `(a+c)/(b+d)` of `a/b` and `c/d`.
    ///
    /// Intended for the non-negative part of ℚ∞; for ℤ-distinct inputs the
    /// raw sums are already coprime.
    pub fn mediant(&self, other: &Self) -> Self {
        Self::reduce_nonzero(&self.num + &other.num, &self.den + &other.den)
    }

    /// `ad - bc` for `self = a/b`, `other = c/d`.
    pub fn cross(&self, other: &Self) -> BigInt {
        &self.num * &other.den - &self.den * &other.num
    }

    /// Unimodular pair test: `ad - bc = ±1`.
    pub fn is_z_distinct(&self, other: &Self) -> bool {
        self.cross(other).abs().is_one()
    }

    /// `|self - other|` for finite values, as an exact fraction.
    pub fn abs_diff(&self, other: &Self) -> Option<Self> {
        if self.is_infinite() || other.is_infinite() {
            return None;
        }
        let num = self.cross(other).abs();
        Some(Self::reduce_nonzero(num, &self.den * &other.den))
    }
}

/// Free-function form of [`ExtendedRational::mediant`].
pub fn mediant(x: &ExtendedRational, y: &ExtendedRational) -> ExtendedRational {
    x.mediant(y)
}

/// Free-function form of [`ExtendedRational::is_z_distinct`].
pub fn is_z_distinct(x: &ExtendedRational, y: &ExtendedRational) -> bool {
    x.is_z_distinct(y)
}

impl Ord for ExtendedRational {
    /// Total order with `∞` above every finite value; cross-multiplication only.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    /// Parses `"num/den"` with an optional leading minus on either part.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::parse(s, "expected num/den"))?;
        let p = parse_integer(s, p)?;
        let q = parse_integer(s, q)?;
        Self::reduce(p, q).map_err(|_| Error::parse(s, "0/0 is undefined"))
    }
}

fn parse_integer(whole: &str, part: &str) -> Result<BigInt> {
    let digits = part.strip_prefix('-').unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(whole, "expected decimal digits"));
    }
    part.parse::<BigInt>()
        .map_err(|_| Error::parse(whole, "expected decimal digits"))
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All reduced fractions in `[0, 1]` with denominator at most `max_den`,
/// increasing.
///
/// Built by in-order mediant insertion between `0/1` and `1/1`, splitting an
/// interval only while the mediant's denominator stays within bound.
pub fn farey_sequence(max_den: u64) -> Result<Vec<ExtendedRational>> {
    if max_den == 0 {
        return Err(Error::ZeroFareyOrder);
    }
    let bound = BigInt::from(max_den);
    let mut out = vec![ExtendedRational::zero()];
    // Upper bounds still waiting to be emitted, innermost last.
    let mut pending = vec![ExtendedRational::one()];
    let mut lo = ExtendedRational::zero();
    while let Some(hi) = pending.last() {
        let m = lo.mediant(hi);
        if m.den <= bound {
            pending.push(m);
        } else {
            lo = pending.pop().expect("non-empty");
            out.push(lo.clone());
        }
    }
    Ok(out)
}
