//! The monoid SL₂(ℤ≥0), its free generators and the Möbius action on ℚ∞.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::path::{Path, Step};
use crate::rational::ExtendedRational;

/// Row-major 2×2 matrix `(a b; c d)` with non-negative entries and
/// determinant ±1.
///
/// [`Mat2::new`] admits only monoid members (det 1);
/// [`Mat2::with_unit_det`] also admits det −1, which is what the topograph
/// vertex frames produce.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigUint,
    b: BigUint,
    c: BigUint,
    d: BigUint,
}

impl Mat2 {
    /// A member of SL₂(ℤ≥0).
    pub fn new(
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
        c: impl Into<BigUint>,
        d: impl Into<BigUint>,
    ) -> Result<Self> {
        let m = Self::raw(a.into(), b.into(), c.into(), d.into());
        if m.det().is_one() {
            Ok(m)
        } else {
            Err(Error::NotMonoidMember(m.to_string()))
        }
    }

    /// Any non-negative matrix with `ad - bc = ±1`.
    pub fn with_unit_det(
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
        c: impl Into<BigUint>,
        d: impl Into<BigUint>,
    ) -> Result<Self> {
        let m = Self::raw(a.into(), b.into(), c.into(), d.into());
        if m.det().abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(m.to_string()))
        }
    }

    fn raw(a: BigUint, b: BigUint, c: BigUint, d: BigUint) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(BigUint::one(), BigUint::zero(), BigUint::zero(), BigUint::one())
    }

    /// `(1 0; 1 1)`
    pub fn left() -> Self {
        Self::raw(BigUint::one(), BigUint::zero(), BigUint::one(), BigUint::one())
    }

    /// `(1 1; 0 1)`
    pub fn right() -> Self {
        Self::raw(BigUint::one(), BigUint::one(), BigUint::zero(), BigUint::one())
    }

    pub fn generator(step: Step) -> Self {
        match step {
            Step::L => Self::left(),
            Step::R => Self::right(),
        }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn entries(&self) -> [&BigUint; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        BigInt::from(&self.a * &self.d) - BigInt::from(&self.b * &self.c)
    }

    pub fn is_member(&self) -> bool {
        self.det().is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn transpose(&self) -> Self {
        Self::raw(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    /// `G · self` for the generator of `step`, without a general product.
    pub fn premul_generator(&self, step: Step) -> Self {
        match step {
            // (1 0; 1 1)(a b; c d) = (a b; a+c b+d)
            Step::L => Self::raw(
                self.a.clone(),
                self.b.clone(),
                &self.a + &self.c,
                &self.b + &self.d,
            ),
            // (1 1; 0 1)(a b; c d) = (a+c b+d; c d)
            Step::R => Self::raw(
                &self.a + &self.c,
                &self.b + &self.d,
                self.c.clone(),
                self.d.clone(),
            ),
        }
    }

    /// `z ↦ (az + b)/(cz + d)` on ℚ∞, with `∞ ↦ a/c`.
    pub fn apply_mobius(&self, x: &ExtendedRational) -> ExtendedRational {
        let (p, q) = (x.numer(), x.denom());
        let [a, b, c, d] = self.entries().map(|e| BigInt::from(e.clone()));
        // unit determinant keeps (a p + b q, c p + d q) away from (0, 0)
        ExtendedRational::reduce_nonzero(&a * p + &b * q, &c * p + &d * q)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::raw(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

/// `(L, R) = ((1 0; 1 1), (1 1; 0 1))`.
pub fn generators() -> (Mat2, Mat2) {
    (Mat2::left(), Mat2::right())
}

pub fn multiply(m: &Mat2, n: &Mat2) -> Mat2 {
    m * n
}

pub fn transpose(m: &Mat2) -> Mat2 {
    m.transpose()
}

pub fn apply_mobius(m: &Mat2, x: &ExtendedRational) -> ExtendedRational {
    m.apply_mobius(x)
}

/// The matrix-tree node at `path`: `G_{p_k} · … · G_{p_1}`, each step
/// multiplying its generator on the left.
pub fn from_path(path: &Path) -> Mat2 {
    path.steps()
        .iter()
        .fold(Mat2::identity(), |m, &s| m.premul_generator(s))
}

/// Recovers the unique path with `from_path(path) == m`.
///
/// Peels the last generator off until the identity is reached: if the bottom
/// row dominates the top row the last step was L, if the top row dominates it
/// was R. Determinant 1 rules out equal rows, so at most one applies; if
/// neither does, `m` is not in the monoid.
pub fn decompose(m: &Mat2) -> Result<Path> {
    if !m.is_member() {
        return Err(Error::NotMonoidMember(m.to_string()));
    }
    let mut cur = m.clone();
    let mut steps = Vec::new();
    while !cur.is_identity() {
        let bottom_dominates = cur.c >= cur.a && cur.d >= cur.b;
        let top_dominates = cur.a >= cur.c && cur.b >= cur.d;
        cur = match (bottom_dominates, top_dominates) {
            (true, false) => {
                steps.push(Step::L);
                Mat2::raw(cur.a.clone(), cur.b.clone(), &cur.c - &cur.a, &cur.d - &cur.b)
            }
            (false, true) => {
                steps.push(Step::R);
                Mat2::raw(&cur.a - &cur.c, &cur.b - &cur.d, cur.c.clone(), cur.d.clone())
            }
            _ => return Err(Error::NotMonoidMember(m.to_string())),
        };
    }
    steps.reverse();
    Ok(Path::from_steps(steps))
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2 {
    type Err = Error;

    /// Parses `[[a,b],[c,d]]`; whitespace is ignored, determinant must be ±1.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(|| Error::parse(s, "expected [[a,b],[c,d]]"))?;
        let (top, bottom) = inner
            .split_once("],[")
            .ok_or_else(|| Error::parse(s, "expected [[a,b],[c,d]]"))?;
        let mut entries = Vec::with_capacity(4);
        for row in [top, bottom] {
            let (x, y) = row
                .split_once(',')
                .ok_or_else(|| Error::parse(s, "expected two entries per row"))?;
            for e in [x, y] {
                entries.push(
                    e.parse::<BigUint>()
                        .map_err(|_| Error::parse(s, "entries are non-negative integers"))?,
                );
            }
        }
        let [a, b, c, d]: [BigUint; 4] = entries.try_into().expect("four entries");
        Mat2::with_unit_det(a, b, c, d)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
