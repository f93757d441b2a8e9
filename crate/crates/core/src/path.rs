//! Addresses of nodes in the binary trees.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    L,
    R,
}

impl Step {
    pub fn mirror(self) -> Self {
        match self {
            Step::L => Step::R,
            Step::R => Step::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::L => 'L',
            Step::R => 'R',
        }
    }
}

/// A word over {L, R}; step `i` is the branch taken at depth `i`.
///
/// The empty path is the root. Left-to-right order within a level is the
/// lexicographic order with `L < R`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    /// The path at `level` whose steps spell `offset` in binary (L = 0, R = 1).
    pub fn from_level_offset(level: usize, offset: u64) -> Self {
        debug_assert!(level >= 64 || offset >> level == 0);
        let steps = (0..level)
            .rev()
            .map(|bit| {
                if bit < 64 && (offset >> bit) & 1 == 1 {
                    Step::R
                } else {
                    Step::L
                }
            })
            .collect();
        Self { steps }
    }

    /// Inverse of [`Path::bfs_index`]: `index + 1` in binary, leading 1 dropped.
    pub fn from_bfs_index(index: u64) -> Self {
        let n = u128::from(index) + 1;
        let level = (u128::BITS - 1 - n.leading_zeros()) as usize;
        let steps = (0..level)
            .rev()
            .map(|bit| if (n >> bit) & 1 == 1 { Step::R } else { Step::L })
            .collect();
        Self { steps }
    }

    /// All `2^level` paths of one level, left to right.
    pub fn level(level: usize) -> impl Iterator<Item = Path> {
        assert!(level < 64, "level {level} is too wide to enumerate");
        (0..1u64 << level).map(move |offset| Path::from_level_offset(level, offset))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn pop(&mut self) -> Option<Step> {
        self.steps.pop()
    }

    pub fn child(&self, step: Step) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() + 1);
        steps.extend_from_slice(&self.steps);
        steps.push(step);
        Self { steps }
    }

    /// Position within the level: the steps read as binary, L = 0, R = 1.
    pub fn offset(&self) -> BigUint {
        self.steps.iter().fold(BigUint::zero(), |acc, s| {
            (acc << 1u32) + if *s == Step::R { 1u32 } else { 0 }
        })
    }

    /// Breadth-first rank `2^level - 1 + offset`, root = 0.
    pub fn bfs_index(&self) -> BigUint {
        (BigUint::one() << self.len()) - 1u32 + self.offset()
    }

    /// Reflection in the vertical midline (L and R swapped).
    pub fn mirror(&self) -> Self {
        Self {
            steps: self.steps.iter().map(|s| s.mirror()).collect(),
        }
    }

    /// Breadth-first order: shorter paths first, then left to right.
    pub fn bfs_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' => Ok(Step::L),
                'R' => Ok(Step::R),
                _ => Err(Error::parse(s, "paths are words over L and R")),
            })
            .collect::<Result<Vec<_>>>()
            .map(Path::from_steps)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
