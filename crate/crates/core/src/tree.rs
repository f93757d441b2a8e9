//! Calkin-Wilf and Stern-Brocot trees addressed by [`Path`], their inverses,
//! level-order enumeration, and best rational approximation by Stern-Brocot
//! descent.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::path::{Path, Step};
use crate::rational::ExtendedRational;
use crate::stern::fusc;

fn require_positive_finite(q: &ExtendedRational) -> Result<()> {
    if q.is_positive_finite() {
        Ok(())
    } else {
        Err(Error::NotPositiveFinite(q.to_string()))
    }
}

/// Calkin-Wilf children of `a/b`: `a/(a+b)` on the left, `(a+b)/b` on the right.
pub fn cw_child(x: &ExtendedRational, step: Step) -> ExtendedRational {
    let (a, b) = (x.numer(), x.denom());
    let sum = a + b;
    // gcd(a, a+b) = gcd(a, b) = 1, so no reduction is needed
    match step {
        Step::L => ExtendedRational::reduce_nonzero(a.clone(), sum),
        Step::R => ExtendedRational::reduce_nonzero(sum, b.clone()),
    }
}

pub fn cw_value(path: &Path) -> ExtendedRational {
    path.steps()
        .iter()
        .fold(ExtendedRational::one(), |x, &s| cw_child(&x, s))
}

/// The `n`-th Calkin-Wilf entry in breadth-first order, `b(n)/b(n+1)`.
pub fn cw_unrank(n: u64) -> ExtendedRational {
    ExtendedRational::reduce_nonzero(fusc(n).into(), fusc(n.saturating_add(1)).into())
}

/// Inverse of [`cw_value`] by subtractive Euclid: `a/b` with `a < b` is the
/// left child of `a/(b-a)`, with `a > b` the right child of `(a-b)/b`.
pub fn cw_locate(q: &ExtendedRational) -> Result<Path> {
    require_positive_finite(q)?;
    let mut a = q.numer().clone();
    let mut b = q.denom().clone();
    let mut steps = Vec::new();
    loop {
        match a.cmp(&b) {
            Ordering::Equal => break,
            Ordering::Less => {
                // a run of k left steps at once
                let k = (&b - 1u32) / &a;
                b -= &a * &k;
                push_run(&mut steps, Step::L, &k);
            }
            Ordering::Greater => {
                let k = (&a - 1u32) / &b;
                a -= &b * &k;
                push_run(&mut steps, Step::R, &k);
            }
        }
    }
    steps.reverse();
    Ok(Path::from_steps(steps))
}

fn push_run(steps: &mut Vec<Step>, step: Step, count: &BigInt) {
    let n: usize = count
        .try_into()
        .expect("path too long to materialize");
    steps.extend(std::iter::repeat_n(step, n));
}

/// A Stern-Brocot node: the bracketing pair and their mediant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SBNode {
    pub lo: ExtendedRational,
    pub hi: ExtendedRational,
    pub value: ExtendedRational,
}

impl SBNode {
    pub fn root() -> Self {
        Self::between(ExtendedRational::zero(), ExtendedRational::infinity())
    }

    fn between(lo: ExtendedRational, hi: ExtendedRational) -> Self {
        let value = lo.mediant(&hi);
        Self { lo, hi, value }
    }

    pub fn child(&self, step: Step) -> Self {
        match step {
            Step::L => Self::between(self.lo.clone(), self.value.clone()),
            Step::R => Self::between(self.value.clone(), self.hi.clone()),
        }
    }

    /// Ordering and pairwise ℤ-distinctness of the three fractions.
    pub fn is_valid(&self) -> bool {
        self.lo < self.value
            && self.value < self.hi
            && self.lo.is_z_distinct(&self.hi)
            && self.lo.is_z_distinct(&self.value)
            && self.value.is_z_distinct(&self.hi)
            && self.value == self.lo.mediant(&self.hi)
    }
}

pub fn sb_node(path: &Path) -> SBNode {
    path.steps()
        .iter()
        .fold(SBNode::root(), |node, &s| node.child(s))
}

/// The Brocot sequence after `levels` levels: every value of levels
/// `0..levels`, sorted, bracketed by `0/1` and `1/0`.
pub fn brocot_sequence(levels: usize) -> Vec<ExtendedRational> {
    let mut seq = vec![ExtendedRational::zero(), ExtendedRational::infinity()];
    for _ in 0..levels {
        let row = mediants(&seq);
        seq.extend(row);
        seq.sort();
    }
    seq
}

fn mediants(seq: &[ExtendedRational]) -> Vec<ExtendedRational> {
    seq.windows(2).map(|w| w[0].mediant(&w[1])).collect()
}

/// Level `level` of the Stern-Brocot tree, built row by row from Brocot
/// sequences rather than by descent.
pub fn sb_row(level: usize) -> Vec<ExtendedRational> {
    mediants(&brocot_sequence(level))
}

/// Inverse of [`sb_node`]: descend left while `q` is smaller than the node,
/// right while larger.
pub fn sb_locate(q: &ExtendedRational) -> Result<Path> {
    require_positive_finite(q)?;
    let mut node = SBNode::root();
    let mut path = Path::root();
    loop {
        let step = match q.cmp(&node.value) {
            Ordering::Equal => return Ok(path),
            Ordering::Less => Step::L,
            Ordering::Greater => Step::R,
        };
        node = node.child(step);
        path.push(step);
    }
}

/// The fraction with denominator at most `max_den` closest to
/// `target_num/target_den`; ties go to the smaller denominator, then the
/// smaller numerator.
///
/// Walks the Stern-Brocot tree toward the target, taking each run of
/// same-direction steps in one division, until the next mediant's denominator
/// would exceed `max_den`. The answer is then one of the two bounds.
pub fn best_approximation(
    target_num: impl Into<BigInt>,
    target_den: impl Into<BigInt>,
    max_den: impl Into<BigInt>,
) -> Result<ExtendedRational> {
    let max_den = max_den.into();
    if !max_den.is_positive() {
        return Err(Error::ZeroMaxDenominator);
    }
    let (n, d) = (target_num.into(), target_den.into());
    if !n.is_positive() || !d.is_positive() {
        return Err(Error::NotPositiveFinite(format!("{n}/{d}")));
    }
    let g = n.gcd(&d);
    let (n, d) = (n / &g, d / &g);

    let (mut p0, mut q0) = (BigInt::zero(), BigInt::from(1));
    let (mut p1, mut q1) = (BigInt::from(1), BigInt::zero());
    loop {
        let mq = &q0 + &q1;
        if mq > max_den {
            break;
        }
        let mp = &p0 + &p1;
        match (&mp * &d).cmp(&(&n * &mq)) {
            Ordering::Equal => return Ok(ExtendedRational::reduce_nonzero(mp, mq)),
            Ordering::Less => {
                // lo + k·hi stays below the target while k·(p1 d - n q1) < n q0 - p0 d
                let gap = &n * &q0 - &p0 * &d;
                let step = &p1 * &d - &n * &q1;
                let (k_value, rem) = gap.div_rem(&step);
                let k = cap_run(k_value, &max_den, &q0, &q1);
                let hit = rem.is_zero() && (&k * &step == gap);
                p0 += &k * &p1;
                q0 += &k * &q1;
                if hit {
                    return Ok(ExtendedRational::reduce_nonzero(p0, q0));
                }
            }
            Ordering::Greater => {
                let gap = &p1 * &d - &n * &q1;
                let step = &n * &q0 - &p0 * &d;
                let (k_value, rem) = gap.div_rem(&step);
                let k = cap_run(k_value, &max_den, &q1, &q0);
                let hit = rem.is_zero() && (&k * &step == gap);
                p1 += &k * &p0;
                q1 += &k * &q0;
                if hit {
                    return Ok(ExtendedRational::reduce_nonzero(p1, q1));
                }
            }
        }
    }

    let lo = ExtendedRational::reduce_nonzero(p0.clone(), q0.clone());
    if q1.is_zero() {
        return Ok(lo);
    }
    let hi = ExtendedRational::reduce_nonzero(p1.clone(), q1.clone());
    // (x - lo)·q0·q1·d vs (hi - x)·q0·q1·d
    let below = (&n * &q0 - &p0 * &d) * &q1;
    let above = (&p1 * &d - &n * &q1) * &q0;
    Ok(match below.cmp(&above) {
        Ordering::Less => lo,
        Ordering::Greater => hi,
        Ordering::Equal => {
            if (&q0, &p0) <= (&q1, &p1) {
                lo
            } else {
                hi
            }
        }
    })
}

/// Largest run length allowed by the denominator bound `moving + k·fixed <= max`.
fn cap_run(k: BigInt, max_den: &BigInt, moving: &BigInt, fixed: &BigInt) -> BigInt {
    if fixed.is_zero() {
        return k;
    }
    k.min((max_den - moving) / fixed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    CalkinWilf,
    SternBrocot,
    Matrix,
}

impl TreeKind {
    pub fn name(self) -> &'static str {
        match self {
            TreeKind::CalkinWilf => "cw",
            TreeKind::SternBrocot => "sb",
            TreeKind::Matrix => "matrix",
        }
    }
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cw" | "calkin-wilf" => Ok(TreeKind::CalkinWilf),
            "sb" | "stern-brocot" | "farey" => Ok(TreeKind::SternBrocot),
            "matrix" => Ok(TreeKind::Matrix),
            _ => Err(Error::Unknown {
                what: "tree kind",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum NodeValue {
    Rational(ExtendedRational),
    Matrix(Mat2),
}

impl NodeValue {
    pub fn as_rational(&self) -> Option<&ExtendedRational> {
        match self {
            NodeValue::Rational(x) => Some(x),
            NodeValue::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Mat2> {
        match self {
            NodeValue::Matrix(m) => Some(m),
            NodeValue::Rational(_) => None,
        }
    }
}

impl fmt::Display for NodeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeValue::Rational(x) => x.fmt(f),
            NodeValue::Matrix(m) => m.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub path: Path,
    pub value: NodeValue,
    #[serde(skip)]
    pub level: usize,
    #[serde(skip)]
    pub offset: u64,
}

impl TreeNode {
    pub fn bfs_index(&self) -> u64 {
        (1u64 << self.level) - 1 + self.offset
    }
}

#[derive(Clone, Debug)]
enum Cursor {
    Cw(ExtendedRational),
    Sb(SBNode),
    Matrix(Mat2),
}

impl Cursor {
    fn root(kind: TreeKind) -> Self {
        match kind {
            TreeKind::CalkinWilf => Cursor::Cw(ExtendedRational::one()),
            TreeKind::SternBrocot => Cursor::Sb(SBNode::root()),
            TreeKind::Matrix => Cursor::Matrix(Mat2::identity()),
        }
    }

    fn child(&self, step: Step) -> Self {
        match self {
            Cursor::Cw(x) => Cursor::Cw(cw_child(x, step)),
            Cursor::Sb(node) => Cursor::Sb(node.child(step)),
            Cursor::Matrix(m) => Cursor::Matrix(m.premul_generator(step)),
        }
    }

    fn value(&self) -> NodeValue {
        match self {
            Cursor::Cw(x) => NodeValue::Rational(x.clone()),
            Cursor::Sb(node) => NodeValue::Rational(node.value.clone()),
            Cursor::Matrix(m) => NodeValue::Matrix(m.clone()),
        }
    }
}

/// Breadth-first iterator over levels `0..=depth`; see [`level_iter`].
#[derive(Clone, Debug)]
pub struct LevelIter {
    depth: usize,
    level: usize,
    current: Vec<(Path, Cursor)>,
    pos: usize,
}

impl Iterator for LevelIter {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        if self.pos == self.current.len() {
            if self.level >= self.depth {
                return None;
            }
            self.current = self
                .current
                .iter()
                .flat_map(|(path, cur)| {
                    [Step::L, Step::R].map(|s| (path.child(s), cur.child(s)))
                })
                .collect();
            self.level += 1;
            self.pos = 0;
        }
        let (path, cur) = &self.current[self.pos];
        let node = TreeNode {
            path: path.clone(),
            value: cur.value(),
            level: self.level,
            offset: self.pos as u64,
        };
        self.pos += 1;
        Some(node)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let later: usize = (self.level + 1..=self.depth).map(|l| 1usize << l).sum();
        let n = self.current.len() - self.pos + later;
        (n, Some(n))
    }
}

impl ExactSizeIterator for LevelIter {}

/// All `2^(depth+1) - 1` nodes of levels `0..=depth`, level by level, left
/// to right.
pub fn level_iter(kind: TreeKind, depth: usize) -> LevelIter {
    assert!(depth < 63, "depth {depth} is too large to enumerate");
    LevelIter {
        depth,
        level: 0,
        current: vec![(Path::root(), Cursor::root(kind))],
        pos: 0,
    }
}
