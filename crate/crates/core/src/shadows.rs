//! Shadows of the matrix tree: replacing `(a b; c d)` by `(a+b)/(c+d)` gives
//! the Calkin-Wilf tree, by `(d+b)/(c+a)` the Stern-Brocot tree. Each map is
//! also written as a Möbius evaluation, `γ(1)` and `1/γᵀ(1)`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::matrix::Mat2;
use crate::path::{Path, Step};
use crate::rational::ExtendedRational;
use crate::tree::{cw_child, SBNode};
use crate::walk::fold_paths;

pub fn cw_shadow(m: &Mat2) -> ExtendedRational {
    ExtendedRational::reduce_nonzero(BigInt::from(m.a() + m.b()), BigInt::from(m.c() + m.d()))
}

pub fn farey_shadow(m: &Mat2) -> ExtendedRational {
    ExtendedRational::reduce_nonzero(BigInt::from(m.d() + m.b()), BigInt::from(m.c() + m.a()))
}

/// `γ(1)`.
pub fn cw_shadow_mobius(m: &Mat2) -> ExtendedRational {
    m.apply_mobius(&ExtendedRational::one())
}

/// `1/γᵀ(1)`.
pub fn farey_shadow_mobius(m: &Mat2) -> ExtendedRational {
    m.transpose().apply_mobius(&ExtendedRational::one()).recip()
}

/// The pair of maps checked by [`verify_theorem_with`].
#[derive(Clone, Copy)]
pub struct ShadowMaps {
    pub cw: fn(&Mat2) -> ExtendedRational,
    pub farey: fn(&Mat2) -> ExtendedRational,
}

impl Default for ShadowMaps {
    fn default() -> Self {
        Self {
            cw: cw_shadow,
            farey: farey_shadow,
        }
    }
}

/// Outcome of an exhaustive check over all paths up to `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub depth: usize,
    pub nodes: u64,
    pub cw_failures: u64,
    pub farey_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_path: Option<Path>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn is_success(&self) -> bool {
        self.cw_failures == 0 && self.farey_failures == 0
    }
}

/// Partial counts for a set of nodes; merging is associative and keeps the
/// breadth-first-earliest failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Tally<const N: usize> {
    pub nodes: u64,
    pub failures: [u64; N],
    pub first_failure: Option<Path>,
}

impl<const N: usize> Tally<N> {
    pub fn empty() -> Self {
        Self {
            nodes: 0,
            failures: [0; N],
            first_failure: None,
        }
    }

    pub fn single(path: &Path, failed: [bool; N]) -> Self {
        let failures = failed.map(u64::from);
        let first_failure = failed.iter().any(|&f| f).then(|| path.clone());
        Self {
            nodes: 1,
            failures,
            first_failure,
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.nodes += other.nodes;
        for (a, b) in self.failures.iter_mut().zip(other.failures) {
            *a += b;
        }
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.bfs_cmp(&b).is_le() { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Checks both shadow maps against the trees built from their own child
/// rules, at every path with `|path| <= depth`.
pub fn verify_theorem(depth: usize) -> VerificationReport {
    verify_theorem_with(depth, ShadowMaps::default())
}

/// [`verify_theorem`] with substitutable maps, for exercising the failure path.
pub fn verify_theorem_with(depth: usize, maps: ShadowMaps) -> VerificationReport {
    struct Node {
        matrix: Mat2,
        cw: ExtendedRational,
        sb: SBNode,
    }

    let start = Instant::now();
    let root = Node {
        matrix: Mat2::identity(),
        cw: ExtendedRational::one(),
        sb: SBNode::root(),
    };
    let tally = fold_paths(
        depth,
        root,
        |n, step: Step| Node {
            matrix: n.matrix.premul_generator(step),
            cw: cw_child(&n.cw, step),
            sb: n.sb.child(step),
        },
        |path, n| {
            Tally::single(
                path,
                [(maps.cw)(&n.matrix) != n.cw, (maps.farey)(&n.matrix) != n.sb.value],
            )
        },
        Tally::<2>::empty,
        Tally::merge,
    );
    VerificationReport {
        depth,
        nodes: tally.nodes,
        cw_failures: tally.failures[0],
        farey_failures: tally.failures[1],
        first_failure_path: tally.first_failure,
        wall_time: start.elapsed(),
    }
}
