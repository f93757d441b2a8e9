//! Conway's topograph and its forward flow from the edge {0, ∞}.
//!
//! Vertices are triples of pairwise ℤ-distinct points of ℚ∞; two vertices are
//! adjacent when they share a pair. Directing the edge {0, ∞} toward
//! {0, ∞, 1} orients everything in front of it as a binary tree. Each vertex of
//! that tree is recorded as a frame: the regions on its left and right and the
//! region ahead of it, between its two outgoing edges.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::path::{Path, Step};
use crate::rational::ExtendedRational;
use crate::shadows::Tally;
use crate::tree::SBNode;
use crate::walk::fold_paths;

/// An unordered triple of pairwise ℤ-distinct points, stored in increasing
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    elements: [ExtendedRational; 3],
}

fn sum_of(x: &ExtendedRational, y: &ExtendedRational) -> ExtendedRational {
    ExtendedRational::reduce_nonzero(x.numer() + y.numer(), x.denom() + y.denom())
}

fn difference_of(x: &ExtendedRational, y: &ExtendedRational) -> ExtendedRational {
    ExtendedRational::reduce_nonzero(x.numer() - y.numer(), x.denom() - y.denom())
}

impl Vertex {
    /// Validates that the three points are pairwise ℤ-distinct and that one of
    /// them is, up to sign, the mediant of the other two.
    pub fn new(x: ExtendedRational, y: ExtendedRational, z: ExtendedRational) -> Result<Self> {
        let mut elements = [x, y, z];
        elements.sort();
        let v = Self { elements };
        if v.is_valid() {
            Ok(v)
        } else {
            Err(Error::InvalidVertex(v.to_string()))
        }
    }

    fn is_valid(&self) -> bool {
        let [x, y, z] = &self.elements;
        let distinct = x.is_z_distinct(y) && y.is_z_distinct(z) && x.is_z_distinct(z);
        distinct
            && self.pairs().iter().any(|(u, v, w)| {
                **w == sum_of(u, v) || **w == difference_of(u, v)
            })
    }

    pub fn elements(&self) -> &[ExtendedRational; 3] {
        &self.elements
    }

    pub fn contains(&self, x: &ExtendedRational) -> bool {
        self.elements.contains(x)
    }

    /// The three (pair, opposite point) splits of the triple.
    fn pairs(&self) -> [(&ExtendedRational, &ExtendedRational, &ExtendedRational); 3] {
        let [x, y, z] = &self.elements;
        [(x, y, z), (x, z, y), (y, z, x)]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.elements;
        write!(f, "{{{x}, {y}, {z}}}")
    }
}

/// The only two vertices containing the pair `{x, y}`: the mediant triple
/// and the difference triple, in that order.
pub fn triples_containing(x: &ExtendedRational, y: &ExtendedRational) -> Result<(Vertex, Vertex)> {
    if !x.is_z_distinct(y) {
        return Err(Error::NotZDistinct(x.to_string(), y.to_string()));
    }
    let with_sum = Vertex::new(x.clone(), y.clone(), sum_of(x, y))?;
    let with_difference = Vertex::new(x.clone(), y.clone(), difference_of(x, y))?;
    Ok((with_sum, with_difference))
}

/// The vertices across each of the three edges of `v`.
pub fn neighbors(v: &Vertex) -> [Vertex; 3] {
    v.pairs().map(|(x, y, _)| {
        let (a, b) = triples_containing(x, y).expect("vertex pairs are Z-distinct");
        if a == *v {
            b
        } else {
            a
        }
    })
}

/// A vertex of the forward flow with its left, right and forward regions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedVertex {
    path: Path,
    left: ExtendedRational,
    right: ExtendedRational,
    forward: ExtendedRational,
}

impl OrientedVertex {
    /// Entered across {0, ∞}: 0 on the left, ∞ on the right, 1 ahead.
    pub fn root() -> Self {
        Self::entered_between(Path::root(), ExtendedRational::zero(), ExtendedRational::infinity())
    }

    fn entered_between(path: Path, left: ExtendedRational, right: ExtendedRational) -> Self {
        let forward = left.mediant(&right);
        Self {
            path,
            left,
            right,
            forward,
        }
    }

    /// Leaving across the edge {left, forward} (L) or {forward, right} (R).
    pub fn child(&self, step: Step) -> Self {
        let path = self.path.child(step);
        match step {
            Step::L => Self::entered_between(path, self.left.clone(), self.forward.clone()),
            Step::R => Self::entered_between(path, self.forward.clone(), self.right.clone()),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn left(&self) -> &ExtendedRational {
        &self.left
    }

    pub fn right(&self) -> &ExtendedRational {
        &self.right
    }

    pub fn forward(&self) -> &ExtendedRational {
        &self.forward
    }

    pub fn vertex(&self) -> Vertex {
        Vertex::new(self.left.clone(), self.right.clone(), self.forward.clone())
            .expect("frames are topograph vertices")
    }

    /// The edge the flow enters through.
    pub fn incoming_pair(&self) -> (&ExtendedRational, &ExtendedRational) {
        (&self.left, &self.right)
    }

    /// With `left = a/c`, `right = b/d`: `ad - bc`.
    pub fn frame_det(&self) -> BigInt {
        self.left.cross(&self.right)
    }

    pub fn is_valid(&self) -> bool {
        self.left < self.right
            && self.forward == self.left.mediant(&self.right)
            && self.left.is_z_distinct(&self.right)
            && self.left.is_z_distinct(&self.forward)
            && self.forward.is_z_distinct(&self.right)
            && self.frame_det() == BigInt::from(-1)
    }
}

/// Frames of the forward flow with `|path| <= depth`, breadth first.
pub fn forward_tree(depth: usize) -> Vec<OrientedVertex> {
    let mut out = vec![OrientedVertex::root()];
    let mut start = 0;
    for _ in 0..depth {
        let end = out.len();
        for i in start..end {
            let (l, r) = (out[i].child(Step::L), out[i].child(Step::R));
            out.push(l);
            out.push(r);
        }
        start = end;
    }
    out
}

/// Label of the region between the two outgoing edges.
pub fn farey_label(v: &OrientedVertex) -> ExtendedRational {
    v.forward.clone()
}

/// The Möbius map sending ∞, 0, 1 to the left, right and forward labels:
/// `(a b; c d)` for `left = a/c`, `right = b/d`. Determinant −1.
pub fn vertex_matrix(v: &OrientedVertex) -> Mat2 {
    let entry = |x: &BigInt| -> BigUint { x.to_biguint().expect("forward-flow labels are non-negative") };
    Mat2::with_unit_det(
        entry(v.left.numer()),
        entry(v.right.numer()),
        entry(v.left.denom()),
        entry(v.right.denom()),
    )
    .expect("frames have determinant -1")
}

/// `γ ↦ (1/γ)ᵀ`, i.e. `(a b; c d) ↦ (c a; d b)`; only monoid results are
/// accepted.
pub fn conjugate_shadow(m: &Mat2) -> Result<Mat2> {
    let out = Mat2::with_unit_det(m.c().clone(), m.a().clone(), m.d().clone(), m.b().clone())?;
    if out.det().is_one() {
        Ok(out)
    } else {
        Err(Error::NotMonoidMember(out.to_string()))
    }
}

/// A directed edge of the forward flow, named by the pair it crosses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowEdge {
    pub pair: (ExtendedRational, ExtendedRational),
    pub from: Vertex,
    pub to: Vertex,
}

/// Every directed edge entering a frame of depth at most `depth`, including
/// the root edge {0, ∞} from {−1, 0, ∞}.
pub fn flow_edges(depth: usize) -> Vec<FlowEdge> {
    let frames = forward_tree(depth);
    let mut edges = Vec::with_capacity(frames.len());
    for (i, frame) in frames.iter().enumerate() {
        let (l, r) = frame.incoming_pair();
        let from = if i == 0 {
            triples_containing(l, r).expect("0 and ∞ are Z-distinct").1
        } else {
            // BFS layout: children of frame j sit at 2j+1 and 2j+2
            frames[(i - 1) / 2].vertex()
        };
        edges.push(FlowEdge {
            pair: (l.clone(), r.clone()),
            from,
            to: frame.vertex(),
        });
    }
    edges
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopographReport {
    pub depth: usize,
    pub nodes: u64,
    pub conjugate_failures: u64,
    pub farey_failures: u64,
    pub mobius_failures: u64,
    pub frame_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_path: Option<Path>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl TopographReport {
    pub fn is_success(&self) -> bool {
        self.conjugate_failures == 0
            && self.farey_failures == 0
            && self.mobius_failures == 0
            && self.frame_failures == 0
    }
}

/// At every frame of depth at most `depth`, checks that conjugating its
/// vertex matrix gives the matrix-tree node at the same path, that its
/// forward label is the Stern-Brocot value there, that its matrix sends 1 to
/// the forward label, and that the frame itself is well formed.
pub fn verify_topograph_proof(depth: usize) -> TopographReport {
    struct Node {
        frame: OrientedVertex,
        matrix: Mat2,
        sb: SBNode,
    }

    let start = Instant::now();
    let root = Node {
        frame: OrientedVertex::root(),
        matrix: Mat2::identity(),
        sb: SBNode::root(),
    };
    let tally = fold_paths(
        depth,
        root,
        |n, step| Node {
            frame: n.frame.child(step),
            matrix: n.matrix.premul_generator(step),
            sb: n.sb.child(step),
        },
        |path, n| {
            let frame_ok = n.frame.is_valid() && n.frame.path() == path;
            let (conjugate_ok, mobius_ok) = if frame_ok {
                let vm = vertex_matrix(&n.frame);
                (
                    conjugate_shadow(&vm).is_ok_and(|m| m == n.matrix),
                    vm.apply_mobius(&ExtendedRational::one()) == n.frame.forward,
                )
            } else {
                (false, false)
            };
            Tally::single(
                path,
                [
                    !conjugate_ok,
                    farey_label(&n.frame) != n.sb.value,
                    !mobius_ok,
                    !frame_ok,
                ],
            )
        },
        Tally::<4>::empty,
        Tally::merge,
    );
    let [conjugate_failures, farey_failures, mobius_failures, frame_failures] = tally.failures;
    TopographReport {
        depth,
        nodes: tally.nodes,
        conjugate_failures,
        farey_failures,
        mobius_failures,
        frame_failures,
        first_failure_path: tally.first_failure,
        wall_time: start.elapsed(),
    }
}
