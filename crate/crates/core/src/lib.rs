//! Exact enumeration of the positive rationals.
//!
//! Four binary trees that each list every positive rational exactly once, built
//! over arbitrary-precision integers:
//!
//! * the Calkin-Wilf tree ([`tree::cw_value`], [`tree::cw_unrank`]),
//! * the Stern-Brocot (Farey) tree ([`tree::sb_node`], [`tree::sb_row`]),
//! * the tree of the monoid SL₂(ℤ≥0) under its two free generators
//!   ([`matrix::from_path`], [`matrix::decompose`]),
//! * the forward flow of Conway's topograph from the edge {0, ∞}
//!   ([`topograph::forward_tree`]).
//!
//! The [`shadows`] module maps the matrix tree onto the two rational trees and
//! checks the correspondence exhaustively; [`topograph::verify_topograph_proof`]
//! checks the topograph argument for it frame by frame.
//!
//! With the default `parallel` feature the exhaustive walks are spread over a
//! rayon pool; without it they run sequentially with identical results.

pub mod error;
pub mod matrix;
pub mod path;
pub mod rational;
pub mod render;
pub mod shadows;
pub mod stern;
pub mod topograph;
pub mod tree;
mod walk;

pub use num_bigint;

pub use error::{Error, Result};
pub use matrix::Mat2;
pub use path::{Path, Step};
pub use rational::ExtendedRational;
pub use walk::with_jobs;
