//! Exhaustive walks over every path of bounded length, carrying per-node state
//! from parent to child. Subtrees below a fixed split level are independent
//! work items; with the `parallel` feature they run on the current rayon pool.

use crate::path::{Path, Step};

/// Subtrees rooted at this depth are the unit of parallel work.
const SPLIT_LEVEL: usize = 8;

/// Visits every path with `|path| <= depth` and folds the visit results.
///
/// `merge` must be associative with `empty()` as identity; the result then
/// does not depend on how subtrees were scheduled.
pub(crate) fn fold_paths<S, R>(
    depth: usize,
    root: S,
    child: impl Fn(&S, Step) -> S + Sync,
    visit: impl Fn(&Path, &S) -> R + Sync,
    empty: impl Fn() -> R + Sync,
    merge: impl Fn(R, R) -> R + Sync,
) -> R
where
    S: Send + Sync,
    R: Send,
{
    let split = depth.min(SPLIT_LEVEL);

    // levels above the split, breadth first
    let mut acc = empty();
    let mut frontier = vec![(Path::root(), root)];
    for _ in 0..split {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (path, state) in &frontier {
            acc = merge(acc, visit(path, state));
            for step in [Step::L, Step::R] {
                next.push((path.child(step), child(state, step)));
            }
        }
        frontier = next;
    }

    let remaining = depth - split;
    let subtree = |(mut path, state): (Path, S)| {
        descend(&mut path, &state, remaining, &child, &visit, &merge)
    };

    #[cfg(feature = "parallel")]
    let below = {
        use rayon::prelude::*;
        frontier
            .into_par_iter()
            .map(subtree)
            .reduce(&empty, &merge)
    };
    #[cfg(not(feature = "parallel"))]
    let below = frontier.into_iter().map(subtree).fold(empty(), &merge);

    merge(acc, below)
}

fn descend<S, R>(
    path: &mut Path,
    state: &S,
    remaining: usize,
    child: &impl Fn(&S, Step) -> S,
    visit: &impl Fn(&Path, &S) -> R,
    merge: &impl Fn(R, R) -> R,
) -> R {
    let mut out = visit(path, state);
    if remaining > 0 {
        for step in [Step::L, Step::R] {
            let next = child(state, step);
            path.push(step);
            out = merge(out, descend(path, &next, remaining - 1, child, visit, merge));
            path.pop();
        }
    }
    out
}

/// Runs `f` with at most `jobs` worker threads for the exhaustive walks.
///
/// `None` uses the global pool. Without the `parallel` feature this just
/// calls `f`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("failed to start worker pool");
        return pool.install(f);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    f()
}
