//! Level-order traversal of the n-regular tree of mutation sequences.

use alloc::vec::Vec;

use crate::path::MutationPath;

/// Number of reduced mutation sequences of length at most `depth` in rank `rank`.
pub fn tree_vertex_count(rank: usize, depth: usize) -> usize {
    let mut total = 1usize;
    let mut level = 1usize;
    for d in 0..depth {
        level = level.saturating_mul(if d == 0 { rank } else { rank.saturating_sub(1) });
        if level == 0 {
            break;
        }
        total = total.saturating_add(level);
    }
    total
}

/// Visits every reduced mutation sequence of length at most `depth`, shortest first and
/// lexicographically within a length. The state at a child is produced by `step`; walking stops
/// at the first error from either closure.
pub fn walk_levels<S, E>(
    root: S,
    rank: usize,
    depth: usize,
    mut step: impl FnMut(&S, usize, &MutationPath) -> Result<S, E>,
    mut visit: impl FnMut(&S, &MutationPath) -> Result<(), E>,
) -> Result<(), E> {
    let root_path = MutationPath::empty();
    visit(&root, &root_path)?;
    let mut level = Vec::from([(root_path, root)]);
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * rank.saturating_sub(1).max(1));
        for (path, state) in &level {
            for k in 0..rank {
                if path.last() == Some(k) {
                    continue;
                }
                let child_path = path.pushed(k);
                let child = step(state, k, &child_path)?;
                visit(&child, &child_path)?;
                next.push((child_path, child));
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(())
}

/// Early exit from a walk: either a witness was found or a computation failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stop<W> {
    Found(W),
    Failed(crate::error::Error),
}

impl<W> From<crate::error::Error> for Stop<W> {
    fn from(e: crate::error::Error) -> Self {
        Stop::Failed(e)
    }
}

/// Folds `step` along `path` starting from `root`.
pub fn walk_path<S, E>(
    root: S,
    path: &MutationPath,
    mut step: impl FnMut(&S, usize, &MutationPath) -> Result<S, E>,
) -> Result<S, E> {
    let mut state = root;
    let mut so_far = MutationPath::empty();
    for &k in path.steps() {
        so_far = so_far.pushed(k);
        state = step(&state, k, &so_far)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::convert::Infallible;

    #[test]
    fn vertex_counts() {
        assert_eq!(tree_vertex_count(2, 5), 11);
        assert_eq!(tree_vertex_count(3, 2), 10);
        assert_eq!(tree_vertex_count(1, 7), 2);
        let mut seen = 0;
        walk_levels(
            (),
            3,
            4,
            |_, _, _| Ok::<(), Infallible>(()),
            |_, _| {
                seen += 1;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(seen, tree_vertex_count(3, 4));
    }

    #[test]
    fn counts_reduced_words() {
        // 1 + n + n(n-1) + n(n-1)^2 for n = 3, depth 3
        let mut count = 0usize;
        walk_levels::<(), Infallible>(
            (),
            3,
            3,
            |_, _, _| Ok(()),
            |_, p| {
                assert!(p.is_reduced());
                count += 1;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(count, 1 + 3 + 6 + 12);
    }

    #[test]
    fn rank_one_stops_after_one_step() {
        let mut count = 0usize;
        walk_levels::<(), Infallible>(
            (),
            1,
            5,
            |_, _, _| Ok(()),
            |_, _| {
                count += 1;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(count, 2);
    }
}
