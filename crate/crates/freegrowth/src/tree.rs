//! Level counting over the substructure trees.
//!
//! Both trees are rooted at the empty gap set; the children of a node of
//! index `n` are the index-`n+1` gap sets obtained by removing one admissible
//! generator larger than the Frobenius. Level `n` therefore holds exactly the
//! index-`n` substructures, and counting is a tree walk.
//!
//! The walk is depth-first with work stealing over subtrees; per-level
//! counters are merged at join, so totals are independent of thread count and
//! traversal interleaving. A breadth-first stepper is kept for checkpointing.

use rayon::prelude::*;

use crate::gapset::GapSet;
use crate::words::RankTable;
use crate::{Error, Result};

/// Hard cap on enumeration depth (gap-set index).
pub const MAX_DEPTH: usize = 32;

/// Below this many remaining levels a subtree is walked sequentially.
const SEQUENTIAL_TAIL: usize = 3;

/// Which tree to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    /// All finite-index subsemigroups.
    Subsemigroup,
    /// Two-sided ideals only.
    Ideal,
}

impl TreeKind {
    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Subsemigroup => "subsemigroup",
            TreeKind::Ideal => "ideal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "subsemigroup" => Some(TreeKind::Subsemigroup),
            "ideal" => Some(TreeKind::Ideal),
            _ => None,
        }
    }

    /// Longest word the expansion can touch when enumerating to depth
    /// `n_max`: generator candidates are `x g y` with gaps `x, y` for the
    /// subsemigroup tree, one-letter extensions for the ideal tree.
    fn max_word_len(self, n_max: usize) -> u32 {
        match self {
            TreeKind::Subsemigroup => (4 * n_max).max(3) as u32,
            TreeKind::Ideal => (n_max + 1) as u32,
        }
    }

    /// Rank table sized for an enumeration of this kind, or a resource error
    /// when the word ranks would not fit in 64 bits.
    pub(crate) fn table(self, rank: u8, n_max: usize) -> Result<RankTable> {
        RankTable::new(rank, self.max_word_len(n_max)).map_err(|_| {
            Error::resource(format!(
                "rank-{rank} enumeration to depth {n_max} exceeds 64-bit word ranks"
            ))
        })
    }

    /// Ranks of the words whose removal produces the children of `g`,
    /// restricted to generator candidates built from `letters`.
    pub(crate) fn child_ranks(self, g: &GapSet, table: &RankTable, letters: &[u8]) -> Vec<u64> {
        let above = g.frobenius_rank();
        match self {
            TreeKind::Subsemigroup => g.generator_candidates(table, letters, above),
            TreeKind::Ideal => g.ideal_candidates(table, letters, above),
        }
    }

    /// Children of one node, with a per-call table; enumeration loops use
    /// [`TreeKind::child_ranks`] directly.
    pub fn children(self, g: &GapSet) -> Result<Vec<GapSet>> {
        let table = self.table(g.alphabet_rank(), g.index() + 1)?;
        let letters: Vec<u8> = (1..=g.alphabet_rank()).collect();
        Ok(self
            .child_ranks(g, &table, &letters)
            .into_iter()
            .map(|k| g.with_rank_added(k))
            .collect())
    }
}

/// Per-level tallies below one node, index 0 being the node's children.
#[derive(Clone, Copy)]
struct LevelCounts {
    v: [u64; MAX_DEPTH],
}

impl LevelCounts {
    fn zero() -> Self {
        LevelCounts { v: [0; MAX_DEPTH] }
    }

    fn merge(mut self, other: LevelCounts) -> Self {
        for (a, b) in self.v.iter_mut().zip(other.v.iter()) {
            *a += b;
        }
        self
    }

    /// Adds `other` shifted one level down (a child's tallies seen from its
    /// parent).
    fn absorb_child(&mut self, other: LevelCounts) {
        for (a, b) in self.v[1..].iter_mut().zip(other.v.iter()) {
            *a += b;
        }
    }
}

fn subtree_counts(
    kind: TreeKind,
    table: &RankTable,
    letters: &[u8],
    g: &GapSet,
    remaining: usize,
) -> LevelCounts {
    let kids = kind.child_ranks(g, table, letters);
    let mut acc = LevelCounts::zero();
    acc.v[0] = kids.len() as u64;
    if remaining <= 1 {
        return acc;
    }
    if remaining > SEQUENTIAL_TAIL && kids.len() > 1 {
        let below = kids
            .into_par_iter()
            .map(|k| subtree_counts(kind, table, letters, &g.with_rank_added(k), remaining - 1))
            .reduce(LevelCounts::zero, LevelCounts::merge);
        acc.absorb_child(below);
    } else {
        for k in kids {
            let child = g.with_rank_added(k);
            acc.absorb_child(subtree_counts(kind, table, letters, &child, remaining - 1));
        }
    }
    acc
}

fn check_depth(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::invalid(
            "enumeration depth must be at least 1".to_string(),
        ));
    }
    if n_max > MAX_DEPTH {
        return Err(Error::resource(format!(
            "enumeration depth {n_max} exceeds the supported maximum {MAX_DEPTH}"
        )));
    }
    Ok(())
}

/// Counts the nodes on levels `1..=n_max` of the chosen tree over the rank-`r`
/// free semigroup: exactly the number of index-`n` substructures per level.
pub fn count_levels(kind: TreeKind, rank: u8, n_max: usize) -> Result<Vec<u64>> {
    check_depth(n_max)?;
    let table = kind.table(rank, n_max)?;
    let letters: Vec<u8> = (1..=rank).collect();
    let root = GapSet::empty(rank)?;
    let counts = subtree_counts(kind, &table, &letters, &root, n_max);
    Ok(counts.v[..n_max].to_vec())
}

/// Continues a counting run from a breadth-first frontier at `depth`.
pub fn count_levels_from(
    kind: TreeKind,
    rank: u8,
    frontier: &[GapSet],
    depth: usize,
    n_max: usize,
) -> Result<Vec<u64>> {
    check_depth(n_max)?;
    if depth >= n_max {
        return Ok(Vec::new());
    }
    let table = kind.table(rank, n_max)?;
    let letters: Vec<u8> = (1..=rank).collect();
    let remaining = n_max - depth;
    let counts = frontier
        .par_iter()
        .map(|g| subtree_counts(kind, &table, &letters, g, remaining))
        .reduce(LevelCounts::zero, LevelCounts::merge);
    Ok(counts.v[..remaining].to_vec())
}

/// Expands a breadth-first frontier by one level, preserving order: children
/// are grouped by parent and shortlex-ordered within each group.
pub fn expand_frontier(
    kind: TreeKind,
    table: &RankTable,
    letters: &[u8],
    frontier: &[GapSet],
) -> Vec<GapSet> {
    let groups: Vec<Vec<GapSet>> = frontier
        .par_iter()
        .map(|g| {
            kind.child_ranks(g, table, letters)
                .into_iter()
                .map(|k| g.with_rank_added(k))
                .collect()
        })
        .collect();
    groups.into_iter().flatten().collect()
}

/// Materializes every node on levels `1..=n_max`; intended for invariant
/// sweeps on small instances.
pub fn collect_levels(kind: TreeKind, rank: u8, n_max: usize) -> Result<Vec<Vec<GapSet>>> {
    check_depth(n_max)?;
    let table = kind.table(rank, n_max)?;
    let letters: Vec<u8> = (1..=rank).collect();
    let mut levels = Vec::with_capacity(n_max);
    let mut frontier = vec![GapSet::empty(rank)?];
    for _ in 0..n_max {
        frontier = expand_frontier(kind, &table, &letters, &frontier);
        levels.push(frontier.clone());
    }
    Ok(levels)
}
