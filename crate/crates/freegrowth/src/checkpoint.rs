//! Checkpoint files for resumable breadth-first counting runs.
//!
//! A checkpoint holds the complete breadth-first frontier at some depth plus
//! the level counts accumulated so far, so a killed run resumed from the file
//! must reproduce exactly the counts of an uninterrupted run. Layout:
//!
//! ```text
//! freegrowth-ckpt v1; kind=subsemigroup; r=2; depth=5
//! r=2; gaps=a,b,aa,ab,ba
//! ...                      (one gap set per frontier node)
//! counts=2,11,62,382,2562
//! ```

use std::fs;
use std::path::Path;

use crate::gapset::GapSet;
use crate::tree::{self, TreeKind};
use crate::{Error, Result};

pub const FORMAT_TAG: &str = "freegrowth-ckpt v1";

/// A paused breadth-first enumeration.
#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub kind: TreeKind,
    pub rank: u8,
    pub depth: usize,
    /// Level counts `a_1 .. a_depth`.
    pub counts: Vec<u64>,
    /// Every node at `depth`, in deterministic breadth-first order.
    pub frontier: Vec<GapSet>,
}

impl Checkpoint {
    /// A fresh run positioned at the tree root.
    pub fn fresh(kind: TreeKind, rank: u8) -> Result<Self> {
        Ok(Checkpoint {
            kind,
            rank,
            depth: 0,
            counts: Vec::new(),
            frontier: vec![GapSet::empty(rank)?],
        })
    }

    /// Expands one breadth-first level.
    pub fn step(&mut self) -> Result<()> {
        let table = self.kind.table(self.rank, self.depth + 1)?;
        let letters: Vec<u8> = (1..=self.rank).collect();
        self.frontier = tree::expand_frontier(self.kind, &table, &letters, &self.frontier);
        self.depth += 1;
        self.counts.push(self.frontier.len() as u64);
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{FORMAT_TAG}; kind={}; r={}; depth={}\n",
            self.kind.name(),
            self.rank,
            self.depth
        ));
        for g in &self.frontier {
            out.push_str(&g.to_text());
            out.push('\n');
        }
        let counts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("counts={}\n", counts.join(",")));
        out
    }

    /// Writes via a temporary file and rename, so an interrupted write never
    /// clobbers the previous checkpoint.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.render())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("empty checkpoint file".to_string()))?;
        let mut kind = None;
        let mut rank = None;
        let mut depth = None;
        let mut fields = header.split(';').map(str::trim);
        if fields.next() != Some(FORMAT_TAG) {
            return Err(Error::invalid(format!(
                "checkpoint header must start with {FORMAT_TAG:?}"
            )));
        }
        for field in fields {
            if let Some(v) = field.strip_prefix("kind=") {
                kind = Some(
                    TreeKind::parse(v)
                        .ok_or_else(|| Error::invalid(format!("unknown checkpoint kind {v:?}")))?,
                );
            } else if let Some(v) = field.strip_prefix("r=") {
                rank = Some(
                    v.parse::<u8>()
                        .map_err(|_| Error::invalid(format!("bad checkpoint rank {v:?}")))?,
                );
            } else if let Some(v) = field.strip_prefix("depth=") {
                depth = Some(
                    v.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad checkpoint depth {v:?}")))?,
                );
            } else {
                return Err(Error::invalid(format!(
                    "unknown checkpoint header field {field:?}"
                )));
            }
        }
        let (kind, rank, depth) = match (kind, rank, depth) {
            (Some(k), Some(r), Some(d)) => (k, r, d),
            _ => {
                return Err(Error::invalid(
                    "checkpoint header missing kind=, r= or depth=".to_string(),
                ))
            }
        };
        let mut frontier = Vec::new();
        let mut counts: Option<Vec<u64>> = None;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("counts=") {
                let parsed: Result<Vec<u64>> = v
                    .split(',')
                    .filter(|f| !f.is_empty())
                    .map(|f| {
                        f.parse::<u64>()
                            .map_err(|_| Error::invalid(format!("bad checkpoint count {f:?}")))
                    })
                    .collect();
                counts = Some(parsed?);
            } else {
                let g = GapSet::parse(line)?;
                if g.alphabet_rank() != rank {
                    return Err(Error::invalid(
                        "checkpoint frontier rank disagrees with header".to_string(),
                    ));
                }
                if g.index() != depth {
                    return Err(Error::invalid(
                        "checkpoint frontier node index disagrees with depth".to_string(),
                    ));
                }
                frontier.push(g);
            }
        }
        let counts = counts
            .ok_or_else(|| Error::invalid("checkpoint missing counts= trailer".to_string()))?;
        if counts.len() != depth {
            return Err(Error::invalid(
                "checkpoint counts length disagrees with depth".to_string(),
            ));
        }
        if depth > 0 && counts[depth - 1] != frontier.len() as u64 {
            return Err(Error::invalid(
                "checkpoint frontier size disagrees with last count".to_string(),
            ));
        }
        Ok(Checkpoint {
            kind,
            rank,
            depth,
            counts,
            frontier,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_through_text() {
        let mut cp = Checkpoint::fresh(TreeKind::Subsemigroup, 2).unwrap();
        for _ in 0..3 {
            cp.step().unwrap();
        }
        assert_eq!(cp.counts, vec![2, 11, 62]);
        let text = cp.render();
        assert!(text.starts_with("freegrowth-ckpt v1; kind=subsemigroup; r=2; depth=3\n"));
        assert!(text.ends_with("counts=2,11,62\n"));
        let back = Checkpoint::parse(&text).unwrap();
        assert_eq!(back.depth, 3);
        assert_eq!(back.counts, cp.counts);
        assert_eq!(back.frontier, cp.frontier);
    }

    #[test]
    fn resumed_counts_match_fresh_run() {
        let mut cp = Checkpoint::fresh(TreeKind::Ideal, 2).unwrap();
        for _ in 0..4 {
            cp.step().unwrap();
        }
        let reloaded = Checkpoint::parse(&cp.render()).unwrap();
        let tail = tree::count_levels_from(reloaded.kind, reloaded.rank, &reloaded.frontier, 4, 6)
            .unwrap();
        let mut full = reloaded.counts.clone();
        full.extend(tail);
        assert_eq!(full, tree::count_levels(TreeKind::Ideal, 2, 6).unwrap());
    }

    #[test]
    fn malformed_checkpoints_are_rejected() {
        assert!(Checkpoint::parse("").is_err());
        assert!(Checkpoint::parse("wrong header\ncounts=\n").is_err());
        let mut cp = Checkpoint::fresh(TreeKind::Subsemigroup, 2).unwrap();
        cp.step().unwrap();
        let text = cp.render().replace("counts=2", "counts=3");
        assert!(Checkpoint::parse(&text).is_err());
    }
}
