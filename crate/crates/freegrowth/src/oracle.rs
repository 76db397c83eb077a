//! Independent brute-force counters for small instances.
//!
//! Every fast path in the crate has a slow twin here. The oracles share only
//! the words module with the enumeration code (and the table oracle not even
//! that), so a bug in the gap-set or tree machinery cannot validate itself.
//! All oracles are deliberately single-threaded and simple.

use std::collections::HashSet;

use crate::words::{self, Word};
use crate::{Error, Result};

fn candidate_words(r: u8, max_len: u32) -> Result<Vec<Word>> {
    let total = words::words_shorter_than(max_len + 1, r)
        .ok_or_else(|| Error::resource("candidate word list too large".to_string()))?;
    (1..=total).map(|k| words::word_from_rank(k, r)).collect()
}

/// Counts `n`-element word sets whose complement is a subsemigroup, by
/// depth-first choice over the shortlex-ordered candidates. A word may join
/// only if every split already has a side in the set; both sides of any split
/// are shorter than the word, hence already decided, so the check is exact.
pub fn brute_force_subsemigroups(r: u8, n: usize) -> Result<u64> {
    if r == 0 || n == 0 {
        return Err(Error::invalid(
            "rank and index must be at least 1".to_string(),
        ));
    }
    if r > 3 || n > 4 {
        return Err(Error::resource(format!(
            "subsemigroup oracle supports rank <= 3 and index <= 4, got r={r} n={n}"
        )));
    }
    // Gaps of an index-n subsemigroup have length at most 2n - 1.
    let candidates = candidate_words(r, 2 * n as u32 - 1)?;
    let mut chosen: HashSet<Word> = HashSet::new();
    let mut count = 0u64;
    subsemigroup_dfs(&candidates, 0, n, &mut chosen, &mut count);
    Ok(count)
}

fn splits_supported(w: &Word, chosen: &HashSet<Word>) -> bool {
    for i in 1..w.len() {
        let pre = w.prefix(i).expect("in range");
        let suf = w.suffix(w.len() - i).expect("in range");
        if !chosen.contains(&pre) && !chosen.contains(&suf) {
            return false;
        }
    }
    true
}

fn subsemigroup_dfs(
    candidates: &[Word],
    from: usize,
    left: usize,
    chosen: &mut HashSet<Word>,
    count: &mut u64,
) {
    for idx in from..candidates.len() {
        let w = &candidates[idx];
        if !splits_supported(w, chosen) {
            continue;
        }
        chosen.insert(w.clone());
        if left == 1 {
            *count += 1;
        } else {
            subsemigroup_dfs(candidates, idx + 1, left - 1, chosen, count);
        }
        chosen.remove(w);
    }
}

fn ideal_oracle(r: u8, n: usize, suffix_too: bool) -> Result<u64> {
    if r == 0 || n == 0 {
        return Err(Error::invalid(
            "rank and index must be at least 1".to_string(),
        ));
    }
    if r > 3 || n > 6 {
        return Err(Error::resource(format!(
            "ideal oracle supports rank <= 3 and index <= 6, got r={r} n={n}"
        )));
    }
    // Prefix-closed sets contain every prefix of a member, so members have
    // length at most n.
    let candidates = candidate_words(r, n as u32)?;
    let mut chosen: HashSet<Word> = HashSet::new();
    let mut count = 0u64;
    ideal_dfs(&candidates, 0, n, suffix_too, &mut chosen, &mut count);
    Ok(count)
}

fn ideal_dfs(
    candidates: &[Word],
    from: usize,
    left: usize,
    suffix_too: bool,
    chosen: &mut HashSet<Word>,
    count: &mut u64,
) {
    for idx in from..candidates.len() {
        let w = &candidates[idx];
        if w.len() >= 2 {
            let pre = w.prefix(w.len() - 1).expect("in range");
            if !chosen.contains(&pre) {
                continue;
            }
            if suffix_too {
                let suf = w.suffix(w.len() - 1).expect("in range");
                if !chosen.contains(&suf) {
                    continue;
                }
            }
        }
        chosen.insert(w.clone());
        if left == 1 {
            *count += 1;
        } else {
            ideal_dfs(candidates, idx + 1, left - 1, suffix_too, chosen, count);
        }
        chosen.remove(w);
    }
}

/// Counts prefix-closed `n`-element word sets: the gap sets of right ideals.
pub fn brute_force_right_ideals(r: u8, n: usize) -> Result<u64> {
    ideal_oracle(r, n, false)
}

/// Counts prefix- and suffix-closed `n`-element word sets: the gap sets of
/// two-sided ideals.
pub fn brute_force_two_sided_ideals(r: u8, n: usize) -> Result<u64> {
    ideal_oracle(r, n, true)
}

/// Full-scan table oracle: enumerates all `n^(n^2)` binary operations on an
/// `n`-element carrier, filters the associative ones, and classifies them by
/// the least generator prefix for which they are ascendingly generated.
/// Returns the counts for `k = 1..=n`.
pub fn brute_force_tables(n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("table order must be at least 1".to_string()));
    }
    if n > 3 {
        return Err(Error::resource(format!(
            "full table scan supports order <= 3 (got {n}); use the backtracking enumerator for larger orders"
        )));
    }
    let cells_len = n * n;
    let mut cells = vec![0u8; cells_len];
    let mut counts = vec![0u64; n];
    loop {
        if scan_is_associative(&cells, n) {
            for k in 1..=n {
                if scan_is_ascending(&cells, n, k) {
                    counts[k - 1] += 1;
                }
            }
        }
        // Odometer over base-n digits.
        let mut pos = 0;
        loop {
            if pos == cells_len {
                return Ok(counts);
            }
            cells[pos] += 1;
            if (cells[pos] as usize) < n {
                break;
            }
            cells[pos] = 0;
            pos += 1;
        }
    }
}

fn scan_is_associative(cells: &[u8], n: usize) -> bool {
    let at = |i: usize, j: usize| cells[i * n + j] as usize;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if at(at(i, j), l) != at(i, at(j, l)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Ascending check by explicit expression enumeration: walk all products of
/// the first `k` elements in shortlex order, record each element's first
/// arrival, and demand the non-generators appear in carrier order.
fn scan_is_ascending(cells: &[u8], n: usize, k: usize) -> bool {
    let at = |i: usize, j: usize| cells[i * n + j] as usize;
    let mut arrival: Vec<Option<usize>> = vec![None; n];
    let mut stamp = 0usize;
    for slot in arrival.iter_mut().take(k) {
        *slot = Some(stamp);
        stamp += 1;
    }
    // Expressions of length l, in lex order, as (values reached).
    let mut frontier: Vec<usize> = (0..k).collect();
    for _ in 2..=n {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for &v in &frontier {
            for g in 0..k {
                let p = at(v, g);
                if arrival[p].is_none() {
                    arrival[p] = Some(stamp);
                    stamp += 1;
                }
                next.push(p);
            }
        }
        frontier = next;
    }
    if arrival.iter().any(|a| a.is_none()) {
        return false; // not generated
    }
    let tail: Vec<usize> = arrival[k..].iter().map(|a| a.unwrap()).collect();
    tail.windows(2).all(|p| p[0] < p[1])
}
