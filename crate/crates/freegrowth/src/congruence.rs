//! Cayley tables, ascending generation, and congruence counting.
//!
//! A congruence with `n` classes on the rank-`r` free semigroup is determined
//! by an associative `n x n` Cayley table that is ascendingly generated by
//! its first `k` elements together with an assignment of the `r` generators
//! onto those `k` elements. Counting tables per `(n, k)` and assignments per
//! `(r, k)` (Stirling numbers of the second kind) therefore counts
//! congruences exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::gapset::GapSet;
use crate::ideal;
use crate::poly::ExponentialForm;
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

const UNSET: u8 = u8::MAX;

/// Largest table order the backtracking enumerator accepts; the top order is
/// slow and sits behind an explicit long-running flag in the CLI.
pub const MAX_TABLE_ORDER: u8 = 5;

/// An `n x n` binary operation on the ordered carrier `w_1 < ... < w_n`,
/// stored row-major with 0-based entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: u8,
    cells: Vec<u8>,
}

impl CayleyTable {
    pub fn new(n: u8, cells: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("table order must be at least 1".to_string()));
        }
        if cells.len() != (n as usize) * (n as usize) {
            return Err(Error::invalid(format!(
                "expected {} cells for an order-{n} table",
                (n as usize) * (n as usize)
            )));
        }
        if cells.iter().any(|&v| v >= n) {
            return Err(Error::invalid(
                "table entry outside the carrier".to_string(),
            ));
        }
        Ok(CayleyTable { n, cells })
    }

    pub fn order(&self) -> u8 {
        self.n
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Product of carrier elements `i` and `j` (0-based).
    #[inline]
    pub fn get(&self, i: u8, j: u8) -> u8 {
        self.cells[i as usize * self.n as usize + j as usize]
    }

    /// Checks all `n^3` triples.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                for l in 0..n {
                    if self.get(ij, l) != self.get(i, self.get(j, l)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_generator_count(&self, k: u8) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::invalid(format!(
                "generator count {k} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Least subset containing the first `k` elements and closed under the
    /// product, as sorted 0-based indices.
    pub fn generated_closure(&self, k: u8) -> Result<Vec<u8>> {
        self.check_generator_count(k)?;
        let n = self.n as usize;
        let mut inside = vec![false; n];
        for g in 0..k {
            inside[g as usize] = true;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                if !inside[i] {
                    continue;
                }
                for j in 0..n {
                    if !inside[j] {
                        continue;
                    }
                    let p = self.get(i as u8, j as u8) as usize;
                    if !inside[p] {
                        inside[p] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok((0..n as u8).filter(|&i| inside[i as usize]).collect())
    }

    pub fn is_generated_by(&self, k: u8) -> Result<bool> {
        Ok(self.generated_closure(k)?.len() == self.n as usize)
    }

    /// For each carrier element, the shortlex-least product expression over
    /// the first `k` elements evaluating to it, found by expanding product
    /// expressions in shortlex order and recording first arrivals. Errors
    /// when the table is not generated by the first `k` elements.
    pub fn minimal_decompositions(&self, k: u8) -> Result<Vec<Vec<u8>>> {
        self.check_generator_count(k)?;
        let n = self.n as usize;
        let mut dec: Vec<Option<Vec<u8>>> = vec![None; n];
        let mut found = 0usize;
        // Length-1 expressions are the generators themselves.
        let mut frontier: Vec<(Vec<u8>, u8)> = Vec::new();
        for g in 0..k {
            frontier.push((vec![g], g));
            if dec[g as usize].is_none() {
                dec[g as usize] = Some(vec![g]);
                found += 1;
            }
        }
        let mut len = 1usize;
        while found < n && len < n {
            let mut next = Vec::with_capacity(frontier.len() * k as usize);
            for (expr, value) in &frontier {
                for g in 0..k {
                    let mut e = expr.clone();
                    e.push(g);
                    let v = self.get(*value, g);
                    if dec[v as usize].is_none() {
                        dec[v as usize] = Some(e.clone());
                        found += 1;
                    }
                    next.push((e, v));
                }
            }
            frontier = next;
            len += 1;
        }
        if found < n {
            return Err(Error::invalid(format!(
                "table is not generated by its first {k} elements"
            )));
        }
        Ok(dec.into_iter().map(|d| d.expect("all found")).collect())
    }

    /// Generated by the first `k` elements with the non-generators'
    /// minimal decompositions strictly increasing.
    pub fn is_ascendingly_generated(&self, k: u8) -> Result<bool> {
        self.check_generator_count(k)?;
        if !self.is_generated_by(k)? {
            return Ok(false);
        }
        let dec = self.minimal_decompositions(k)?;
        Ok(dec[k as usize..].windows(2).all(|pair| {
            let (a, b) = (&pair[0], &pair[1]);
            (a.len(), a) < (b.len(), b)
        }))
    }

    /// One-line text form `n=3;k=2;rows=123,231,312` with 1-based entries.
    pub fn to_line(&self, k: u8) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| (self.get(i, j) + 1).to_string())
                    .collect::<String>()
            })
            .collect();
        format!("n={};k={};rows={}", self.n, k, rows.join(","))
    }

    pub fn parse_line(s: &str) -> Result<(CayleyTable, u8)> {
        let mut n: Option<u8> = None;
        let mut k: Option<u8> = None;
        let mut rows: Option<&str> = None;
        for field in s.trim().split(';') {
            if let Some(v) = field.strip_prefix("n=") {
                n = Some(v.parse().map_err(|_| Error::invalid("bad n="))?);
            } else if let Some(v) = field.strip_prefix("k=") {
                k = Some(v.parse().map_err(|_| Error::invalid("bad k="))?);
            } else if let Some(v) = field.strip_prefix("rows=") {
                rows = Some(v);
            } else {
                return Err(Error::invalid(format!("unknown table field {field:?}")));
            }
        }
        let (n, k, rows) = match (n, k, rows) {
            (Some(n), Some(k), Some(rows)) => (n, k, rows),
            _ => return Err(Error::invalid("table line missing n=, k= or rows=")),
        };
        let mut cells = Vec::with_capacity(n as usize * n as usize);
        for row in rows.split(',') {
            for ch in row.chars() {
                let digit = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::invalid("table entries must be digits"))?;
                if digit == 0 {
                    return Err(Error::invalid("table entries are 1-based"));
                }
                cells.push(digit as u8 - 1);
            }
        }
        Ok((CayleyTable::new(n, cells)?, k))
    }
}

/// Incremental associativity check after placing cell `(i, j)`: examines
/// every triple whose full evaluation became determined by this placement.
fn consistent_after(cells: &[u8], n: usize, i: usize, j: usize) -> bool {
    let at = |x: usize, y: usize| cells[x * n + y];
    let v = at(i, j);
    // Triples (i, j, z): (i j) z vs i (j z).
    for z in 0..n {
        let lhs = at(v as usize, z);
        if lhs == UNSET {
            continue;
        }
        let jz = at(j, z);
        if jz == UNSET {
            continue;
        }
        let rhs = at(i, jz as usize);
        if rhs != UNSET && rhs != lhs {
            return false;
        }
    }
    // Triples (x, i, j): (x i) j vs x (i j).
    for x in 0..n {
        let xi = at(x, i);
        if xi == UNSET {
            continue;
        }
        let lhs = at(xi as usize, j);
        if lhs == UNSET {
            continue;
        }
        let rhs = at(x, v as usize);
        if rhs != UNSET && rhs != lhs {
            return false;
        }
    }
    // Triples (x, y, j) whose left product cell is (i, j): x y = i.
    for x in 0..n {
        for y in 0..n {
            if at(x, y) != i as u8 {
                continue;
            }
            let yj = at(y, j);
            if yj == UNSET {
                continue;
            }
            let rhs = at(x, yj as usize);
            if rhs != UNSET && rhs != v {
                return false;
            }
        }
    }
    // Triples (i, y, z) whose right product cell is (i, j): y z = j.
    for y in 0..n {
        for z in 0..n {
            if at(y, z) != j as u8 {
                continue;
            }
            let iy = at(i, y);
            if iy == UNSET {
                continue;
            }
            let lhs = at(iy as usize, z);
            if lhs != UNSET && lhs != v {
                return false;
            }
        }
    }
    true
}

fn dfs_fill(cells: &mut Vec<u8>, idx: usize, end: usize, n: usize, sink: &mut impl FnMut(&[u8])) {
    if idx == end {
        sink(cells);
        return;
    }
    for v in 0..n as u8 {
        cells[idx] = v;
        if consistent_after(cells, n, idx / n, idx % n) {
            dfs_fill(cells, idx + 1, end, n, sink);
        }
    }
    cells[idx] = UNSET;
}

/// Enumerates every associative table of order `n` by row-major backtracking
/// with incremental associativity pruning, in deterministic (row-major
/// lexicographic) order. Parallelizes over first-row prefixes.
pub fn enumerate_associative(n: u8) -> Result<Vec<CayleyTable>> {
    if n == 0 {
        return Err(Error::invalid("table order must be at least 1".to_string()));
    }
    if n > MAX_TABLE_ORDER {
        return Err(Error::resource(format!(
            "order-{n} table enumeration is out of scope (max {MAX_TABLE_ORDER})"
        )));
    }
    let nn = n as usize;
    let mut stems: Vec<Vec<u8>> = Vec::new();
    let mut cells = vec![UNSET; nn * nn];
    dfs_fill(&mut cells, 0, nn, nn, &mut |partial| {
        stems.push(partial.to_vec())
    });
    let per_stem: Vec<Vec<CayleyTable>> = stems
        .into_par_iter()
        .map(|stem| {
            let mut cells = stem;
            let mut out = Vec::new();
            dfs_fill(&mut cells, nn, nn * nn, nn, &mut |full| {
                let t = CayleyTable {
                    n,
                    cells: full.to_vec(),
                };
                debug_assert!(t.is_associative());
                out.push(t);
            });
            out
        })
        .collect();
    Ok(per_stem.into_iter().flatten().collect())
}

/// `|T_{n,k}|` for `k = 1..=n`: associative tables ascendingly generated by
/// their first `k` elements.
pub fn ascending_counts(n: u8) -> Result<Vec<u64>> {
    let tables = enumerate_associative(n)?;
    (1..=n)
        .map(|k| {
            let count = tables
                .par_iter()
                .filter(|t| t.is_ascendingly_generated(k).expect("k in range"))
                .count();
            Ok(count as u64)
        })
        .collect()
}

/// `|T_{n,k}|` for one `(n, k)`.
pub fn enumerate_t(n: u8, k: u8) -> Result<u64> {
    let tables = enumerate_t_tables(n, k)?;
    Ok(tables.len() as u64)
}

/// The tables of `T_{n,k}` themselves, in deterministic order.
pub fn enumerate_t_tables(n: u8, k: u8) -> Result<Vec<CayleyTable>> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "generator count {k} out of range 1..={n}"
        )));
    }
    let tables = enumerate_associative(n)?;
    Ok(tables
        .into_iter()
        .filter(|t| t.is_ascendingly_generated(k).expect("k in range"))
        .collect())
}

/// Stirling numbers of the second kind by the standard recurrence.
pub fn stirling2(r: u64, k: u64) -> BigUint {
    if k > r {
        return BigUint::zero();
    }
    if r == 0 {
        return BigUint::from(1u32); // {0, 0} = 1
    }
    if k == 0 {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::from(1u32)]; // {1, 1}
    for m in 2..=r {
        let mut next = vec![BigUint::zero(); (m as usize).min(k as usize + 1)];
        for kk in 1..=m.min(k) {
            let keep = row
                .get(kk as usize - 1)
                .cloned()
                .unwrap_or_else(BigUint::zero);
            let take = if kk >= 2 {
                row.get(kk as usize - 2)
                    .cloned()
                    .unwrap_or_else(BigUint::zero)
            } else {
                BigUint::zero()
            };
            next[kk as usize - 1] = keep * BigUint::from(kk) + take;
        }
        row = next;
    }
    row.get(k as usize - 1)
        .cloned()
        .unwrap_or_else(BigUint::zero)
}

/// Number of congruences with `n` classes at rank `r`, given the table
/// counts `t_col[k-1] = |T_{n,k}|` for `k = 1..=n`:
/// `Σ_k {r brace k} |T_{n,k}|`.
pub fn count_congruences_from_tables(r: u64, t_col: &[u64]) -> BigUint {
    let mut total = BigUint::zero();
    for (idx, &t) in t_col.iter().enumerate() {
        let k = idx as u64 + 1;
        if k > r {
            break;
        }
        total += stirling2(r, k) * BigUint::from(t);
    }
    total
}

/// Counts congruences by enumerating the tables; small orders only.
pub fn count_congruences(n: u8, r: u64) -> Result<BigUint> {
    let t_col = ascending_counts(n)?;
    Ok(count_congruences_from_tables(r, &t_col))
}

/// The exponential form `Σ_j β_j j^r` with
/// `β_j = Σ_{k=j}^n (-1)^(k-j) C(k, j) |T_{n,k}| / k!`.
pub fn exponential_form(t_col: &[u64]) -> Result<ExponentialForm> {
    let n = t_col.len();
    if n == 0 {
        return Err(Error::invalid("need at least one table count".to_string()));
    }
    let mut betas = Vec::with_capacity(n);
    for j in 1..=n {
        let mut beta = BigRational::zero();
        for (k, &t) in t_col.iter().enumerate().take(n).skip(j - 1) {
            let k = k + 1;
            let mut fact = BigInt::from(1);
            for m in 2..=k as u64 {
                fact *= BigInt::from(m);
            }
            let choose = binomial(BigInt::from(k as u64), BigInt::from(j as u64));
            let term = BigRational::new(choose * BigInt::from(t), fact);
            if (k - j) % 2 == 0 {
                beta += term;
            } else {
                beta -= term;
            }
        }
        betas.push(beta);
    }
    ExponentialForm::from_betas(betas)
}

/// An assignment of the `r` free generators to carrier elements obeying the
/// first-appearance rule: `f(g_1) = w_1` and each later generator maps into
/// the elements seen so far plus at most one fresh element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    images: Vec<u8>,
}

impl Assignment {
    /// `images[i]` is the 0-based carrier index of generator `i + 1`.
    pub fn new(images: Vec<u8>, n: u8) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::invalid(
                "assignment needs at least one generator".to_string(),
            ));
        }
        let mut max_seen: i16 = -1;
        for &im in &images {
            if im as i16 > max_seen + 1 {
                return Err(Error::invalid(
                    "assignment violates the first-appearance rule".to_string(),
                ));
            }
            if im >= n {
                return Err(Error::invalid(
                    "assignment image outside carrier".to_string(),
                ));
            }
            max_seen = max_seen.max(im as i16);
        }
        Ok(Assignment { images })
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn generator_count(&self) -> u8 {
        self.images.len() as u8
    }

    /// Images form the contiguous block `w_1..w_k`; the size is the max + 1.
    pub fn image_size(&self) -> u8 {
        self.images.iter().copied().max().unwrap_or(0) + 1
    }

    /// All valid assignments of `r` generators into an `n`-element carrier.
    pub fn enumerate(r: u8, n: u8) -> Vec<Assignment> {
        let mut out = Vec::new();
        let mut images: Vec<u8> = Vec::with_capacity(r as usize);
        fn rec(r: u8, n: u8, images: &mut Vec<u8>, out: &mut Vec<Assignment>) {
            if images.len() == r as usize {
                out.push(Assignment {
                    images: images.clone(),
                });
                return;
            }
            let max_seen = images.iter().copied().max().map(|m| m as i16).unwrap_or(-1);
            let limit = ((max_seen + 1) as u8).min(n - 1);
            for v in 0..=limit {
                images.push(v);
                rec(r, n, images, out);
                images.pop();
            }
        }
        rec(r, n, &mut images, &mut out);
        out
    }
}

/// Classes of all words of length at most `depth` under the congruence
/// described by `(table, assignment)`: two words are equivalent when their
/// letterwise images multiply to the same carrier element. Returns one bucket
/// per carrier element, in carrier order.
pub fn congruence_partition(
    table: &CayleyTable,
    assignment: &Assignment,
    depth: usize,
) -> Result<Vec<Vec<Word>>> {
    let k = assignment.image_size();
    if k > table.order() {
        return Err(Error::invalid(
            "assignment image exceeds carrier".to_string(),
        ));
    }
    if !table.is_associative() || !table.is_ascendingly_generated(k)? {
        return Err(Error::invalid(
            "table is not ascendingly generated by the assignment image".to_string(),
        ));
    }
    let r = assignment.generator_count();
    let alphabet = Alphabet::new(r)?;
    let total = crate::words::words_shorter_than(depth as u32 + 1, r)
        .filter(|&t| t <= 2_000_000)
        .ok_or_else(|| Error::resource("word partition depth too large".to_string()))?;
    let mut classes: Vec<Vec<Word>> = vec![Vec::new(); table.order() as usize];
    for rank in 1..=total {
        let w = crate::words::word_from_rank(rank, r)?;
        let mut letters = w.letters().iter();
        let first = *letters.next().expect("non-empty");
        let mut v = assignment.images()[first as usize - 1];
        for &l in letters {
            v = table.get(v, assignment.images()[l as usize - 1]);
        }
        classes[v as usize].push(alphabet.word(w.letters().to_vec())?);
    }
    Ok(classes)
}

/// Class count of the congruence collapsing a two-sided ideal: each gap is a
/// singleton class and the whole ideal is one class.
pub fn rees_congruence_classes(g: &GapSet) -> Result<u64> {
    if !ideal::is_two_sided_ideal(g)? {
        return Err(Error::invalid(
            "Rees congruences require a two-sided ideal gap set".to_string(),
        ));
    }
    Ok(g.index() as u64 + 1)
}
