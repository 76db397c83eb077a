//! Gap patterns: gap sets up to relabelling of the generators.
//!
//! Two gap sets have the same pattern when a permutation of the letters maps
//! one onto the other. Each pattern is stored by its minimal representative:
//! relabel the support onto `g_1..g_k` so that the concatenation of the
//! shortlex-sorted gaps is lexicographically least over all relabellings.
//! Counting patterns by support size and orbit size turns level counts into
//! binomial sums in the rank, which is what makes the fixed-index polynomials
//! computable.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::gapset::GapSet;
use crate::poly::{stirling_first, GrowthPolynomial};
use crate::tree::TreeKind;
use crate::words::{self, Word};
use crate::{Error, Result};

/// Canonicalization enumerates all `k!` relabellings; the level cap keeps
/// that affordable.
pub const MAX_PATTERN_INDEX: usize = 9;

/// An injective relabelling of support letters onto an initial segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterMap {
    /// `(original letter, image letter)` pairs, sorted by original letter.
    pairs: Vec<(u8, u8)>,
}

impl LetterMap {
    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn image(&self, letter: u8) -> Option<u8> {
        self.pairs
            .iter()
            .find(|&&(from, _)| from == letter)
            .map(|&(_, to)| to)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let letters: Option<Vec<u8>> = w.letters().iter().map(|&l| self.image(l)).collect();
        let letters =
            letters.ok_or_else(|| Error::invalid("letter outside map support".to_string()))?;
        Word::from_letters(letters)
    }
}

/// A canonical gap set over the alphabet of its own support, with the size of
/// its relabelling orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub gaps: GapSet,
    pub orbit: u64,
}

impl Pattern {
    pub fn support_size(&self) -> u8 {
        self.gaps.alphabet_rank()
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(k);
    let mut used = vec![false; k + 1];
    fn rec(k: usize, current: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in 1..=k as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                current.push(v);
                rec(k, current, used, out);
                current.pop();
                used[v as usize] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, &mut out);
    out
}

/// Image of the gap set under `support[i] -> target[i]`, as sorted ranks over
/// the rank-`k` alphabet.
fn image_ranks(gap_words: &[Word], support: &[u8], target: &[u8], k: u8) -> Vec<u64> {
    let mut map = [0u8; words::MAX_RANK as usize + 1];
    for (pos, &letter) in support.iter().enumerate() {
        map[letter as usize] = target[pos];
    }
    let mut ranks: Vec<u64> = gap_words
        .iter()
        .map(|w| {
            let letters: Vec<u8> = w.letters().iter().map(|&l| map[l as usize]).collect();
            words::shortlex_rank(&Word::from_letters(letters).expect("non-empty"), k)
        })
        .collect();
    ranks.sort_unstable();
    ranks
}

/// Canonical form, minimizing relabelling, and orbit size in one sweep over
/// all `k!` relabellings of the support.
fn canonical_orbit(g: &GapSet) -> Result<(GapSet, LetterMap, u64)> {
    if g.is_empty() {
        return Err(Error::invalid(
            "the empty gap set has no canonical pattern".to_string(),
        ));
    }
    let support = g.support();
    let k = support.len();
    if k > MAX_PATTERN_INDEX {
        return Err(Error::resource(format!(
            "support size {k} exceeds the canonicalization cap {MAX_PATTERN_INDEX}"
        )));
    }
    let gap_words = g.words();
    let mut best: Option<(Vec<u64>, Vec<u8>)> = None;
    let mut distinct: BTreeSet<Vec<u64>> = BTreeSet::new();
    for target in permutations(k) {
        let ranks = image_ranks(&gap_words, &support, &target, k as u8);
        // Gap lengths are permutation-invariant, so comparing sorted rank
        // vectors is exactly comparing concatenated letter sequences.
        if best.as_ref().is_none_or(|(b, _)| ranks < *b) {
            best = Some((ranks.clone(), target.clone()));
        }
        distinct.insert(ranks);
    }
    let (ranks, target) = best.expect("k >= 1 has at least one relabelling");
    let pairs: Vec<(u8, u8)> = support.iter().copied().zip(target).collect();
    Ok((
        GapSet::from_ranks_unchecked(k as u8, ranks),
        LetterMap { pairs },
        distinct.len() as u64,
    ))
}

/// The minimal representative of the pattern of `g`, with the minimizing
/// relabelling of its support.
pub fn canonicalize(g: &GapSet) -> Result<(GapSet, LetterMap)> {
    let (canonical, map, _) = canonical_orbit(g)?;
    Ok((canonical, map))
}

/// Number of distinct images of a canonical gap set under all permutations of
/// its support; always a divisor of `k!`.
pub fn orbit_size(canonical: &GapSet) -> Result<u64> {
    let (again, _, orbit) = canonical_orbit(canonical)?;
    if &again != canonical {
        return Err(Error::invalid(
            "gap set is not a canonical pattern representative".to_string(),
        ));
    }
    Ok(orbit)
}

/// Patterns of every index up to a bound, built level by level: descendants
/// of the previous level's patterns over their own support, plus descendants
/// of one-smaller-support patterns that use a single fresh letter, then
/// canonicalized and deduplicated.
#[derive(Debug)]
pub struct ZTable {
    kind: TreeKind,
    /// `levels[n - 1]`: canonical patterns of index `n`, sorted by
    /// (support size, gap ranks).
    levels: Vec<Vec<Pattern>>,
}

impl ZTable {
    pub fn compute(kind: TreeKind, n_max: usize) -> Result<ZTable> {
        if n_max == 0 {
            return Err(Error::invalid(
                "pattern index must be at least 1".to_string(),
            ));
        }
        if n_max > MAX_PATTERN_INDEX {
            return Err(Error::resource(format!(
                "pattern tables above index {MAX_PATTERN_INDEX} are not supported"
            )));
        }
        let seed = Pattern {
            gaps: GapSet::from_ranks_unchecked(1, vec![1]),
            orbit: 1,
        };
        let mut levels = vec![vec![seed]];
        for n in 2..=n_max {
            let parents = &levels[n - 2];
            let children: Vec<Vec<(u8, Vec<u64>)>> = parents
                .par_iter()
                .map(|p| expand_pattern(kind, p, n))
                .collect::<Result<_>>()?;
            let unique: BTreeSet<(u8, Vec<u64>)> = children.into_iter().flatten().collect();
            let mut level: Vec<Pattern> = unique
                .into_par_iter()
                .map(|(k, ranks)| {
                    let gaps = GapSet::from_ranks_unchecked(k, ranks);
                    let orbit = orbit_size(&gaps)?;
                    Ok(Pattern { gaps, orbit })
                })
                .collect::<Result<_>>()?;
            level.sort_by(|a, b| {
                (a.support_size(), a.gaps.gap_ranks()).cmp(&(b.support_size(), b.gaps.gap_ranks()))
            });
            levels.push(level);
        }
        Ok(ZTable { kind, levels })
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn max_index(&self) -> usize {
        self.levels.len()
    }

    pub fn patterns(&self, n: usize) -> &[Pattern] {
        &self.levels[n - 1]
    }

    /// `|Z(n, k, i)|` keyed by (support size, orbit size).
    pub fn class_counts(&self, n: usize) -> std::collections::BTreeMap<(u8, u64), u64> {
        let mut out = std::collections::BTreeMap::new();
        for p in self.patterns(n) {
            *out.entry((p.support_size(), p.orbit)).or_insert(0) += 1;
        }
        out
    }

    /// `c(n, k) = Σ_i |Z(n, k, i)| · i`: patterns of support `k` weighted by
    /// orbit size.
    pub fn coefficient(&self, n: usize, k: u8) -> u64 {
        self.patterns(n)
            .iter()
            .filter(|p| p.support_size() == k)
            .map(|p| p.orbit)
            .sum()
    }

    /// `Σ_k c(n, k) C(r, k)`: the level-`n` count at rank `r`, assembled from
    /// patterns rather than tree enumeration.
    pub fn count_at_rank(&self, n: usize, r: u64) -> BigUint {
        let mut total = BigUint::zero();
        for k in 1..=n.min(words::MAX_RANK as usize) {
            let c = self.coefficient(n, k as u8);
            if c != 0 {
                total += BigUint::from(c) * binomial(BigUint::from(r), BigUint::from(k as u64));
            }
        }
        total
    }

    /// Expands `Σ_k c(n,k)/k! · r(r-1)...(r-k+1)` into powers of `r`.
    pub fn polynomial(&self, n: usize) -> Result<GrowthPolynomial> {
        let mut coeffs = vec![BigRational::zero(); n];
        for k in 1..=n {
            let c = self.coefficient(n, k as u8);
            if c == 0 {
                continue;
            }
            let mut fact = num_bigint::BigInt::from(1);
            for m in 2..=k as u64 {
                fact *= num_bigint::BigInt::from(m);
            }
            let scale = BigRational::new(num_bigint::BigInt::from(c), fact);
            for (j, slot) in coeffs.iter_mut().enumerate().take(k) {
                *slot += &scale * BigRational::from_integer(stirling_first(k, j + 1));
            }
        }
        GrowthPolynomial::from_coefficients(coeffs)
    }
}

/// Index-`n` descendants of one index-`n-1` pattern, canonicalized, keyed for
/// deduplication. Fresh-letter children only exist when the support may still
/// grow within the support-at-most-index bound.
fn expand_pattern(kind: TreeKind, parent: &Pattern, n: usize) -> Result<Vec<(u8, Vec<u64>)>> {
    let mut out = Vec::new();
    let k = parent.gaps.alphabet_rank();
    let table = parent.gaps.candidate_table()?;
    let letters: Vec<u8> = (1..=k).collect();
    for rank in kind.child_ranks(&parent.gaps, &table, &letters) {
        let child = parent.gaps.with_rank_added(rank);
        let (canonical, _) = canonicalize(&child)?;
        debug_assert_eq!(canonical.alphabet_rank(), k);
        out.push((k, canonical.gap_ranks().to_vec()));
    }
    if (k as usize) < n && k < words::MAX_RANK {
        let lifted = parent.gaps.with_alphabet_rank(k + 1)?;
        let table = lifted.candidate_table()?;
        for rank in kind.child_ranks(&lifted, &table, &[k + 1]) {
            let child = lifted.with_rank_added(rank);
            let (canonical, _) = canonicalize(&child)?;
            debug_assert_eq!(canonical.alphabet_rank(), k + 1);
            out.push((k + 1, canonical.gap_ranks().to_vec()));
        }
    }
    Ok(out)
}
