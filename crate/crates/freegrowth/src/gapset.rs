//! Gap sets: finite complements of subsemigroups of a free semigroup.
//!
//! A set of words is a valid gap set when its complement is closed under
//! concatenation, i.e. no gap splits into two non-gaps. The index of the
//! subsemigroup equals the number of gaps. Gap sets are stored as sorted
//! shortlex ranks; membership is a binary search and all word surgery in the
//! hot paths happens on `(length, lex)` pairs via [`RankTable`].

use crate::words::{self, Alphabet, RankTable, Word};
use crate::{Error, Result};

/// The complement of a finite-index subsemigroup, as sorted shortlex ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapSet {
    rank: u8,
    ranks: Vec<u64>,
}

impl GapSet {
    /// The empty gap set, representing the whole free semigroup.
    pub fn empty(rank: u8) -> Result<Self> {
        Alphabet::new(rank)?;
        Ok(GapSet {
            rank,
            ranks: Vec::new(),
        })
    }

    /// Builds a gap set from words, validating closure of the complement.
    pub fn new(rank: u8, gaps: &[Word]) -> Result<Self> {
        if !validate_gap_set(rank, gaps)? {
            return Err(Error::invalid(
                "complement of the given gaps is not a subsemigroup".to_string(),
            ));
        }
        let mut ranks: Vec<u64> = gaps.iter().map(|w| words::shortlex_rank(w, rank)).collect();
        ranks.sort_unstable();
        ranks.dedup();
        Ok(GapSet { rank, ranks })
    }

    pub(crate) fn from_ranks_unchecked(rank: u8, ranks: Vec<u64>) -> Self {
        debug_assert!(ranks.windows(2).all(|w| w[0] < w[1]));
        GapSet { rank, ranks }
    }

    /// The ordinary gap set: the first `n` words of the shortlex enumeration.
    pub fn ordinary(n: usize, rank: u8) -> Result<Self> {
        Alphabet::new(rank)?;
        Ok(GapSet {
            rank,
            ranks: (1..=n as u64).collect(),
        })
    }

    pub fn alphabet_rank(&self) -> u8 {
        self.rank
    }

    /// The index of the subsemigroup: the number of gaps.
    pub fn index(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn gap_ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn words(&self) -> Vec<Word> {
        self.ranks
            .iter()
            .map(|&k| words::word_from_rank(k, self.rank).expect("stored rank is valid"))
            .collect()
    }

    #[inline]
    pub fn contains_rank(&self, k: u64) -> bool {
        self.ranks.binary_search(&k).is_ok()
    }

    pub fn contains(&self, w: &Word) -> bool {
        match words::try_shortlex_rank(w, self.rank) {
            Some(k) => self.contains_rank(k),
            None => false,
        }
    }

    /// Length of the longest gap (0 when empty).
    pub fn max_gap_len(&self) -> u32 {
        match self.ranks.last() {
            None => 0,
            Some(&k) => words::word_from_rank(k, self.rank)
                .expect("stored rank is valid")
                .len() as u32,
        }
    }

    /// The shortlex-largest gap.
    pub fn frobenius(&self) -> Result<Word> {
        let k = self
            .frobenius_rank()
            .ok_or_else(|| Error::invalid("the empty gap set has no Frobenius".to_string()))?;
        words::word_from_rank(k, self.rank)
    }

    pub fn frobenius_rank(&self) -> Option<u64> {
        self.ranks.last().copied()
    }

    /// The shortlex-least word of the complement.
    pub fn multiplicity(&self) -> Word {
        words::word_from_rank(self.multiplicity_rank(), self.rank).expect("rank fits")
    }

    pub fn multiplicity_rank(&self) -> u64 {
        // Gaps are sorted; the multiplicity is the first hole in 1, 2, 3, ...
        for (idx, &k) in self.ranks.iter().enumerate() {
            if k != idx as u64 + 1 {
                return idx as u64 + 1;
            }
        }
        self.ranks.len() as u64 + 1
    }

    /// All gaps precede the whole complement (`f < m`); vacuous when empty.
    pub fn is_ordinary(&self) -> bool {
        match self.ranks.last() {
            None => true,
            Some(&last) => last == self.ranks.len() as u64,
        }
    }

    /// Rank table sized for minimal-generator candidates `x g y` with
    /// `x, y` gaps.
    pub(crate) fn candidate_table(&self) -> Result<RankTable> {
        RankTable::new(self.rank, 2 * self.max_gap_len() + 1)
    }

    #[inline]
    fn is_minimal_generator_parts(&self, table: &RankTable, len: u32, lex: u64) -> bool {
        if self.contains_rank(table.rank(len, lex)) {
            return false;
        }
        for i in 1..len {
            let pre = table.prefix_rank(len, lex, i);
            let suf = table.suffix_rank(len, lex, len - i);
            if !self.contains_rank(pre) && !self.contains_rank(suf) {
                return false;
            }
        }
        true
    }

    /// Whether `w` is in the complement and indecomposable there: every split
    /// has its prefix or its suffix among the gaps.
    pub fn is_minimal_generator(&self, w: &Word) -> Result<bool> {
        let alphabet = Alphabet::new(self.rank)?;
        if !alphabet.contains(w) {
            return Err(Error::invalid(format!(
                "word {w} does not fit alphabet of rank {}",
                self.rank
            )));
        }
        let table = RankTable::new(self.rank, self.max_gap_len().max(w.len() as u32))?;
        let rank = words::shortlex_rank(w, self.rank);
        let (len, lex) = table.split(rank);
        Ok(self.is_minimal_generator_parts(&table, len, lex))
    }

    /// Ranks of all minimal generators of the complement, sorted.
    ///
    /// Candidates are the words `x g y` with `x, y` ranging over the gaps and
    /// the empty word, and `g` over `letters`; distinct factorizations of the
    /// same candidate are deduplicated. `above` keeps only candidates
    /// strictly greater than the given rank.
    pub(crate) fn generator_candidates(
        &self,
        table: &RankTable,
        letters: &[u8],
        above: Option<u64>,
    ) -> Vec<u64> {
        let r = self.rank as u64;
        let parts: Vec<(u32, u64)> = self.ranks.iter().map(|&k| table.split(k)).collect();
        let sides: Vec<(u32, u64)> = std::iter::once((0u32, 0u64))
            .chain(parts.iter().copied())
            .collect();
        let mut out = Vec::new();
        for &(lx, lexx) in &sides {
            for &(ly, lexy) in &sides {
                let len = lx + 1 + ly;
                debug_assert!(len <= table.max_len());
                let stem = lexx * r; // x followed by a letter slot
                for &g in letters {
                    let lex = (stem + (g as u64 - 1)) * table.pow(ly) + lexy;
                    let rank = table.rank(len, lex);
                    if let Some(bound) = above {
                        if rank <= bound {
                            continue;
                        }
                    }
                    if self.is_minimal_generator_parts(table, len, lex) {
                        out.push(rank);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The minimal generating set of the complement, shortlex-sorted.
    pub fn minimal_generators(&self) -> Result<Vec<Word>> {
        let table = self.candidate_table()?;
        let letters: Vec<u8> = (1..=self.rank).collect();
        Ok(self
            .generator_candidates(&table, &letters, None)
            .into_iter()
            .map(|k| table.word(k))
            .collect())
    }

    /// Candidates for the two-sided ideal tree: words one letter longer than
    /// an existing gap whose maximal proper prefix and suffix are both gaps,
    /// plus bare letters (vacuously extendable).
    pub(crate) fn ideal_candidates(
        &self,
        table: &RankTable,
        letters: &[u8],
        above: Option<u64>,
    ) -> Vec<u64> {
        let r = self.rank as u64;
        let mut out = Vec::new();
        for &g in letters {
            let rank = g as u64; // rank of a bare letter is the letter itself
            if above.is_none_or(|bound| rank > bound) {
                out.push(rank);
            }
        }
        for &k in &self.ranks {
            let (len, lex) = table.split(k);
            let clen = len + 1;
            debug_assert!(clen <= table.max_len());
            for &g in letters {
                let clex = lex * r + (g as u64 - 1);
                let rank = table.rank(clen, clex);
                if let Some(bound) = above {
                    if rank <= bound {
                        continue;
                    }
                }
                // The maximal proper prefix is the gap `x` itself; check the
                // maximal proper suffix.
                if self.contains_rank(table.suffix_rank(clen, clex, clen - 1)) {
                    out.push(rank);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Inserts one more gap, preserving order. The caller guarantees the
    /// result is a valid gap set.
    pub(crate) fn with_rank_added(&self, k: u64) -> Self {
        let mut ranks = Vec::with_capacity(self.ranks.len() + 1);
        match self.ranks.binary_search(&k) {
            Ok(_) => panic!("rank {k} already a gap"),
            Err(pos) => {
                ranks.extend_from_slice(&self.ranks[..pos]);
                ranks.push(k);
                ranks.extend_from_slice(&self.ranks[pos..]);
            }
        }
        GapSet {
            rank: self.rank,
            ranks,
        }
    }

    /// The same gaps viewed over a different alphabet rank. Validity is
    /// unaffected (closure only inspects subwords of gaps), but every stored
    /// rank changes with the alphabet.
    pub fn with_alphabet_rank(&self, rank: u8) -> Result<Self> {
        Alphabet::new(rank)?;
        let words = self.words();
        if let Some(w) = words.iter().find(|w| w.letters().iter().any(|&l| l > rank)) {
            return Err(Error::invalid(format!(
                "gap {w} does not fit alphabet of rank {rank}"
            )));
        }
        let mut ranks: Vec<u64> = words
            .iter()
            .map(|w| words::shortlex_rank(w, rank))
            .collect();
        ranks.sort_unstable();
        Ok(GapSet { rank, ranks })
    }

    /// Adds the Frobenius back to the subsemigroup, dropping the largest gap;
    /// the index decreases by one.
    pub fn add_frobenius(&self) -> Result<Self> {
        if self.ranks.is_empty() {
            return Err(Error::invalid(
                "cannot add the Frobenius of the empty gap set".to_string(),
            ));
        }
        Ok(GapSet {
            rank: self.rank,
            ranks: self.ranks[..self.ranks.len() - 1].to_vec(),
        })
    }

    /// Removes a minimal generator from the subsemigroup, growing the gap set
    /// by one; errors when `h` is not a minimal generator (the result would
    /// not be a subsemigroup).
    pub fn remove_generator(&self, h: &Word) -> Result<Self> {
        if !self.is_minimal_generator(h)? {
            return Err(Error::invalid(format!(
                "{h} is not a minimal generator of this subsemigroup"
            )));
        }
        let child = self.with_rank_added(words::shortlex_rank(h, self.rank));
        debug_assert!(child.is_valid());
        Ok(child)
    }

    /// Children in the subsemigroup tree: remove a minimal generator larger
    /// than the Frobenius (all of them when the gap set is empty).
    pub fn descendants(&self) -> Result<Vec<GapSet>> {
        let table = self.candidate_table()?;
        let letters: Vec<u8> = (1..=self.rank).collect();
        Ok(self
            .generator_candidates(&table, &letters, self.frobenius_rank())
            .into_iter()
            .map(|k| self.with_rank_added(k))
            .collect())
    }

    /// Closure check on the stored ranks.
    pub fn is_valid(&self) -> bool {
        let table = match RankTable::new(self.rank, self.max_gap_len().max(1)) {
            Ok(t) => t,
            Err(_) => return false,
        };
        self.ranks.iter().all(|&k| {
            let (len, lex) = table.split(k);
            (1..len).all(|i| {
                self.contains_rank(table.prefix_rank(len, lex, i))
                    || self.contains_rank(table.suffix_rank(len, lex, len - i))
            })
        })
    }

    /// Sorted distinct letters occurring in the gaps.
    pub fn support(&self) -> Vec<u8> {
        let mut seen = [false; words::MAX_RANK as usize + 1];
        for w in self.words() {
            for &l in w.letters() {
                seen[l as usize] = true;
            }
        }
        (1..=self.rank).filter(|&l| seen[l as usize]).collect()
    }

    /// Text form `r=2; gaps=a,b,aa` used by checkpoints and JSON output.
    pub fn to_text(&self) -> String {
        let gaps: Vec<String> = self.words().iter().map(|w| w.to_string()).collect();
        format!("r={}; gaps={}", self.rank, gaps.join(","))
    }

    /// Parses the text form produced by [`GapSet::to_text`].
    pub fn parse(s: &str) -> Result<Self> {
        let mut rank: Option<u8> = None;
        let mut gaps: Option<&str> = None;
        for field in s.split(';') {
            let field = field.trim();
            if let Some(v) = field.strip_prefix("r=") {
                rank = Some(
                    v.parse::<u8>()
                        .map_err(|_| Error::invalid(format!("bad rank in gap set: {v:?}")))?,
                );
            } else if let Some(v) = field.strip_prefix("gaps=") {
                gaps = Some(v);
            } else if !field.is_empty() {
                return Err(Error::invalid(format!("unknown gap set field: {field:?}")));
            }
        }
        let rank = rank.ok_or_else(|| Error::invalid("gap set text missing r=".to_string()))?;
        let gaps = gaps.ok_or_else(|| Error::invalid("gap set text missing gaps=".to_string()))?;
        let alphabet = Alphabet::new(rank)?;
        let mut words = Vec::new();
        for part in gaps.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            words.push(alphabet.parse_word(part)?);
        }
        GapSet::new(rank, &words)
    }
}

/// Whether the complement of `gaps` in the rank-`rank` free semigroup is a
/// subsemigroup: every gap, at every split point, has its prefix or its
/// suffix among the gaps.
pub fn validate_gap_set(rank: u8, gaps: &[Word]) -> Result<bool> {
    let alphabet = Alphabet::new(rank)?;
    let mut max_len: u32 = 1;
    for w in gaps {
        if !alphabet.contains(w) {
            return Err(Error::invalid(format!(
                "gap {w} does not fit alphabet of rank {rank}"
            )));
        }
        max_len = max_len.max(w.len() as u32);
    }
    let table = RankTable::new(rank, max_len)?;
    let mut ranks: Vec<u64> = gaps.iter().map(|w| words::shortlex_rank(w, rank)).collect();
    ranks.sort_unstable();
    ranks.dedup();
    let probe = GapSet { rank, ranks };
    for &k in &probe.ranks {
        let (len, lex) = table.split(k);
        for i in 1..len {
            if !probe.contains_rank(table.prefix_rank(len, lex, i))
                && !probe.contains_rank(table.suffix_rank(len, lex, len - i))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
