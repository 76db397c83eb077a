//! Words over a finite alphabet, ordered by shortlex.
//!
//! Letters are 1-based indices into the alphabet `g_1 < g_2 < ... < g_r` and
//! render as `'a'..'z'`. Every word is non-empty; the empty word exists only
//! as an implicit sentinel in candidate loops, never as a [`Word`] value.
//!
//! The shortlex rank (1-based position of a word in the shortlex enumeration
//! of all words) doubles as a compact key: the whole enumeration machinery
//! works on ranks and converts back to letters only at the edges.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest alphabet with a textual letter form.
pub const MAX_RANK: u8 = 26;

/// A finite ordered alphabet `g_1 < g_2 < ... < g_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    rank: u8,
}

impl Alphabet {
    pub fn new(rank: u8) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::invalid(format!(
                "alphabet rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// The letters `1..=r` in order.
    pub fn letters(&self) -> impl Iterator<Item = u8> {
        1..=self.rank
    }

    /// Builds a word, checking every letter against this alphabet.
    pub fn word(&self, letters: Vec<u8>) -> Result<Word> {
        let w = Word::from_letters(letters)?;
        if !self.contains(&w) {
            return Err(Error::invalid(format!(
                "word {w} uses letters beyond rank {}",
                self.rank
            )));
        }
        Ok(w)
    }

    /// Parses the textual form, e.g. `"aba"`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'a'..='z' => letters.push(ch as u8 - b'a' + 1),
                _ => return Err(Error::invalid(format!("invalid letter {ch:?} in word"))),
            }
        }
        self.word(letters)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| l <= self.rank)
    }

    /// Shortlex comparison, erroring when either word does not fit this
    /// alphabet.
    pub fn shortlex_cmp(&self, u: &Word, v: &Word) -> Result<Ordering> {
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::invalid(
                "shortlex comparison across mismatched alphabets".to_string(),
            ));
        }
        Ok(shortlex_cmp(u, v))
    }
}

/// A non-empty word; letters are 1-based and at most [`MAX_RANK`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("a word must be non-empty".to_string()));
        }
        if letters.iter().any(|&l| l == 0 || l > MAX_RANK) {
            return Err(Error::invalid(format!("letters must be in 1..={MAX_RANK}")));
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// The leading subword of length `i`, `1 <= i <= |w|`.
    pub fn prefix(&self, i: usize) -> Result<Word> {
        if i == 0 || i > self.len() {
            return Err(Error::invalid(format!(
                "prefix length {i} out of range 1..={}",
                self.len()
            )));
        }
        Ok(Word {
            letters: self.letters[..i].to_vec(),
        })
    }

    /// The trailing subword of length `i`, `1 <= i <= |w|`.
    pub fn suffix(&self, i: usize) -> Result<Word> {
        if i == 0 || i > self.len() {
            return Err(Error::invalid(format!(
                "suffix length {i} out of range 1..={}",
                self.len()
            )));
        }
        Ok(Word {
            letters: self.letters[self.len() - i..].to_vec(),
        })
    }

    /// The set of distinct letters occurring in the word, sorted.
    pub fn support(&self) -> Vec<u8> {
        let mut s: Vec<u8> = self.letters.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

/// Pure shortlex order: shorter words first, ties broken letter by letter.
pub fn shortlex_cmp(u: &Word, v: &Word) -> Ordering {
    u.len()
        .cmp(&v.len())
        .then_with(|| u.letters.cmp(&v.letters))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", (b'a' + l - 1) as char)?;
        }
        Ok(())
    }
}

/// A bijection on the letters `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// `images[i]` is the image of letter `i + 1`.
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r + 1];
        for &im in &images {
            if im == 0 || im as usize > r || seen[im as usize] {
                return Err(Error::invalid("not a bijection on 1..=r".to_string()));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(r: u8) -> Self {
        Permutation {
            images: (1..=r).collect(),
        }
    }

    pub fn rank(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn image(&self, letter: u8) -> u8 {
        self.images[letter as usize - 1]
    }
}

/// Letterwise image of a word under a permutation of its alphabet.
pub fn apply_permutation(sigma: &Permutation, w: &Word) -> Word {
    Word {
        letters: w.letters.iter().map(|&l| sigma.image(l)).collect(),
    }
}

/// Number of words strictly shorter than `len` over a rank-`r` alphabet,
/// i.e. `r + r^2 + ... + r^(len-1)`. `None` on 64-bit overflow.
pub fn words_shorter_than(len: u32, r: u8) -> Option<u64> {
    let r = r as u64;
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 1..len {
        pow = pow.checked_mul(r)?;
        total = total.checked_add(pow)?;
    }
    Some(total)
}

/// 1-based position of `w` in the shortlex enumeration of all words over a
/// rank-`r` alphabet.
///
/// All rank arithmetic is 64-bit with overflow detection; enumeration entry
/// points size their domains so that overflow is unreachable, and a panic
/// here indicates a bug in that sizing.
pub fn shortlex_rank(w: &Word, r: u8) -> u64 {
    try_shortlex_rank(w, r).expect("shortlex rank overflows u64")
}

pub fn try_shortlex_rank(w: &Word, r: u8) -> Option<u64> {
    debug_assert!(w.letters.iter().all(|&l| l >= 1 && l <= r));
    let base = words_shorter_than(w.len() as u32, r)?;
    let mut lex: u64 = 0;
    for &l in &w.letters {
        lex = lex.checked_mul(r as u64)?.checked_add(l as u64 - 1)?;
    }
    base.checked_add(lex)?.checked_add(1)
}

/// Inverse of [`shortlex_rank`]: the word at 1-based position `k`.
pub fn word_from_rank(k: u64, r: u8) -> Result<Word> {
    if k == 0 {
        return Err(Error::invalid("shortlex rank is 1-based".to_string()));
    }
    let rr = r as u64;
    let mut len: u32 = 1;
    let mut base: u64 = 0;
    let mut pow: u64 = rr;
    // Find the length block containing rank k.
    while base + pow < k {
        base += pow;
        pow = pow
            .checked_mul(rr)
            .ok_or_else(|| Error::resource("shortlex rank exceeds 64-bit range".to_string()))?;
        len += 1;
    }
    let mut lex = k - base - 1;
    let mut letters = vec![0u8; len as usize];
    for slot in letters.iter_mut().rev() {
        *slot = (lex % rr) as u8 + 1;
        lex /= rr;
    }
    Word::from_letters(letters)
}

/// Precomputed powers and length-block offsets for one alphabet, sized for a
/// maximum word length. Lets the hot loops split and join words purely on
/// `(length, lex-value)` pairs without materializing letters.
#[derive(Debug, Clone)]
pub struct RankTable {
    r: u64,
    /// `pow[e] = r^e` for `e <= max_len`.
    pow: Vec<u64>,
    /// `base[len]` = number of words shorter than `len`, for `len <= max_len + 1`.
    base: Vec<u64>,
}

impl RankTable {
    /// Fails when `r^max_len` or the block offsets do not fit in 64 bits.
    pub fn new(r: u8, max_len: u32) -> Result<Self> {
        let rr = r as u64;
        let mut pow = Vec::with_capacity(max_len as usize + 1);
        let mut base = Vec::with_capacity(max_len as usize + 2);
        pow.push(1u64);
        base.push(0u64);
        base.push(0u64); // no words shorter than length 1
        for len in 1..=max_len as usize {
            let p = pow[len - 1].checked_mul(rr).ok_or_else(|| {
                Error::resource(format!("rank-{r} words of length {max_len} overflow u64"))
            })?;
            pow.push(p);
            let b = base[len].checked_add(p).ok_or_else(|| {
                Error::resource(format!("rank-{r} words of length {max_len} overflow u64"))
            })?;
            base.push(b);
        }
        Ok(RankTable { r: rr, pow, base })
    }

    pub fn alphabet_rank(&self) -> u8 {
        self.r as u8
    }

    pub fn max_len(&self) -> u32 {
        (self.pow.len() - 1) as u32
    }

    #[inline]
    pub fn pow(&self, e: u32) -> u64 {
        self.pow[e as usize]
    }

    /// Shortlex rank of the word with the given length and lex value.
    #[inline]
    pub fn rank(&self, len: u32, lex: u64) -> u64 {
        debug_assert!(lex < self.pow[len as usize]);
        self.base[len as usize] + lex + 1
    }

    /// Inverse of [`RankTable::rank`].
    #[inline]
    pub fn split(&self, rank: u64) -> (u32, u64) {
        debug_assert!(rank >= 1);
        // Ranks in the length-`len` block span base[len]+1 ..= base[len+1];
        // both search outcomes land one slot past the block we want.
        let len = match self.base.binary_search(&rank) {
            Ok(pos) | Err(pos) => pos - 1,
        };
        debug_assert!(self.base[len] < rank && rank <= self.base[len + 1]);
        (len as u32, rank - self.base[len] - 1)
    }

    /// Length of the word with the given rank.
    #[inline]
    pub fn len_of(&self, rank: u64) -> u32 {
        self.split(rank).0
    }

    /// Rank of the length-`i` prefix of a `(len, lex)` word.
    #[inline]
    pub fn prefix_rank(&self, len: u32, lex: u64, i: u32) -> u64 {
        debug_assert!(i >= 1 && i <= len);
        self.rank(i, lex / self.pow[(len - i) as usize])
    }

    /// Rank of the length-`i` suffix of a `(len, lex)` word.
    #[inline]
    pub fn suffix_rank(&self, _len: u32, lex: u64, i: u32) -> u64 {
        self.rank(i, lex % self.pow[i as usize])
    }

    pub fn word(&self, rank: u64) -> Word {
        word_from_rank(rank, self.r as u8).expect("rank table produced invalid rank")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::new(26).unwrap().parse_word(s).unwrap()
    }

    /// Independent oracle: enumerate all words over rank r up to `max_len`
    /// in shortlex order by construction.
    fn enumerate_shortlex(r: u8, max_len: usize) -> Vec<Word> {
        let mut all = Vec::new();
        let mut current: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for stem in &current {
                for l in 1..=r {
                    let mut v = stem.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            for v in &next {
                all.push(Word::from_letters(v.clone()).unwrap());
            }
            current = next;
        }
        all
    }

    #[test]
    fn shortlex_basic_comparisons() {
        assert_eq!(shortlex_cmp(&w("b"), &w("aa")), Ordering::Less);
        assert_eq!(shortlex_cmp(&w("ab"), &w("ba")), Ordering::Less);
        assert_eq!(shortlex_cmp(&w("aba"), &w("aba")), Ordering::Equal);
    }

    #[test]
    fn shortlex_cmp_rejects_mismatched_alphabets() {
        let a2 = Alphabet::new(2).unwrap();
        let c = w("c");
        assert!(a2.shortlex_cmp(&w("a"), &c).is_err());
    }

    #[test]
    fn rank_examples() {
        let r2 = |s: &str| shortlex_rank(&w(s), 2);
        assert_eq!(r2("a"), 1);
        assert_eq!(r2("ba"), 5);
        assert_eq!(r2("aaa"), 7);
        assert_eq!(word_from_rank(1, 2).unwrap(), w("a"));
        assert_eq!(word_from_rank(6, 2).unwrap(), w("bb"));
        assert_eq!(word_from_rank(4, 3).unwrap(), w("aa"));
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for r in 1..=4u8 {
            for (idx, word) in enumerate_shortlex(r, 6).iter().enumerate() {
                assert_eq!(shortlex_rank(word, r), idx as u64 + 1);
                assert_eq!(&word_from_rank(idx as u64 + 1, r).unwrap(), word);
            }
        }
    }

    #[test]
    fn prefix_suffix_examples() {
        assert_eq!(w("aba").prefix(1).unwrap(), w("a"));
        assert_eq!(w("aba").suffix(2).unwrap(), w("ba"));
        assert_eq!(w("aab").prefix(2).unwrap(), w("aa"));
        assert!(w("aba").prefix(0).is_err());
        assert!(w("aba").suffix(4).is_err());
        assert_eq!(w("aba").prefix(3).unwrap(), w("aba"));
    }

    #[test]
    fn support_examples() {
        assert_eq!(w("aba").support(), vec![1, 2]);
        assert_eq!(w("aaa").support(), vec![1]);
        assert_eq!(w("cab").support(), vec![1, 2, 3]);
    }

    #[test]
    fn permutation_examples() {
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(apply_permutation(&swap, &w("aab")), w("bba"));
        let id = Permutation::identity(3);
        assert_eq!(apply_permutation(&id, &w("abc")), w("abc"));
        let cycle = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(apply_permutation(&cycle, &w("abc")), w("bca"));
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn leading_letter_prefix_bound() {
        // g_1 * prefix(w, |w|-1) <= w for every word.
        for r in 1..=3u8 {
            for word in enumerate_shortlex(r, 6) {
                if word.len() < 2 {
                    continue;
                }
                let pre = word.prefix(word.len() - 1).unwrap();
                let mut letters = vec![1u8];
                letters.extend_from_slice(pre.letters());
                let shifted = Word::from_letters(letters).unwrap();
                assert!(shifted <= word, "g1*{pre} > {word}");
            }
        }
    }

    #[test]
    fn rank_table_splits() {
        for r in [1u8, 2, 3, 5] {
            let t = RankTable::new(r, 8).unwrap();
            for word in enumerate_shortlex(r, 8) {
                let rank = shortlex_rank(&word, r);
                let (len, lex) = t.split(rank);
                assert_eq!(len as usize, word.len());
                assert_eq!(t.rank(len, lex), rank);
                for i in 1..=word.len() as u32 {
                    assert_eq!(
                        t.prefix_rank(len, lex, i),
                        shortlex_rank(&word.prefix(i as usize).unwrap(), r)
                    );
                    assert_eq!(
                        t.suffix_rank(len, lex, i),
                        shortlex_rank(&word.suffix(i as usize).unwrap(), r)
                    );
                }
            }
        }
    }

    #[test]
    fn rank_table_overflow_detected() {
        assert!(RankTable::new(26, 40).is_err());
        assert!(RankTable::new(2, 40).is_ok());
    }

    fn arb_word(r: u8) -> impl Strategy<Value = Word> {
        prop::collection::vec(1..=r, 1..=8).prop_map(|v| Word::from_letters(v).unwrap())
    }

    proptest! {
        #[test]
        fn shortlex_total_order(u in arb_word(3), v in arb_word(3), t in arb_word(3)) {
            // Trichotomy.
            let uv = shortlex_cmp(&u, &v);
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            // Antisymmetry.
            prop_assert_eq!(shortlex_cmp(&v, &u), uv.reverse());
            // Transitivity.
            if uv != Ordering::Greater && shortlex_cmp(&v, &t) != Ordering::Greater {
                prop_assert_ne!(shortlex_cmp(&u, &t), Ordering::Greater);
            }
        }

        #[test]
        fn rank_roundtrip(word in arb_word(4)) {
            let rank = shortlex_rank(&word, 4);
            prop_assert_eq!(word_from_rank(rank, 4).unwrap(), word);
        }

        #[test]
        fn permutation_commutes_with_prefix(word in arb_word(3), i in 1usize..=8) {
            let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
            if i <= word.len() {
                let lhs = apply_permutation(&sigma, &word.prefix(i).unwrap());
                let rhs = apply_permutation(&sigma, &word).prefix(i).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(apply_permutation(&sigma, &word).len(), word.len());
            }
        }
    }
}
