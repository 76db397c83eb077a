//! One- and two-sided ideals of free semigroups.
//!
//! A gap set describes a right ideal exactly when it is closed under taking
//! the maximal proper prefix, a left ideal when closed under the maximal
//! proper suffix, and a two-sided ideal when both hold. Left ideals are
//! counted through the word-reversal anti-isomorphism and never enumerated
//! separately.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;

use crate::gapset::GapSet;
use crate::poly::{stirling_first, GrowthPolynomial};
use crate::tree::{self, TreeKind};
use crate::words::RankTable;
use crate::{Error, Result};

fn checked(g: &GapSet) -> Result<()> {
    if !g.is_valid() {
        return Err(Error::invalid(
            "gap set complement is not a subsemigroup".to_string(),
        ));
    }
    Ok(())
}

fn closed_under(g: &GapSet, take_prefix: bool, take_suffix: bool) -> Result<bool> {
    checked(g)?;
    let table = RankTable::new(g.alphabet_rank(), g.max_gap_len().max(1))?;
    Ok(g.gap_ranks().iter().all(|&k| {
        let (len, lex) = table.split(k);
        if len < 2 {
            return true;
        }
        (!take_prefix || g.contains_rank(table.prefix_rank(len, lex, len - 1)))
            && (!take_suffix || g.contains_rank(table.suffix_rank(len, lex, len - 1)))
    }))
}

/// Whether the complement is a right ideal: every gap of length at least 2
/// has its maximal proper prefix among the gaps.
pub fn is_right_ideal(g: &GapSet) -> Result<bool> {
    closed_under(g, true, false)
}

/// Whether the complement is a left ideal.
pub fn is_left_ideal(g: &GapSet) -> Result<bool> {
    closed_under(g, false, true)
}

/// Whether the complement is a two-sided ideal.
pub fn is_two_sided_ideal(g: &GapSet) -> Result<bool> {
    closed_under(g, true, true)
}

/// Children of an ideal node in the two-sided ideal tree: add a word `h`
/// larger than the Frobenius whose maximal proper prefix and suffix are both
/// gaps (single letters qualify vacuously).
pub fn ideal_descendants(g: &GapSet) -> Result<Vec<GapSet>> {
    if !is_two_sided_ideal(g)? {
        return Err(Error::invalid(
            "gap set is not a two-sided ideal".to_string(),
        ));
    }
    TreeKind::Ideal.children(g)
}

/// Number of index-`n` right ideals: the Fuss-Catalan number
/// `C(r(n+1), n+1) / ((r-1)(n+1) + 1)`, which also counts rooted `r`-ary
/// trees with `n+1` vertices.
pub fn fuss_catalan_right_ideals(n: u64, r: u64) -> BigUint {
    let p = n + 1;
    let top = binomial(BigUint::from(r * p), BigUint::from(p));
    let div = BigUint::from((r - 1) * p + 1);
    debug_assert!((&top % &div) == BigUint::from(0u32));
    top / div
}

/// The fixed-index polynomial for right-ideal counts: coefficient of `r^k`
/// is `s(n, k) (n+1)^k / (n+1)!`.
pub fn right_ideal_polynomial(n: usize) -> Result<GrowthPolynomial> {
    if n == 0 {
        return Err(Error::invalid("index must be at least 1".to_string()));
    }
    let mut fact = BigInt::from(1);
    for k in 2..=n as u64 + 1 {
        fact *= BigInt::from(k);
    }
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        let num = stirling_first(n, k) * BigInt::from(n as u64 + 1).pow(k as u32);
        coeffs.push(BigRational::new(num, fact.clone()));
    }
    GrowthPolynomial::from_coefficients(coeffs)
}

/// Level counts `a_1^I .. a_{n_max}^I` of the two-sided ideal tree.
pub fn count_two_sided_ideals(rank: u8, n_max: usize) -> Result<Vec<u64>> {
    tree::count_levels(TreeKind::Ideal, rank, n_max)
}

/// One comparison row: index, rank-2 two-sided ideal count, central binomial
/// coefficient, and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub n: u64,
    pub ideals: u64,
    pub central_binomial: u64,
    pub difference: u64,
}

/// Tabulates the rank-2 two-sided ideal counts against the central binomial
/// coefficients for `n = 1..=n_max`. The comparison column at row `n` is
/// `C(n+1, floor((n+1)/2))`, the step that agrees with the first six ideal
/// counts exactly.
pub fn central_binomial_comparison(n_max: usize) -> Result<Vec<ComparisonRow>> {
    let counts = count_two_sided_ideals(2, n_max)?;
    let mut rows = Vec::with_capacity(n_max);
    for (i, &ideals) in counts.iter().enumerate() {
        let n = i as u64 + 1;
        let central_big = binomial(BigUint::from(n + 1), BigUint::from(n.div_ceil(2)));
        let central = u64::try_from(&central_big)
            .map_err(|_| Error::resource(format!("central binomial at n={n} exceeds u64")))?;
        rows.push(ComparisonRow {
            n,
            ideals,
            central_binomial: central,
            difference: central - ideals,
        });
    }
    Ok(rows)
}
