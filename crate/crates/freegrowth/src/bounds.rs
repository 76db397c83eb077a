//! Closed-form growth bounds for the substructure counting sequences.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::{Error, Result};

/// Descendant count of the ordinary index-`n` subsemigroup:
/// `(r-1) n^2 + (2r-1) n + r`.
pub fn ordinary_descendant_count(n: u64, r: u64) -> u64 {
    (r - 1) * n * n + (2 * r - 1) * n + r
}

/// Largest `i >= 0` with `p(n-i, r) - 1 >= i` (and `i <= n`), found by direct
/// scan of the defining inequality.
pub fn truncation_index(n: u64, r: u64) -> u64 {
    let mut j = 0;
    for i in 0..=n {
        if ordinary_descendant_count(n - i, r) > i {
            j = i;
        } else {
            break;
        }
    }
    j
}

/// Lower bound for the number of index-`n` subsemigroups:
/// `Σ_{i=0}^{J} C(p(n-i, r) - 1, i)`.
pub fn lower_bound(n: u64, r: u64) -> BigUint {
    let mut total = BigUint::zero();
    for i in 0..=truncation_index(n, r) {
        let top = ordinary_descendant_count(n - i, r) - 1;
        total += binomial(BigUint::from(top), BigUint::from(i));
    }
    total
}

/// Upper bound `(r-1)^n (n+1) (n!)^2` for the number of index-`n`
/// subsemigroups; only stated for `r >= 2`.
pub fn upper_bound(n: u64, r: u64) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::invalid(
            "the subsemigroup upper bound requires rank at least 2".to_string(),
        ));
    }
    let mut fact = BigUint::from(1u32);
    for k in 2..=n {
        fact *= BigUint::from(k);
    }
    Ok(BigUint::from(r - 1).pow(n as u32) * BigUint::from(n + 1) * fact.pow(2))
}

/// Fibonacci numbers with `F_1 = F_2 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::from(1u32));
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Floor of the per-level ideal descendant lower bound
/// `h(n, r) = ((r-1) n + 2r - 1) / r`.
fn ideal_rate_floor(n: u64, r: u64) -> u64 {
    ((r - 1) * n + 2 * r - 1) / r
}

/// Lower bound `Σ_{i=0}^{K} C(floor(h(n-i, r)) - 1, i)` for the number of
/// index-`n` two-sided ideals, `r >= 2`. The truncation `K` comes from
/// scanning the exact inequality `h(n-i, r) - 1 >= i`; flooring `h` inside
/// the binomial only weakens the bound.
pub fn ideal_lower_bound(n: u64, r: u64) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::invalid(
            "the ideal lower bound requires rank at least 2".to_string(),
        ));
    }
    let mut total = BigUint::zero();
    for i in 0..=n {
        // h(n-i, r) - 1 >= i  <=>  (r-1)(n-i) + r - 1 >= r i, exactly
        if (r - 1) * (n - i) + r - 1 < r * i {
            break;
        }
        let top = ideal_rate_floor(n - i, r) - 1;
        if top >= i {
            total += binomial(BigUint::from(top), BigUint::from(i));
        }
    }
    Ok(total)
}
