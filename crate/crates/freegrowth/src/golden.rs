//! Embedded reference tables.
//!
//! The CSV and coefficient files under `data/` carry the published counts,
//! polynomials, and exponential forms that the verification command and the
//! acceptance suite diff against. Everything is parsed once on first use;
//! verification never touches the network.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::poly::{parse_rational_list, ExponentialForm, GrowthPolynomial};
use crate::{Error, Result};

const APPENDIX_A: &str = include_str!("../data/appendix_a.csv");
const APPENDIX_B: &str = include_str!("../data/appendix_b.csv");
const APPENDIX_C: &str = include_str!("../data/appendix_c.csv");
const APPENDIX_D: &str = include_str!("../data/appendix_d.csv");
const TABLE_1: &str = include_str!("../data/table_1.csv");
const POLY_SUBSEMIGROUP: &str = include_str!("../data/poly_subsemigroup.txt");
const POLY_IDEAL: &str = include_str!("../data/poly_ideal.txt");
const EXP_CONGRUENCE: &str = include_str!("../data/exp_congruence.txt");

fn data_lines(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a CSV whose first column is a row label and whose header row names
/// the remaining columns; empty cells are skipped.
fn parse_grid(raw: &str) -> Result<BTreeMap<(u64, u64), u64>> {
    let mut lines = data_lines(raw);
    let header = lines
        .next()
        .ok_or_else(|| Error::internal("empty reference table".to_string()))?;
    let cols: Vec<u64> = header
        .split(',')
        .skip(1)
        .map(|c| {
            c.parse::<u64>()
                .map_err(|_| Error::internal(format!("bad reference column label {c:?}")))
        })
        .collect::<Result<_>>()?;
    let mut grid = BTreeMap::new();
    for line in lines {
        let mut fields = line.split(',');
        let row: u64 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| Error::internal(format!("bad reference row in {line:?}")))?;
        for (col, field) in cols.iter().zip(fields) {
            if field.is_empty() {
                continue;
            }
            let value: u64 = field
                .parse()
                .map_err(|_| Error::internal(format!("bad reference value {field:?}")))?;
            grid.insert((row, *col), value);
        }
    }
    Ok(grid)
}

fn parse_coefficient_lines(raw: &str) -> Result<BTreeMap<u64, Vec<num_rational::BigRational>>> {
    let mut out = BTreeMap::new();
    for line in data_lines(raw) {
        let (n, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::internal(format!("bad coefficient line {line:?}")))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::internal(format!("bad coefficient index {n:?}")))?;
        out.insert(n, parse_rational_list(rest)?);
    }
    Ok(out)
}

fn grid(
    cache: &'static OnceLock<BTreeMap<(u64, u64), u64>>,
    raw: &str,
) -> &'static BTreeMap<(u64, u64), u64> {
    cache.get_or_init(|| parse_grid(raw).expect("embedded reference table parses"))
}

/// Reference `a_n(FS_r)` for `r <= 12`, `n <= 9`.
pub fn subsemigroup_count(r: u64, n: u64) -> Option<u64> {
    static CACHE: OnceLock<BTreeMap<(u64, u64), u64>> = OnceLock::new();
    grid(&CACHE, APPENDIX_A).get(&(r, n)).copied()
}

/// Reference `a_n^I(FS_r)` for `r <= 10`, `n <= 12`.
pub fn ideal_count(r: u64, n: u64) -> Option<u64> {
    static CACHE: OnceLock<BTreeMap<(u64, u64), u64>> = OnceLock::new();
    grid(&CACHE, APPENDIX_B).get(&(r, n)).copied()
}

/// Reference `a_n^C(FS_r)` for `r <= 10`, `n <= 7`.
pub fn congruence_count(r: u64, n: u64) -> Option<u64> {
    static CACHE: OnceLock<BTreeMap<(u64, u64), u64>> = OnceLock::new();
    grid(&CACHE, APPENDIX_C).get(&(r, n)).copied()
}

/// Reference `|T_{n,k}|` for `k <= n <= 7`.
pub fn table_count(n: u64, k: u64) -> Option<u64> {
    static CACHE: OnceLock<BTreeMap<(u64, u64), u64>> = OnceLock::new();
    // Stored with k as the row label.
    grid(&CACHE, TABLE_1).get(&(k, n)).copied()
}

/// Reference comparison rows `(n, a_n^I(FS_2), central binomial, difference)`.
pub fn comparison_rows() -> &'static [(u64, u64, u64, u64)] {
    static CACHE: OnceLock<Vec<(u64, u64, u64, u64)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut rows = Vec::new();
        for line in data_lines(APPENDIX_D).skip(1) {
            let fields: Vec<u64> = line
                .split(',')
                .map(|f| f.parse().expect("embedded comparison value parses"))
                .collect();
            assert_eq!(fields.len(), 4, "comparison row has four fields");
            rows.push((fields[0], fields[1], fields[2], fields[3]));
        }
        rows
    })
}

fn polynomial_cache(
    cache: &'static OnceLock<BTreeMap<u64, GrowthPolynomial>>,
    raw: &str,
) -> &'static BTreeMap<u64, GrowthPolynomial> {
    cache.get_or_init(|| {
        parse_coefficient_lines(raw)
            .expect("embedded polynomial data parses")
            .into_iter()
            .map(|(n, coeffs)| {
                let p = GrowthPolynomial::from_coefficients(coeffs)
                    .expect("embedded polynomial is well-formed");
                (n, p)
            })
            .collect()
    })
}

/// Reference fixed-index subsemigroup polynomial, `n <= 9`.
pub fn subsemigroup_polynomial(n: u64) -> Option<&'static GrowthPolynomial> {
    static CACHE: OnceLock<BTreeMap<u64, GrowthPolynomial>> = OnceLock::new();
    polynomial_cache(&CACHE, POLY_SUBSEMIGROUP).get(&n)
}

/// Reference fixed-index two-sided ideal polynomial, `n <= 12`.
pub fn ideal_polynomial(n: u64) -> Option<&'static GrowthPolynomial> {
    static CACHE: OnceLock<BTreeMap<u64, GrowthPolynomial>> = OnceLock::new();
    polynomial_cache(&CACHE, POLY_IDEAL).get(&n)
}

/// Reference fixed-class-count congruence exponential form, `n <= 7`.
pub fn congruence_exponential(n: u64) -> Option<&'static ExponentialForm> {
    static CACHE: OnceLock<BTreeMap<u64, ExponentialForm>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            parse_coefficient_lines(EXP_CONGRUENCE)
                .expect("embedded exponential data parses")
                .into_iter()
                .map(|(n, betas)| {
                    let e = ExponentialForm::from_betas(betas)
                        .expect("embedded exponential form is well-formed");
                    (n, e)
                })
                .collect()
        })
        .get(&n)
}
