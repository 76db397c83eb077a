//! Recomputes the embedded reference tables and reports differences.
//!
//! Each scope recomputes what a time budget allows, cheapest checks first,
//! and diffs cell by cell against the embedded data. Budget exhaustion yields
//! a partial report flagged as such; it is distinct from a mismatch.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::congruence;
use crate::golden;
use crate::ideal;
use crate::oracle;
use crate::pattern::ZTable;
use crate::tree::{self, TreeKind};
use crate::Result;

/// What to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    AppendixA,
    AppendixB,
    AppendixC,
    AppendixD,
    Table1,
    All,
}

impl Scope {
    pub fn parse(s: &str) -> Option<Scope> {
        match s {
            "appendix-a" => Some(Scope::AppendixA),
            "appendix-b" => Some(Scope::AppendixB),
            "appendix-c" => Some(Scope::AppendixC),
            "appendix-d" => Some(Scope::AppendixD),
            "table-1" => Some(Scope::Table1),
            "all" => Some(Scope::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scope::AppendixA => "appendix-a",
            Scope::AppendixB => "appendix-b",
            Scope::AppendixC => "appendix-c",
            Scope::AppendixD => "appendix-d",
            Scope::Table1 => "table-1",
            Scope::All => "all",
        }
    }
}

/// Outcome of one verification run.
#[derive(Debug)]
pub struct Report {
    pub lines: Vec<String>,
    pub checked: usize,
    pub mismatches: usize,
    pub budget_exhausted: bool,
}

struct Runner {
    deadline: Option<Instant>,
    long: bool,
    lines: Vec<String>,
    checked: usize,
    mismatches: usize,
    exhausted: bool,
}

impl Runner {
    fn new(budget: Option<Duration>, long: bool) -> Self {
        Runner {
            deadline: budget.map(|b| Instant::now() + b),
            long,
            lines: Vec::new(),
            checked: 0,
            mismatches: 0,
            exhausted: false,
        }
    }

    /// True when work may continue; flips the exhausted flag otherwise.
    fn budget_ok(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.exhausted = true;
                return false;
            }
        }
        true
    }

    fn row(&mut self, scope: &str, what: &str, expected: &str, got: &str) {
        self.checked += 1;
        if expected != got {
            self.mismatches += 1;
            self.lines.push(format!(
                "{scope} {what}: expected {expected}, computed {got} MISMATCH"
            ));
        }
    }

    fn summary(&mut self, scope: &str, start_checked: usize, start_mismatches: usize) {
        let checked = self.checked - start_checked;
        let mismatches = self.mismatches - start_mismatches;
        let tail = if self.exhausted {
            " (budget exhausted, partial)"
        } else {
            ""
        };
        self.lines.push(format!(
            "{scope}: {checked} rows checked, {mismatches} mismatches{tail}"
        ));
    }
}

fn verify_appendix_a(r: &mut Runner) -> Result<()> {
    let (c0, m0) = (r.checked, r.mismatches);
    // Fixed-index polynomials reconstructed from patterns, then evaluated
    // against every table cell of those rows.
    if r.budget_ok() {
        let z = ZTable::compute(TreeKind::Subsemigroup, 4)?;
        for n in 1..=4u64 {
            let computed = z.polynomial(n as usize)?;
            let reference = golden::subsemigroup_polynomial(n).expect("reference polynomial");
            r.row(
                "appendix-a",
                &format!("polynomial n={n}"),
                &reference.to_string(),
                &computed.to_string(),
            );
            for rank in 1..=12u64 {
                let cell = golden::subsemigroup_count(rank, n).expect("reference cell");
                r.row(
                    "appendix-a",
                    &format!("poly-eval n={n} r={rank}"),
                    &cell.to_string(),
                    &computed.evaluate(rank)?.to_string(),
                );
            }
        }
    }
    // Direct tree counts.
    for rank in 1..=3u8 {
        if !r.budget_ok() {
            break;
        }
        let n_max = if rank == 2 && r.long { 9 } else { 6 };
        let counts = tree::count_levels(TreeKind::Subsemigroup, rank, n_max)?;
        for (i, &count) in counts.iter().enumerate() {
            let n = i as u64 + 1;
            let cell = golden::subsemigroup_count(rank as u64, n).expect("reference cell");
            r.row(
                "appendix-a",
                &format!("count r={rank} n={n}"),
                &cell.to_string(),
                &count.to_string(),
            );
        }
    }
    r.summary("appendix-a", c0, m0);
    Ok(())
}

fn verify_appendix_b(r: &mut Runner) -> Result<()> {
    let (c0, m0) = (r.checked, r.mismatches);
    if r.budget_ok() {
        let z = ZTable::compute(TreeKind::Ideal, 4)?;
        for n in 1..=4u64 {
            let computed = z.polynomial(n as usize)?;
            let reference = golden::ideal_polynomial(n).expect("reference polynomial");
            r.row(
                "appendix-b",
                &format!("polynomial n={n}"),
                &reference.to_string(),
                &computed.to_string(),
            );
        }
    }
    for rank in 1..=10u8 {
        if !r.budget_ok() {
            break;
        }
        let n_max = if rank == 2 { 12 } else { 8 };
        let counts = ideal::count_two_sided_ideals(rank, n_max)?;
        for (i, &count) in counts.iter().enumerate() {
            let n = i as u64 + 1;
            let cell = golden::ideal_count(rank as u64, n).expect("reference cell");
            r.row(
                "appendix-b",
                &format!("count r={rank} n={n}"),
                &cell.to_string(),
                &count.to_string(),
            );
        }
    }
    r.summary("appendix-b", c0, m0);
    Ok(())
}

fn verify_appendix_c(r: &mut Runner) -> Result<()> {
    let (c0, m0) = (r.checked, r.mismatches);
    let computed_max = if r.long { 5 } else { 4 };
    for n in 1..=7u64 {
        if !r.budget_ok() {
            break;
        }
        // Recompute the table column where affordable; fall back to the
        // published column so the two closed-form routes are still tied to
        // the congruence table.
        let t_col: Vec<u64> = if n <= computed_max {
            congruence::ascending_counts(n as u8)?
        } else {
            (1..=n)
                .map(|k| golden::table_count(n, k).expect("reference table value"))
                .collect()
        };
        let form = congruence::exponential_form(&t_col)?;
        for rank in 1..=10u64 {
            let cell = golden::congruence_count(rank, n).expect("reference cell");
            let via_sum = congruence::count_congruences_from_tables(rank, &t_col);
            r.row(
                "appendix-c",
                &format!("stirling-sum n={n} r={rank}"),
                &cell.to_string(),
                &via_sum.to_string(),
            );
            let via_form = form.evaluate(rank)?;
            r.row(
                "appendix-c",
                &format!("exponential n={n} r={rank}"),
                &cell.to_string(),
                &via_form.to_string(),
            );
        }
        if n <= 7 {
            let reference = golden::congruence_exponential(n).expect("reference form");
            r.row(
                "appendix-c",
                &format!("exponential-form n={n}"),
                &reference.to_string(),
                &form.to_string(),
            );
        }
    }
    r.summary("appendix-c", c0, m0);
    Ok(())
}

fn verify_appendix_d(r: &mut Runner) -> Result<()> {
    let (c0, m0) = (r.checked, r.mismatches);
    if r.budget_ok() {
        let rows = ideal::central_binomial_comparison(25)?;
        for (row, &(n, ideals, central, diff)) in rows.iter().zip(golden::comparison_rows()) {
            r.row(
                "appendix-d",
                &format!("row n={n}"),
                &format!("({ideals}, {central}, {diff})"),
                &format!(
                    "({}, {}, {})",
                    row.ideals, row.central_binomial, row.difference
                ),
            );
        }
    }
    r.summary("appendix-d", c0, m0);
    Ok(())
}

fn verify_table_1(r: &mut Runner) -> Result<()> {
    let (c0, m0) = (r.checked, r.mismatches);
    // Full-scan oracle for the tiny orders.
    for n in 1..=3u64 {
        if !r.budget_ok() {
            break;
        }
        let counts = oracle::brute_force_tables(n as usize)?;
        for (i, &count) in counts.iter().enumerate() {
            let k = i as u64 + 1;
            let cell = golden::table_count(n, k).expect("reference cell");
            r.row(
                "table-1",
                &format!("oracle n={n} k={k}"),
                &cell.to_string(),
                &count.to_string(),
            );
        }
    }
    let n_max = if r.long { 5 } else { 4 };
    for n in 1..=n_max {
        if !r.budget_ok() {
            break;
        }
        let counts = congruence::ascending_counts(n as u8)?;
        for (i, &count) in counts.iter().enumerate() {
            let k = i as u64 + 1;
            let cell = golden::table_count(n, k).expect("reference cell");
            r.row(
                "table-1",
                &format!("backtracking n={n} k={k}"),
                &cell.to_string(),
                &count.to_string(),
            );
        }
    }
    r.summary("table-1", c0, m0);
    Ok(())
}

/// Runs the requested scope(s) within the budget. Never fails on a mismatch
/// (that is the report's job); errors are real computation failures.
pub fn run(scope: Scope, budget: Option<Duration>, long: bool) -> Result<Report> {
    let mut runner = Runner::new(budget, long);
    // Cheapest scopes first so a tight budget still yields full sections.
    let order: Vec<Scope> = match scope {
        Scope::All => vec![
            Scope::Table1,
            Scope::AppendixC,
            Scope::AppendixB,
            Scope::AppendixD,
            Scope::AppendixA,
        ],
        s => vec![s],
    };
    for s in order {
        match s {
            Scope::AppendixA => verify_appendix_a(&mut runner)?,
            Scope::AppendixB => verify_appendix_b(&mut runner)?,
            Scope::AppendixC => verify_appendix_c(&mut runner)?,
            Scope::AppendixD => verify_appendix_d(&mut runner)?,
            Scope::Table1 => verify_table_1(&mut runner)?,
            Scope::All => unreachable!(),
        }
    }
    Ok(Report {
        lines: runner.lines,
        checked: runner.checked,
        mismatches: runner.mismatches,
        budget_exhausted: runner.exhausted,
    })
}

/// Parses a budget like `90s`, `10m`, `2h`, or bare seconds.
pub fn parse_budget(s: &str) -> Result<Duration> {
    let s = s.trim();
    let (digits, unit) = match s.chars().last() {
        Some(c) if c.is_ascii_alphabetic() => (&s[..s.len() - 1], c),
        _ => (s, 's'),
    };
    let value: u64 = digits
        .parse()
        .map_err(|_| crate::Error::invalid(format!("bad budget {s:?}")))?;
    let secs = match unit {
        's' => value,
        'm' => value * 60,
        'h' => value * 3600,
        _ => return Err(crate::Error::invalid(format!("bad budget unit {unit:?}"))),
    };
    Ok(Duration::from_secs(secs))
}

/// Exact check that bounds sandwich the reference and computed counts; used
/// by the acceptance suite and available to callers.
pub fn bounds_hold_for_reference_cells() -> Result<bool> {
    for rank in 2..=12u64 {
        for n in 1..=9u64 {
            let Some(cell) = golden::subsemigroup_count(rank, n) else {
                continue;
            };
            let cell = BigUint::from(cell);
            if crate::bounds::lower_bound(n, rank) > cell
                || cell > crate::bounds::upper_bound(n, rank)?
            {
                return Ok(false);
            }
        }
    }
    for rank in 2..=10u64 {
        for n in 1..=12u64 {
            let Some(cell) = golden::ideal_count(rank, n) else {
                continue;
            };
            if crate::bounds::ideal_lower_bound(n, rank)? > BigUint::from(cell) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The reversal anti-isomorphism makes left- and right-ideal counts equal;
/// kept here as a tested identity rather than a separate enumeration.
pub fn left_ideal_count(n: u64, rank: u64) -> BigUint {
    ideal::fuss_catalan_right_ideals(n, rank)
}
