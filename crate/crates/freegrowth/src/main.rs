//! Batch command-line interface: counting, fitting, and verification.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use freegrowth::checkpoint::Checkpoint;
use freegrowth::pattern::ZTable;
use freegrowth::tree::TreeKind;
use freegrowth::verify::{self, Scope};
use freegrowth::{congruence, ideal, tree, Error};

#[derive(Parser)]
#[command(
    name = "freegrowth",
    version,
    about = "Exact substructure counts for free semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count substructures level by level up to a maximum index.
    Count(CountArgs),
    /// Print the exact fixed-index polynomial or exponential form.
    Fit(FitArgs),
    /// Recompute the embedded reference tables and report differences.
    Verify(VerifyArgs),
    /// Tabulate ascending-generation table counts, optionally streaming the
    /// tables themselves.
    Tables(TablesArgs),
    /// Emit the rank-2 ideal counts against the central binomial column.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Subsemigroup,
    Ideal,
    RightIdeal,
    Congruence,
}

impl CountKind {
    fn name(self) -> &'static str {
        match self {
            CountKind::Subsemigroup => "subsemigroup",
            CountKind::Ideal => "ideal",
            CountKind::RightIdeal => "right-ideal",
            CountKind::Congruence => "congruence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CountArgs {
    /// What to count.
    #[arg(long, value_enum)]
    kind: CountKind,
    /// Free rank of the ambient semigroup.
    #[arg(long)]
    rank: u8,
    /// Count up to this index (subsemigroups and ideals).
    #[arg(long)]
    max_index: Option<usize>,
    /// Count up to this many congruence classes.
    #[arg(long)]
    max_classes: Option<usize>,
    /// Worker threads (default: FREEGROWTH_THREADS or all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Breadth-first checkpoint file to write after every level and resume
    /// from when present.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Allow long-running instances (order-5 congruence tables).
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    kind: CountKind,
    /// The fixed index (or class count) to fit.
    #[arg(long, visible_alias = "classes")]
    index: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Allow long-running instances.
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of appendix-a, appendix-b, appendix-c, appendix-d, table-1, all.
    #[arg(long)]
    scope: String,
    /// Time budget like 30s, 10m, 2h; unlimited when absent.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Include the long-running rows (deep subsemigroup levels, order-5
    /// tables).
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Largest table order to enumerate.
    #[arg(long, default_value_t = 4)]
    max_order: u8,
    /// Emit one line per table instead of the count matrix.
    #[arg(long)]
    stream: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Allow order-5 enumeration.
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Compare up to this index.
    #[arg(long, default_value_t = 25)]
    max_index: usize,
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => with_threads(args.threads, || run_count(&args)),
        Command::Fit(args) => with_threads(args.threads, || run_fit(&args)),
        Command::Verify(args) => with_threads(args.threads, || run_verify(&args)),
        Command::Tables(args) => with_threads(args.threads, || run_tables(&args)),
        Command::Compare(args) => with_threads(args.threads, || run_compare(&args)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::ResourceLimit(_) => 3,
        Error::Internal(_) => 4,
        Error::Io(_) => 3,
    }
}

/// Installs a scoped worker pool when a thread count is requested (flag or
/// FREEGROWTH_THREADS); otherwise uses the default pool.
fn with_threads<T>(
    flag: Option<usize>,
    body: impl FnOnce() -> freegrowth::Result<T> + Send,
) -> freegrowth::Result<T>
where
    T: Send,
{
    let from_env = std::env::var("FREEGROWTH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    match flag.or(from_env) {
        None | Some(0) => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::resource(format!("cannot build worker pool: {e}")))?
            .install(body),
    }
}

fn count_values(args: &CountArgs, n_max: usize) -> freegrowth::Result<Vec<BigUint>> {
    match args.kind {
        CountKind::Subsemigroup | CountKind::Ideal => {
            let kind = match args.kind {
                CountKind::Subsemigroup => TreeKind::Subsemigroup,
                _ => TreeKind::Ideal,
            };
            let counts = match &args.checkpoint {
                Some(path) => counted_with_checkpoint(kind, args.rank, n_max, path)?,
                None => tree::count_levels(kind, args.rank, n_max)?,
            };
            Ok(counts.into_iter().map(BigUint::from).collect())
        }
        CountKind::RightIdeal => {
            freegrowth::Alphabet::new(args.rank)?;
            Ok((1..=n_max as u64)
                .map(|n| ideal::fuss_catalan_right_ideals(n, args.rank as u64))
                .collect())
        }
        CountKind::Congruence => {
            freegrowth::Alphabet::new(args.rank)?;
            let cap = if args.long { 5 } else { 4 };
            if n_max > cap {
                return Err(Error::resource(format!(
                    "congruence counting beyond {cap} classes needs {}",
                    if args.long {
                        "a larger table source"
                    } else {
                        "--long"
                    }
                )));
            }
            (1..=n_max)
                .map(|n| {
                    let t_col = congruence::ascending_counts(n as u8)?;
                    Ok(congruence::count_congruences_from_tables(
                        args.rank as u64,
                        &t_col,
                    ))
                })
                .collect()
        }
    }
}

fn counted_with_checkpoint(
    kind: TreeKind,
    rank: u8,
    n_max: usize,
    path: &std::path::Path,
) -> freegrowth::Result<Vec<u64>> {
    let mut state = if path.exists() {
        let cp = Checkpoint::read(path)?;
        if cp.kind != kind || cp.rank != rank {
            return Err(Error::invalid(format!(
                "checkpoint holds kind={} r={}, flags request kind={} r={}",
                cp.kind.name(),
                cp.rank,
                kind.name(),
                rank
            )));
        }
        cp
    } else {
        Checkpoint::fresh(kind, rank)?
    };
    while state.depth < n_max {
        state.step()?;
        state.write(path)?;
    }
    Ok(state.counts[..n_max].to_vec())
}

fn run_count(args: &CountArgs) -> freegrowth::Result<ExitCode> {
    let n_max = match (args.max_index, args.max_classes) {
        (Some(n), None) => n,
        (None, Some(n)) => n,
        _ => {
            return Err(Error::invalid(
                "exactly one of --max-index and --max-classes is required".to_string(),
            ))
        }
    };
    if args.checkpoint.is_some() && !matches!(args.kind, CountKind::Subsemigroup | CountKind::Ideal)
    {
        return Err(Error::invalid(
            "checkpoints only apply to subsemigroup and ideal counting".to_string(),
        ));
    }
    let started = Instant::now();
    let values = count_values(args, n_max)?;
    match args.format {
        Format::Csv => {
            let mut out = String::from("n,count\n");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{},{v}\n", i + 1));
            }
            print!("{out}");
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    serde_json::json!({
                        "index": i + 1,
                        "count": serde_json::Number::from_str(&v.to_string())
                            .expect("count is a valid number"),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "kind": args.kind.name(),
                "rank": args.rank,
                "values": rows,
                "meta": {
                    "threads": rayon::current_num_threads(),
                    "elapsed_ms": started.elapsed().as_millis() as u64,
                    "version": env!("CARGO_PKG_VERSION"),
                },
            });
            println!("{doc}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_fit(args: &FitArgs) -> freegrowth::Result<ExitCode> {
    let n = args.index;
    if n == 0 {
        return Err(Error::invalid("--index must be at least 1".to_string()));
    }
    let line = match args.kind {
        CountKind::Subsemigroup => {
            let cap = if args.long { 6 } else { 5 };
            if n > cap {
                return Err(Error::resource(format!(
                    "subsemigroup polynomials beyond index {cap} are out of reach here"
                )));
            }
            let z = ZTable::compute(TreeKind::Subsemigroup, n)?;
            format!("a_{n}(FS_r) = {}", z.polynomial(n)?)
        }
        CountKind::Ideal => {
            let cap = if args.long { 9 } else { 6 };
            if n > cap {
                return Err(Error::resource(format!(
                    "ideal polynomials beyond index {cap} are out of reach here"
                )));
            }
            let z = ZTable::compute(TreeKind::Ideal, n)?;
            format!("a_{n}^I(FS_r) = {}", z.polynomial(n)?)
        }
        CountKind::RightIdeal => {
            format!("a_{n}^RI(FS_r) = {}", ideal::right_ideal_polynomial(n)?)
        }
        CountKind::Congruence => {
            let cap = if args.long { 5 } else { 4 };
            if n > cap {
                return Err(Error::resource(format!(
                    "congruence forms beyond {cap} classes need the published tables"
                )));
            }
            let t_col = congruence::ascending_counts(n as u8)?;
            format!("a_{n}^C(FS_r) = {}", congruence::exponential_form(&t_col)?)
        }
    };
    println!("{line}");
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> freegrowth::Result<ExitCode> {
    let scope = Scope::parse(&args.scope)
        .ok_or_else(|| Error::invalid(format!("unknown verify scope {:?}", args.scope)))?;
    let budget = args
        .budget
        .as_deref()
        .map(verify::parse_budget)
        .transpose()?;
    let report = verify::run(scope, budget, args.long)?;
    for line in &report.lines {
        println!("{line}");
    }
    println!(
        "total: {} rows checked, {} mismatches{}",
        report.checked,
        report.mismatches,
        if report.budget_exhausted {
            " (budget exhausted, partial)"
        } else {
            ""
        }
    );
    if report.mismatches > 0 {
        Ok(ExitCode::from(1))
    } else if report.budget_exhausted {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn run_tables(args: &TablesArgs) -> freegrowth::Result<ExitCode> {
    let cap = if args.long { 5 } else { 4 };
    if args.max_order == 0 {
        return Err(Error::invalid("--max-order must be at least 1".to_string()));
    }
    if args.max_order > cap {
        return Err(Error::resource(format!(
            "table enumeration beyond order {cap} needs {}",
            if args.long {
                "published data"
            } else {
                "--long"
            }
        )));
    }
    if args.stream {
        for n in 1..=args.max_order {
            for k in 1..=n {
                for t in congruence::enumerate_t_tables(n, k)? {
                    println!("{}", t.to_line(k));
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    // Count matrix mirroring the reference layout: rows k, columns n.
    let columns: Vec<Vec<u64>> = (1..=args.max_order)
        .map(congruence::ascending_counts)
        .collect::<freegrowth::Result<_>>()?;
    print!("{}", render_table_matrix(args.max_order, &columns));
    Ok(ExitCode::SUCCESS)
}

fn render_table_matrix(max_order: u8, columns: &[Vec<u64>]) -> String {
    let mut out = String::from("k");
    for n in 1..=max_order {
        out.push_str(&format!(",{n}"));
    }
    out.push('\n');
    for k in 1..=max_order as usize {
        out.push_str(&k.to_string());
        for col in columns {
            match col.get(k - 1) {
                Some(v) => out.push_str(&format!(",{v}")),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

fn run_compare(args: &CompareArgs) -> freegrowth::Result<ExitCode> {
    let rows = ideal::central_binomial_comparison(args.max_index)?;
    let mut out = String::from("n,a_I,central_binomial,difference\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n, row.ideals, row.central_binomial, row.difference
        ));
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
