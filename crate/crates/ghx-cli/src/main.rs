//! `ghx`: build bases, operator matrices, ranks and homology tables of
//! graph complexes, and run the self-check suites.

mod args;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ghx_core::engine::{Store, DATA_DIR_ENV, DEFAULT_CAPACITY};
use ghx_core::linalg::{sms_write, DEFAULT_PRIME};
use ghx_core::reference::{bundled, verify_checksums};
use ghx_core::zoo::{suites, CaseOutcome};
use ghx_core::{compute_table, Engine, Operator, TableKind, TableRequest};

use args::{ComplexArgs, Format, LoopRange, OpArg, SliceArgs};

#[derive(Parser, Debug)]
#[command(name = "ghx", version, about = "Graph complex homology engine")]
struct Cli {
    /// Artifact store for bases, matrices and ranks.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Compute ranks over Q where the matrix is small enough.
    #[arg(long, global = true)]
    over_q: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Build slices above the capacity limit.
    #[arg(long, global = true)]
    force: bool,
    /// Print cache statistics to stderr when done.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the basis of a slice, one graph per line.
    Basis {
        #[command(flatten)]
        slice: SliceArgs,
        /// Print only the dimension.
        #[arg(long)]
        count: bool,
    },
    /// Print an operator matrix in SMS format.
    Matrix {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long, value_enum, default_value_t = OpArg::Contract)]
        op: OpArg,
    },
    /// Rank of an operator (or of several stacked operators).
    Rank {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long, value_enum, num_args = 1.., default_values_t = [OpArg::Contract])]
        op: Vec<OpArg>,
    },
    /// Homology of one cell, with its certification status.
    Homology {
        #[command(flatten)]
        slice: SliceArgs,
    },
    /// Homology table over a range of loop orders.
    Table {
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        loops: LoopRange,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a self-check suite; exits nonzero on any failure.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        loops: LoopRange,
        /// Bundled reference table to compare against (see `check reference --list`).
        #[arg(long)]
        figure: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Known-vanishing mask of a table.
    Shade {
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        loops: LoopRange,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    D2,
    Anticommute,
    Isotypic,
    Euler,
    Vanishing,
    Excess,
    Reference,
}

fn engine(cli: &Cli) -> Result<Engine> {
    let store = cli.data_dir.as_ref().map(Store::new);
    Ok(Engine::new(store)
        .with_prime(cli.prime)
        .with_context(|| format!("--prime {}", cli.prime))?
        .with_over_q(cli.over_q)
        .with_capacity(DEFAULT_CAPACITY, cli.force))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns `Ok(false)` when a check ran and found failures.
fn run(cli: &Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().context("--jobs")?;
    }
    let engine = engine(cli)?;
    let ok = match &cli.command {
        Command::Basis { slice, count } => {
            let b = engine.basis(&slice.spec()?)?;
            if *count {
                println!("{}", b.dimension());
            } else {
                print!("{}", b.to_text());
            }
            true
        }
        Command::Matrix { slice, op } => {
            let m = engine.matrix(&Operator::new((*op).into(), slice.spec()?))?;
            print!("{}", sms_write(&m));
            true
        }
        Command::Rank { slice, op } => {
            let spec = slice.spec()?;
            let ops: Vec<Operator> = op.iter().map(|o| Operator::new((*o).into(), spec)).collect();
            let r = engine.rank(&ops)?;
            let exact = if r.is_exact() { "exact" } else { "lower bound" };
            println!("{} ({:?}, {exact})", r.rank, r.field);
            true
        }
        Command::Homology { slice } => {
            let kind = slice.complex.table_kind()?;
            let t = compute_table(&engine, &TableRequest { kind, min_loops: slice.loops, max_loops: slice.loops })?;
            match t.cell(slice.loops, slice.vertices) {
                Some(c) => println!("{} {:?}", c.display(), c.entry.status),
                None => println!("-"),
            }
            true
        }
        Command::Table { complex, loops, format } => {
            let r = loops.range()?;
            let kind = complex.table_kind()?;
            let t = compute_table(&engine, &TableRequest { kind, min_loops: *r.start(), max_loops: *r.end() })?;
            match format {
                Format::Text => print!("{}", t.render_text()),
                Format::Csv => print!("{}", t.render_csv()),
            }
            true
        }
        Command::Check { suite, complex, loops, figure, list } => {
            check(&engine, *suite, complex, loops, figure.as_deref(), *list)?
        }
        Command::Shade { complex, loops } => {
            let kind = complex.table_kind()?;
            for g in loops.range()? {
                let mask: String =
                    (0..=kind.max_column(g)).map(|c| if kind.shaded(g, c) { '*' } else { '.' }).collect();
                println!("{g:>3}  {mask}");
            }
            true
        }
    };
    if cli.stats {
        let s = engine.cache_stats();
        eprintln!("memory hits {}, store hits {}, built {}", s.memory_hits, s.store_hits, s.built);
    }
    Ok(ok)
}

fn check(
    engine: &Engine,
    suite: Suite,
    complex: &ComplexArgs,
    loops: &LoopRange,
    figure: Option<&str>,
    list: bool,
) -> Result<bool> {
    if suite == Suite::Reference && list {
        let tables = bundled()?;
        let mut ids: Vec<&str> = tables.iter().map(|t| t.figure.as_str()).collect();
        ids.dedup();
        for id in ids {
            println!("{id}");
        }
        return Ok(true);
    }
    let range = loops.range()?;
    let mut outcomes: Vec<CaseOutcome> = Vec::new();
    if suite == Suite::Reference {
        verify_checksums()?;
        let selected: Vec<_> = bundled()?
            .into_iter()
            .filter(|t| figure.is_none_or(|f| t.figure == f))
            .filter(|t| complex.selects(t.kind))
            .collect();
        if selected.is_empty() {
            bail!("no bundled reference table matches; see `ghx check reference --list`");
        }
        for t in &selected {
            outcomes.push(suites::reference_suite(engine, t, range.clone())?);
        }
    } else {
        for kind in complex.table_kinds()? {
            outcomes.extend(match (suite, kind) {
                (Suite::D2, k) => suites::square_zero(engine, k, range.clone())?,
                (Suite::Anticommute | Suite::Excess, TableKind::Forested { n_odd, hairs }) => {
                    let name = if suite == Suite::Anticommute { "anticommute" } else { "excess" };
                    let all = suites::forested_suite(engine, n_odd, hairs, range.clone())?;
                    all.into_iter().filter(|c| c.suite == name).collect()
                }
                (Suite::Isotypic, TableKind::ColoredHairy { n_odd, hairs }) => {
                    suites::isotypic_completeness(engine, n_odd, hairs, range.clone())?
                }
                (Suite::Euler, k) => suites::euler(engine, k, range.clone())?,
                (Suite::Vanishing, k) => suites::vanishing(engine, k, range.clone())?,
                (s, k) => bail!("suite {s:?} does not apply to {k:?}"),
            });
        }
    }
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    for c in &outcomes {
        println!("{} {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.case, c.detail);
    }
    println!("{} cases, {failed} failed", outcomes.len());
    Ok(failed == 0)
}
