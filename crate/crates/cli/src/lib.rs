//! Command-line front end. [`run`] takes the argument list and output sinks
//! so it can be driven from tests as well as from `main`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use derangetree_core::{
    case_counts, derangements, forward, increasing_trees, inverse, marked_trees, perm_to_tree, rank_count_table,
    recurrence_check, render_dot, tree_to_perm, verify_bijection, CycleDecomposition, Error, IncreasingTree,
    MarkedTree, PermWord, DEFAULT_VERIFY_LIMIT, MAX_VERIFY_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Largest size accepted by the `stats` tables, which scan all `(n-1)!` trees.
pub const MAX_STATS_SIZE: usize = 11;

#[derive(Debug, Parser)]
#[command(
    name = "derangetree",
    version,
    about = "Derangements and increasing trees with a marked rank-1 vertex"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a derangement (cycle notation) to its marked tree.
    Map {
        /// Size n; the derangement must act on exactly {0, …, n-1}.
        #[arg(long)]
        size: Option<usize>,
        /// Derangement in cycle notation, e.g. "(0 5 3)(1 4 2)".
        cycles: String,
    },
    /// Map a marked tree back to its derangement.
    Unmap {
        /// Marked tree, e.g. "size=6;parents=0,1,0,1,0;mark=0".
        tree: String,
    },
    /// Depth search walk of a tree, root omitted.
    #[command(name = "tree2perm")]
    TreeToPerm { tree: String },
    /// The tree whose walk reads the given word.
    #[command(name = "perm2tree")]
    PermToTree {
        /// Permutation of 1..n-1, e.g. "4 7 5 2 6 1 3" or "4752613".
        word: String,
    },
    /// List every object of one kind and size, one per line.
    Enumerate {
        kind: Kind,
        #[arg(long)]
        size: usize,
    },
    /// Check the bijection exhaustively for every size from 2 up to --max-size.
    Verify {
        #[arg(long, default_value_t = DEFAULT_VERIFY_LIMIT)]
        max_size: usize,
        /// Allow sizes up to 9.
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: bool,
    },
    /// Counting tables.
    Stats {
        #[command(subcommand)]
        table: StatsTable,
    },
    /// Draw a tree or marked tree.
    Render {
        tree: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Trees,
    Derangements,
    Marked,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum StatsTable {
    /// Rank-k vertices summed over all trees of each size.
    RankCounts {
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        output: OutputFormat,
    },
    /// How many derangements fall in each construction case.
    Cases {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        output: OutputFormat,
    },
    /// Rank-1 counts against two candidate recurrences.
    Recurrence {
        #[arg(long)]
        max_size: usize,
        #[command(flatten)]
        output: OutputFormat,
    },
}

#[derive(Debug, Args)]
pub struct OutputFormat {
    #[arg(long)]
    json: bool,
}

/// Parses cycle notation, optionally requiring the ground set `{0, …, n-1}`
/// and the absence of fixed points.
pub fn parse_cycles(text: &str, size: Option<usize>, require_derangement: bool) -> Result<CycleDecomposition, Error> {
    let p: CycleDecomposition = text.parse()?;
    p.expect_standard(size.unwrap_or_else(|| p.size()))?;
    if require_derangement {
        p.expect_derangement()?;
    }
    Ok(p)
}

/// A plain tree, or a marked one when a `mark=` field is present.
fn parse_any_tree(text: &str) -> Result<(IncreasingTree, Option<usize>), Error> {
    if text.split(';').any(|f| f.trim_start().starts_with("mark=")) {
        let mt: MarkedTree = text.parse()?;
        let mark = mt.mark();
        Ok((mt.into_tree(), Some(mark)))
    } else {
        Ok((text.parse()?, None))
    }
}

fn check_stats_size(n: usize) -> Result<(), Error> {
    if n > MAX_STATS_SIZE {
        return Err(Error::LimitExceeded {
            n,
            limit: MAX_STATS_SIZE,
        });
    }
    Ok(())
}

/// Runs one invocation and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Input(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Map { size, cycles } => {
            let p = parse_cycles(&cycles, size, true)?;
            writeln!(out, "{}", forward(&p)?)?;
        }
        Command::Unmap { tree } => {
            let mt: MarkedTree = tree.parse()?;
            if !mt.tree().is_standard() {
                return Err(Error::Contract("marked tree labels must be 0..n".into()).into());
            }
            writeln!(out, "{}", inverse(&mt)?)?;
        }
        Command::TreeToPerm { tree } => {
            let (t, _) = parse_any_tree(&tree)?;
            writeln!(out, "{}", tree_to_perm(&t)?)?;
        }
        Command::PermToTree { word } => {
            let w: PermWord = word.parse()?;
            writeln!(out, "{}", perm_to_tree(&w))?;
        }
        Command::Enumerate { kind, size } => match kind {
            Kind::Trees => {
                for t in increasing_trees(size)? {
                    writeln!(out, "{t}")?;
                }
            }
            Kind::Derangements => {
                for p in derangements(size) {
                    writeln!(out, "{p}")?;
                }
            }
            Kind::Marked => {
                for mt in marked_trees(size)? {
                    writeln!(out, "{mt}")?;
                }
            }
        },
        Command::Verify {
            max_size,
            extended,
            json: as_json,
        } => {
            let limit = if extended {
                MAX_VERIFY_LIMIT
            } else {
                DEFAULT_VERIFY_LIMIT
            };
            if max_size > limit {
                return Err(Error::LimitExceeded { n: max_size, limit }.into());
            }
            let mut all_passed = true;
            for n in 2..=max_size {
                let report = verify_bijection(n, limit)?;
                all_passed &= report.passed;
                if as_json {
                    writeln!(out, "{}", report.to_json())?;
                } else {
                    writeln!(out, "{report}")?;
                }
            }
            if !all_passed {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Stats { table } => stats(table, out)?,
        Command::Render {
            tree,
            format: Format::Dot,
        } => {
            let (t, mark) = parse_any_tree(&tree)?;
            write!(out, "{}", render_dot(&t, mark))?;
        }
    }
    Ok(EXIT_OK)
}

fn stats(table: StatsTable, out: &mut dyn Write) -> Result<(), Failure> {
    match table {
        StatsTable::RankCounts { max_size, k, output } => {
            check_stats_size(max_size)?;
            let rows = rank_count_table(max_size, k)?;
            if output.json {
                writeln!(out, "{}", json(&rows))?;
            } else {
                writeln!(out, "n\tk\tcount")?;
                for r in rows {
                    writeln!(out, "{}\t{}\t{}", r.n, r.k, r.count)?;
                }
            }
        }
        StatsTable::Cases { size, output } => {
            check_stats_size(size)?;
            let counts = case_counts(size)?;
            if output.json {
                writeln!(out, "{}", json(&counts))?;
            } else {
                writeln!(out, "case\tcount")?;
                for (case, k) in &counts.histogram {
                    writeln!(out, "{case}\t{k}")?;
                }
                writeln!(out, "total\t{}", counts.total)?;
                writeln!(out, "top_under_mark\t{}", counts.top_under_mark)?;
            }
        }
        StatsTable::Recurrence { max_size, output } => {
            check_stats_size(max_size)?;
            let rows = recurrence_check(max_size)?;
            if output.json {
                writeln!(out, "{}", json(&rows))?;
            } else {
                writeln!(out, "n\tA_n\tA_n-(n-1)(A_n-1+A_n-2)\tA_n-n*A_n-1-n*A_n-2")?;
                let show = |r: Option<i64>| r.map_or_else(|| "-".to_string(), |v| v.to_string());
                for r in rows {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}",
                        r.n,
                        r.a_n,
                        show(r.classical_residual),
                        show(r.alternate_residual)
                    )?;
                }
            }
        }
    }
    Ok(())
}
