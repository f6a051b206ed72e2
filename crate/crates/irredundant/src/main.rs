//! `irr` — batch CLI for irredundant-digraph diagnostics, constructions,
//! exhaustive searches, and verification sweeps.
//!
//! Exit codes: 0 success / property holds; 1 property fails (bad edges,
//! failed verification); 2 usage or input error; 3 budget exhausted
//! (partial result emitted).

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use irredundant::constructors::{double_tree, oriented_complete_bipartite, random_tree};
use irredundant::digraph::Digraph;
use irredundant::io::{parse, to_edge_list, Format};
use irredundant::irredundance;
use irredundant::reduction::{recurrence_bound, reduce_fully};
use irredundant::report::{
    CheckResult, JsonReport, RecurrenceResultView, ReduceResult, SearchResultView,
    SweepResultView, TheoremResultView,
};
use irredundant::search::{
    max_irredundant, verify_bipartite_simplicity, verify_theorem, SearchConfig,
};

const EXIT_OK: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "irr", version, about = "Irredundant digraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Dot,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Edgelist => Format::EdgeList,
            FormatArg::Dot => Format::Dot,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Graph file to read.
    input: PathBuf,
    /// Input format.
    #[arg(long, value_enum, default_value = "edgelist")]
    format: FormatArg,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Wall-clock budget, e.g. 45s, 30m, 2h.
    #[arg(long, value_parser = parse_duration)]
    budget: Option<Duration>,
    /// Worker threads for the search (1 = serial).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Disable bound pruning (exhaustive node visit; diagnostic only).
    #[arg(long)]
    no_prune: bool,
}

impl BudgetArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            budget: self.budget,
            jobs: self.jobs.max(1),
            pruning: !self.no_prune,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph for bad edges (edges with an alternate path).
    Check(InputArgs),
    /// Contract double edges and triangles until none remain.
    Reduce(InputArgs),
    /// Emit a construction as an edge-list document.
    Construct {
        #[command(subcommand)]
        kind: ConstructCmd,
    },
    /// Exhaustively compute f(n) and the extremal classes (n <= 8).
    Search {
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Double tree: every tree edge doubled (2n-2 edges).
    DoubleTree {
        /// Use the path tree on N vertices.
        #[arg(long, value_name = "N", conflicts_with_all = ["random", "tree"])]
        path: Option<usize>,
        /// Use a seeded random tree on N vertices.
        #[arg(long, value_name = "N", conflicts_with = "tree")]
        random: Option<usize>,
        /// Read tree edges from an edge-list file.
        #[arg(long, value_name = "FILE")]
        tree: Option<PathBuf>,
        /// RNG seed for --random.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Oriented complete bipartite graph: all edges from part A to part B.
    Bipartite { a: usize, b: usize },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare f(n) and the extremal classes against the closed form.
    Theorem {
        #[arg(long = "max-n", default_value_t = 6)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweep all 3^(a*b) complete-bipartite orientations for
    /// irredundant non-simple graphs.
    LemmaSimple {
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        parts: Vec<usize>,
    },
    /// Check the contraction recurrence against the closed form.
    Recurrence {
        #[arg(long, default_value_t = 100)]
        max: usize,
    },
}

fn parse_duration(s: &str) -> Result<Duration, String> {
    let s = s.trim();
    let (value, unit) = match s.find(|c: char| !c.is_ascii_digit()) {
        Some(i) => s.split_at(i),
        None => (s, "s"),
    };
    let value: u64 = value
        .parse()
        .map_err(|_| format!("invalid duration `{s}`"))?;
    let secs = match unit {
        "s" | "" => value,
        "m" => value * 60,
        "h" => value * 3600,
        other => return Err(format!("unknown duration unit `{other}` (use s, m, h)")),
    };
    Ok(Duration::from_secs(secs))
}

fn load(args: &InputArgs) -> Result<Digraph, String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("{}: {e}", args.input.display()))?;
    parse(&text, args.format.into()).map_err(|e| format!("{}: {e}", args.input.display()))
}

fn emit(report: &JsonReport) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("IRR_LOG")).init();
    std::process::exit(run(Cli::parse()));
}

fn run(cli: Cli) -> i32 {
    let started = Instant::now();
    match cli.command {
        Command::Check(input) => {
            let g = match load(&input) {
                Ok(g) => g,
                Err(msg) => return usage_error(&msg),
            };
            let result = irredundance::check(&g);
            let view = CheckResult::of(&result);
            emit(&JsonReport::new(
                "check",
                Some(&g),
                serde_json::to_value(view).unwrap(),
                started.elapsed().as_millis(),
            ));
            if result.is_irredundant {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Command::Reduce(input) => {
            let g = match load(&input) {
                Ok(g) => g,
                Err(msg) => return usage_error(&msg),
            };
            let diagnosis = irredundance::check(&g);
            if !diagnosis.is_irredundant {
                let view = CheckResult::of(&diagnosis);
                emit(&JsonReport::new(
                    "reduce",
                    Some(&g),
                    serde_json::to_value(view).unwrap(),
                    started.elapsed().as_millis(),
                ));
                eprintln!("input graph is not irredundant; contraction is undefined");
                return EXIT_FAIL;
            }
            match reduce_fully(&g) {
                Ok(steps) => {
                    let view = ReduceResult::of(&g, &steps);
                    emit(&JsonReport::new(
                        "reduce",
                        Some(&g),
                        serde_json::to_value(view).unwrap(),
                        started.elapsed().as_millis(),
                    ));
                    EXIT_OK
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Construct { kind } => match build_construction(kind) {
            Ok(g) => {
                print!("{}", to_edge_list(&g));
                EXIT_OK
            }
            Err(msg) => usage_error(&msg),
        },
        Command::Search { n, budget } => match max_irredundant(n, &budget.config()) {
            Ok(report) => {
                let view = SearchResultView::of(&report);
                emit(&JsonReport::new(
                    "search",
                    None,
                    serde_json::to_value(view).unwrap(),
                    started.elapsed().as_millis(),
                ));
                if report.partial {
                    EXIT_BUDGET
                } else {
                    EXIT_OK
                }
            }
            Err(e) => usage_error(&e.to_string()),
        },
        Command::Verify { suite } => run_verify(suite, started),
    }
}

fn build_construction(kind: ConstructCmd) -> Result<Digraph, String> {
    match kind {
        ConstructCmd::DoubleTree {
            path,
            random,
            tree,
            seed,
        } => {
            let tree_edges: Vec<(usize, usize)> = match (path, random, tree) {
                (Some(n), None, None) => {
                    if n == 0 {
                        return Err("--path needs at least 1 vertex".into());
                    }
                    (1..n).map(|i| (i - 1, i)).collect()
                }
                (None, Some(n), None) => {
                    if n == 0 {
                        return Err("--random needs at least 1 vertex".into());
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    random_tree(n, &mut rng)
                }
                (None, None, Some(file)) => {
                    let text = std::fs::read_to_string(&file)
                        .map_err(|e| format!("{}: {e}", file.display()))?;
                    let g = parse(&text, Format::EdgeList)
                        .map_err(|e| format!("{}: {e}", file.display()))?;
                    g.edges().collect()
                }
                _ => return Err("choose exactly one of --path, --random, --tree".into()),
            };
            double_tree(&tree_edges).map_err(|e| e.to_string())
        }
        ConstructCmd::Bipartite { a, b } => {
            oriented_complete_bipartite(a, b).map_err(|e| e.to_string())
        }
    }
}

fn run_verify(suite: VerifyCmd, started: Instant) -> i32 {
    match suite {
        VerifyCmd::Theorem { max_n, budget } => {
            match verify_theorem(max_n, &budget.config()) {
                Ok(verdicts) => {
                    let view = TheoremResultView::of(&verdicts);
                    let pass = view.pass;
                    let partial = verdicts.iter().any(|v| v.partial);
                    emit(&JsonReport::new(
                        "verify theorem",
                        None,
                        serde_json::to_value(view).unwrap(),
                        started.elapsed().as_millis(),
                    ));
                    if partial {
                        EXIT_BUDGET
                    } else if pass {
                        EXIT_OK
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        VerifyCmd::LemmaSimple { parts } => {
            let (a, b) = (parts[0], parts[1]);
            match verify_bipartite_simplicity(a, b) {
                Ok(report) => {
                    let view = SweepResultView::of(&report);
                    let pass = view.pass;
                    emit(&JsonReport::new(
                        "verify lemma-simple",
                        None,
                        serde_json::to_value(view).unwrap(),
                        started.elapsed().as_millis(),
                    ));
                    if pass {
                        EXIT_OK
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        VerifyCmd::Recurrence { max } => match recurrence_bound(max) {
            Ok(table) => {
                let view = RecurrenceResultView::of(&table);
                let pass = view.pass;
                emit(&JsonReport::new(
                    "verify recurrence",
                    None,
                    serde_json::to_value(view).unwrap(),
                    started.elapsed().as_millis(),
                ));
                if pass {
                    EXIT_OK
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => usage_error(&e.to_string()),
        },
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}
