use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fvskit::bench;
use fvskit::branching::{self, FeedbackOptions, SearchStats};
use fvskit::compression::{self, CompressionOptions};
use fvskit::gen::{self, EdgeMode};
use fvskit::graph;
use fvskit::io;
use fvskit::regular3::{ParityBackend, DEFAULT_SEED};
use fvskit::{DisjointInstance, Error, VertexSet};

/// Exact feedback vertex set solver.
#[derive(Parser)]
#[command(name = "fvskit", version)]
struct Cli {
    /// Seed for generators and the randomized matroid parity backend.
    #[arg(long, global = true, env = "FVSKIT_SEED")]
    seed: Option<u64>,

    /// Print search statistics to stderr.
    #[arg(long, global = true)]
    stats: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an FVS of size k exists, or find a minimum one.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        target: Target,
        /// Try compression subsets on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// Solve the disjoint problem for a file with `s` records.
    Disjoint {
        file: PathBuf,
        #[arg(short)]
        k: i64,
    },
    /// Check that a solution is an FVS of a graph.
    Verify { graph: PathBuf, solution: PathBuf },
    /// Write a generated graph to stdout.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Solve every `.gr` file in a directory and write a CSV table.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        /// Decide for this k instead of finding the minimum.
        #[arg(short)]
        k: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(short)]
    k: Option<usize>,
    #[arg(long)]
    min: bool,
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniformly random edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Allow parallel edges.
        #[arg(long)]
        multi: bool,
    },
    /// A random forest plus planted vertices; the planted set is listed in a comment.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        fvs: usize,
    },
}

enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<io::GraphFile, String> {
    io::parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_stats(enabled: bool, stats: &SearchStats) {
    if enabled {
        eprintln!(
            "branch_nodes={} leaves={} max_depth={} forced={}",
            stats.branch_nodes, stats.leaves, stats.max_depth, stats.forced_count
        );
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let feedback = FeedbackOptions {
        backend: ParityBackend::Algebraic { seed },
        audit: false,
    };
    match &cli.command {
        Command::Solve {
            file,
            target,
            parallel,
        } => {
            let gf = load(file)?;
            let opts = CompressionOptions {
                feedback,
                parallel: *parallel,
            };
            let report = match target.k {
                Some(k) => compression::solve_fvs_decision_with(&gf.graph, k, &opts),
                None => compression::solve_fvs_min_with(&gf.graph, &opts),
            }
            .map_err(|e| e.to_string())?;
            print!("{}", io::write_solution(report.solution.as_ref()));
            print_stats(cli.stats, &report.stats);
            Ok(outcome(report.solution.is_some()))
        }
        Command::Disjoint { file, k } => {
            let gf = load(file)?;
            let v2 = gf
                .v2
                .ok_or_else(|| format!("{}: no `s` records, v2 is undefined", file.display()))?;
            let inst = DisjointInstance::with_v2(gf.graph, v2, *k).map_err(|e| e.to_string())?;
            let run = branching::run_feedback(&inst, &feedback).map_err(|e| e.to_string())?;
            print!("{}", io::write_solution(run.solution.as_ref()));
            print_stats(cli.stats, &run.stats);
            Ok(outcome(run.solution.is_some()))
        }
        Command::Verify {
            graph: graph_path,
            solution,
        } => {
            let gf = load(graph_path)?;
            let parsed = io::parse_solution(&read(solution)?)
                .map_err(|e| format!("{}: {e}", solution.display()))?;
            let Some(f) = parsed else {
                println!("solution claims NO; nothing to verify");
                return Ok(Outcome::No);
            };
            verify(&gf.graph, &f)
        }
        Command::Gen { kind } => {
            let text = match kind {
                GenKind::Random { n, m, multi } => {
                    let mode = if *multi {
                        EdgeMode::Multi
                    } else {
                        EdgeMode::Simple
                    };
                    let g = gen::gen_random(*n, *m, seed, mode).map_err(|e| e.to_string())?;
                    io::write_graph(&g, None)
                }
                GenKind::Planted { n, fvs } => {
                    let (g, witness) =
                        gen::gen_planted(*n, *fvs, seed).map_err(|e| e.to_string())?;
                    let ids: Vec<String> = witness.iter().map(|v| (v.0 + 1).to_string()).collect();
                    format!("c planted {}\n{}", ids.join(" "), io::write_graph(&g, None))
                }
            };
            print!("{text}");
            Ok(Outcome::Yes)
        }
        Command::Bench { dir, csv, k } => {
            let opts = CompressionOptions {
                feedback,
                parallel: false,
            };
            let records = bench::bench_dir(dir, *k, &opts).map_err(|e| e.to_string())?;
            let file = std::fs::File::create(csv).map_err(|e| format!("{}: {e}", csv.display()))?;
            bench::write_csv(&records, file).map_err(|e| format!("{}: {e}", csv.display()))?;
            eprintln!("wrote {} rows to {}", records.len(), csv.display());
            Ok(Outcome::Yes)
        }
    }
}

fn outcome(yes: bool) -> Outcome {
    if yes {
        Outcome::Yes
    } else {
        Outcome::No
    }
}

fn verify(g: &fvskit::Graph, f: &VertexSet) -> Result<Outcome, String> {
    match graph::is_fvs(g, f) {
        Err(Error::UnknownVertex(v)) => {
            println!("INVALID vertex {} is not in the graph", v.0 + 1);
            Ok(Outcome::No)
        }
        Err(e) => Err(e.to_string()),
        Ok(true) => {
            println!("OK");
            Ok(Outcome::Yes)
        }
        Ok(false) => {
            let cycle = graph::find_cycle(g, f).expect("a non-FVS leaves a cycle");
            let ids: Vec<String> = cycle.iter().map(|v| (v.0 + 1).to_string()).collect();
            println!("INVALID cycle {}", ids.join(" "));
            Ok(Outcome::No)
        }
    }
}
