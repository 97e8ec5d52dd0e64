//! `loopcut` command line tool.
//!
//! Subcommands:
//! * `gen` — emit a seeded random Bayesian-network DAG in `.bn` format;
//! * `fvs` — solve weighted feedback vertex set on a `.wgr` multigraph;
//! * `loopcutset` — find a loop cutset of a `.bn` network;
//! * `bench` — compare two algorithms across a suite of generated DAGs.
//!
//! Exit codes: 0 on success, 2 on parse/validation errors, 3 on infeasible
//! configurations.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use loopcut_core::bayes::{loop_cutset_traced, split_graph, BayesianDag};
use loopcut_core::bench::{
    emit_table, flatten_rows, format_summary, gen_random_dag, run_suite, AlgoSpec,
    ExperimentConfig, ResultRecord, TableFormat,
};
use loopcut_core::formats::{parse_bn, parse_wgr, write_bn};
use loopcut_core::graph::{VertexId, WeightedMultigraph};
use loopcut_core::oracle::{brute_force_min_wfvs, greedy_wfvs, OracleError};
use loopcut_core::solver::{wra_traced, AlgorithmParams};

/// Oversized exact requests are an infeasible configuration; everything
/// else about a bad input is a validation failure.
fn oracle_err(e: OracleError) -> CliError {
    match e {
        OracleError::TooLarge(_) => CliError::Infeasible(e.to_string()),
        OracleError::NoFiniteFeedbackVertexSet => CliError::Invalid(e.to_string()),
    }
}

#[derive(Parser)]
#[command(name = "loopcut", version, about = "Feedback vertex set and loop cutset solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Wra,
    Greedy,
    Exact,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Wra => "wra",
            Algo::Greedy => "greedy",
            Algo::Exact => "exact",
        }
    }
}

#[derive(Args)]
struct GeneratorArgs {
    /// Number of vertices per generated DAG
    #[arg(long, default_value_t = 15)]
    n_vertices: u32,
    /// Number of edges per generated DAG
    #[arg(long, default_value_t = 25)]
    n_edges: u32,
    /// Smallest domain size (inclusive)
    #[arg(long, default_value_t = 2)]
    domain_lo: u32,
    /// Largest domain size (inclusive)
    #[arg(long, default_value_t = 6)]
    domain_hi: u32,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Input file
    input: PathBuf,
    /// Algorithm to run
    #[arg(long, value_enum, default_value_t = Algo::Wra)]
    algo: Algo,
    /// Restart multiplier of the anytime solver
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Iteration cap of the anytime solver
    #[arg(long, default_value_t = 300)]
    max_iters: u64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output instead of the human summary
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random DAG in .bn format
    Gen {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Which graph of the seeded sequence to emit
        #[arg(long, default_value_t = 0)]
        index: u32,
        /// Write output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve weighted feedback vertex set on a .wgr graph
    Fvs {
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Find a loop cutset of a .bn Bayesian network
    Loopcutset {
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Compare two algorithms on a suite of generated DAGs
    Bench {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Number of graphs in the suite
        #[arg(long, default_value_t = 100)]
        count: u32,
        /// The two algorithms to compare (exactly two)
        #[arg(long = "algo", value_enum, num_args = 1, action = clap::ArgAction::Append,
              default_values_t = [Algo::Wra, Algo::Greedy])]
        algos: Vec<Algo>,
        /// Restart multiplier for wra slots
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Iteration cap for wra slots
        #[arg(long, default_value_t = 300)]
        max_iters: u64,
        /// Output table format
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the table to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Error paths mapped to the documented exit codes.
enum CliError {
    /// Exit code 2: unreadable/unparsable inputs or invalid values.
    Invalid(String),
    /// Exit code 3: structurally infeasible configuration.
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Infeasible(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            generator,
            index,
            out,
        } => {
            let cfg = experiment_config(&generator, 1, &[Algo::Wra, Algo::Greedy], 1.0, 1);
            let dag = gen_random_dag(&cfg, index)
                .map_err(|e| CliError::Infeasible(e.to_string()))?;
            write_output(out.as_deref(), &write_bn(&dag))
        }
        Command::Fvs { solve } => {
            let text = read_input(&solve.input)?;
            let graph =
                parse_wgr(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", solve.input.display())))?;
            let outcome = solve_wgr(&graph, &solve)?;
            report_solution(&solve, outcome)
        }
        Command::Loopcutset { solve } => {
            let text = read_input(&solve.input)?;
            let dag =
                parse_bn(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", solve.input.display())))?;
            let outcome = solve_bn(&dag, &solve)?;
            report_solution(&solve, outcome)
        }
        Command::Bench {
            generator,
            count,
            algos,
            c,
            max_iters,
            format,
            out,
        } => {
            let cfg = experiment_config(&generator, count, &algos, c, max_iters);
            cfg.validate().map_err(|e| CliError::Infeasible(e.to_string()))?;
            let (rows, summary) =
                run_suite(&cfg).map_err(|e| CliError::Infeasible(e.to_string()))?;
            let table = emit_table(&flatten_rows(&rows), table_format(format));
            eprint!("{}", format_summary(&summary));
            write_output(out.as_deref(), &table)
        }
    }
}

/// A solved instance normalized for reporting.
struct Solution {
    record: ResultRecord,
    cutset: BTreeSet<VertexId>,
}

fn solve_wgr(graph: &WeightedMultigraph, args: &SolveArgs) -> Result<Solution, CliError> {
    let solve_err = |e: loopcut_core::sample::SolveError| CliError::Invalid(e.to_string());
    let (cutset, weight, iterations, seed) = match args.algo {
        Algo::Wra => {
            let params = solver_params(args, graph.vertex_count())?;
            let (r, _) = wra_traced(graph, params.restart_factor, params.max_iters, params.seed)
                .map_err(solve_err)?;
            (r.cutset, r.weight, r.iterations_used, r.seed)
        }
        Algo::Greedy => {
            let r = greedy_wfvs(graph).map_err(solve_err)?;
            (r.cutset, r.weight, r.iterations_used, 0)
        }
        Algo::Exact => {
            let r = brute_force_min_wfvs(graph).map_err(|e| CliError::Invalid(e.to_string()))?;
            (r.optimum_set, r.optimum_weight, 0, 0)
        }
    };
    Ok(Solution {
        record: ResultRecord {
            graph_id: 0,
            algo: args.algo.name().to_string(),
            weight: weight.finite_value().unwrap_or(f64::INFINITY),
            size: cutset.len(),
            iterations,
            seed,
        },
        cutset,
    })
}

fn solve_bn(dag: &BayesianDag, args: &SolveArgs) -> Result<Solution, CliError> {
    let solve_err = |e: loopcut_core::sample::SolveError| CliError::Invalid(e.to_string());
    let (cutset, weight, iterations, seed) = match args.algo {
        Algo::Wra => {
            // The anytime solver runs on the splitting graph, which doubles
            // the vertex count.
            let params = solver_params(args, 2 * dag.vertex_count())?;
            let (r, _) =
                loop_cutset_traced(dag, params.restart_factor, params.max_iters, params.seed)
                    .map_err(solve_err)?;
            (r.cutset, r.weight, r.iterations_used, r.seed)
        }
        Algo::Greedy => {
            let split = split_graph(dag);
            let r = greedy_wfvs(&split.graph).map_err(solve_err)?;
            let cutset = split.originals(&r.cutset).expect("solution is in the split graph");
            (cutset, r.weight, r.iterations_used, 0)
        }
        Algo::Exact => {
            let split = split_graph(dag);
            let r = brute_force_min_wfvs(&split.graph)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let cutset = split
                .originals(&r.optimum_set)
                .expect("solution is in the split graph");
            (cutset, r.optimum_weight, 0, 0)
        }
    };
    Ok(Solution {
        record: ResultRecord {
            graph_id: 0,
            algo: args.algo.name().to_string(),
            weight: weight.finite_value().unwrap_or(f64::INFINITY),
            size: cutset.len(),
            iterations,
            seed,
        },
        cutset,
    })
}

fn solver_params(args: &SolveArgs, solve_budget: usize) -> Result<AlgorithmParams, CliError> {
    let params = AlgorithmParams {
        target_size: solve_budget.max(1),
        restart_factor: args.c,
        max_iters: args.max_iters,
        seed: args.seed,
    };
    params
        .validate()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(params)
}

fn report_solution(args: &SolveArgs, solution: Solution) -> Result<(), CliError> {
    let text = match args.format {
        None => {
            let mut out = String::new();
            let r = &solution.record;
            let _ = writeln!(out, "algo: {}", r.algo);
            let _ = writeln!(out, "weight: {:.6}", r.weight);
            let _ = writeln!(out, "size: {}", r.size);
            let _ = writeln!(out, "iterations: {}", r.iterations);
            let _ = writeln!(out, "seed: {}", r.seed);
            let members: Vec<String> = solution.cutset.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "cutset: {}", members.join(" "));
            out
        }
        Some(Format::Csv) => emit_table(std::slice::from_ref(&solution.record), TableFormat::Csv),
        Some(Format::Json) => {
            let members: Vec<String> = solution.cutset.iter().map(|v| v.to_string()).collect();
            let r = &solution.record;
            format!(
                "{{\"algo\":\"{}\",\"weight\":{:.6},\"size\":{},\"iterations\":{},\"seed\":{},\"cutset\":[{}]}}\n",
                r.algo,
                r.weight,
                r.size,
                r.iterations,
                r.seed,
                members.join(",")
            )
        }
    };
    write_output(args.out.as_deref(), &text)
}

fn experiment_config(
    generator: &GeneratorArgs,
    count: u32,
    algos: &[Algo],
    c: f64,
    max_iters: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        n_vertices: generator.n_vertices,
        n_edges: generator.n_edges,
        domain_lo: generator.domain_lo,
        domain_hi: generator.domain_hi,
        graph_count: count,
        algorithms: algos
            .iter()
            .map(|algo| match algo {
                Algo::Wra => AlgoSpec::Wra {
                    restart_factor: c,
                    max_iters,
                },
                Algo::Greedy => AlgoSpec::Greedy,
                Algo::Exact => AlgoSpec::Exact,
            })
            .collect(),
        seed: generator.seed,
    }
}

fn table_format(format: Format) -> TableFormat {
    match format {
        Format::Csv => TableFormat::Csv,
        Format::Json => TableFormat::Json,
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
