//! Benchmark harness: seeded random DAG generation, head-to-head comparison
//! suites, and machine-readable result tables.

use std::fmt;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bayes::{loop_cutset, split_graph, BayesianDag};
use crate::graph::VertexId;
use crate::oracle::{brute_force_min_wfvs, greedy_wfvs, OracleError};
use crate::sample::SolveError;

/// Two cutset weights within this distance count as a tie; log-domain sums
/// of equal-weight cutsets can differ by rounding.
pub const WEIGHT_TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{requested} edges requested but {vertices} vertices allow at most {max}")]
    TooManyEdges {
        requested: u32,
        vertices: u32,
        max: u64,
    },
    #[error("domain bounds must satisfy 2 <= lo <= hi")]
    BadDomainBounds,
    #[error("graph count must be at least 1")]
    EmptySuite,
    #[error("a comparison suite needs exactly two algorithms, got {0}")]
    NotTwoAlgorithms(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("graph {graph_id} (seed {seed}): {source}")]
    Solve {
        graph_id: u32,
        seed: u64,
        source: SolveError,
    },
    #[error("graph {graph_id}: {source}")]
    Oracle { graph_id: u32, source: OracleError },
}

/// An algorithm slot in a comparison suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgoSpec {
    Wra { restart_factor: f64, max_iters: u64 },
    Greedy,
    Exact,
}

impl AlgoSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AlgoSpec::Wra { .. } => "wra",
            AlgoSpec::Greedy => "greedy",
            AlgoSpec::Exact => "exact",
        }
    }
}

/// Parameters of a generated-graph experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_vertices: u32,
    pub n_edges: u32,
    pub domain_lo: u32,
    pub domain_hi: u32,
    pub graph_count: u32,
    pub algorithms: Vec<AlgoSpec>,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn max_edges(n_vertices: u32) -> u64 {
        let n = n_vertices as u64;
        n * n.saturating_sub(1) / 2
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let max = Self::max_edges(self.n_vertices);
        if self.n_edges as u64 > max {
            return Err(ConfigError::TooManyEdges {
                requested: self.n_edges,
                vertices: self.n_vertices,
                max,
            });
        }
        if self.domain_lo < 2 || self.domain_lo > self.domain_hi {
            return Err(ConfigError::BadDomainBounds);
        }
        if self.graph_count == 0 {
            return Err(ConfigError::EmptySuite);
        }
        if self.algorithms.len() != 2 {
            return Err(ConfigError::NotTwoAlgorithms(self.algorithms.len()));
        }
        Ok(())
    }
}

/// SplitMix64-style derivation of per-graph solver seeds from the suite
/// seed, so each recorded run is reproducible in isolation.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random DAG: a uniform vertex permutation orients a uniform
/// sample of distinct vertex pairs from earlier to later, which guarantees
/// acyclicity; domain sizes are uniform in `[domain_lo, domain_hi]`.
///
/// Graph `index` of a config draws from stream `index` of the config seed.
pub fn gen_random_dag(cfg: &ExperimentConfig, index: u32) -> Result<BayesianDag, ConfigError> {
    let max = ExperimentConfig::max_edges(cfg.n_vertices);
    if cfg.n_edges as u64 > max {
        return Err(ConfigError::TooManyEdges {
            requested: cfg.n_edges,
            vertices: cfg.n_vertices,
            max,
        });
    }
    if cfg.domain_lo < 2 || cfg.domain_lo > cfg.domain_hi {
        return Err(ConfigError::BadDomainBounds);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);

    let n = cfg.n_vertices;
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut position = vec![0u32; n as usize];
    for (pos, &v) in order.iter().enumerate() {
        position[v as usize] = pos as u32;
    }

    let mut pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut chosen: Vec<(u32, u32)> = pairs.into_iter().take(cfg.n_edges as usize).collect();
    chosen.sort_unstable();

    let vertices: Vec<(VertexId, u32)> = (0..n)
        .map(|v| (VertexId(v), rng.gen_range(cfg.domain_lo..=cfg.domain_hi)))
        .collect();
    let edges = chosen.into_iter().map(|(u, v)| {
        if position[u as usize] < position[v as usize] {
            (VertexId(u), VertexId(v))
        } else {
            (VertexId(v), VertexId(u))
        }
    });
    Ok(BayesianDag::new(vertices, edges).expect("construction is acyclic by design"))
}

/// One algorithm's outcome on one generated graph.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoRun {
    pub algo: &'static str,
    pub weight: f64,
    pub size: usize,
    pub iterations: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    First,
    Second,
    Tie,
}

impl Winner {
    pub fn decide(first_weight: f64, second_weight: f64) -> Winner {
        if (first_weight - second_weight).abs() <= WEIGHT_TIE_EPSILON {
            Winner::Tie
        } else if first_weight < second_weight {
            Winner::First
        } else {
            Winner::Second
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::First => "first",
            Winner::Second => "second",
            Winner::Tie => "tie",
        })
    }
}

/// Per-graph comparison between the two configured algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub graph_id: u32,
    pub runs: [AlgoRun; 2],
    pub winner: Winner,
}

/// Suite aggregates: win counts plus mean weight and size per algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub algo_names: [&'static str; 2],
    pub first_wins: u32,
    pub second_wins: u32,
    pub ties: u32,
    pub mean_weight: [f64; 2],
    pub mean_size: [f64; 2],
}

fn run_algo(
    d: &BayesianDag,
    algo: &AlgoSpec,
    graph_id: u32,
    seed: u64,
) -> Result<AlgoRun, SuiteError> {
    let solve_err = |source| SuiteError::Solve {
        graph_id,
        seed,
        source,
    };
    match algo {
        AlgoSpec::Wra {
            restart_factor,
            max_iters,
        } => {
            let r = loop_cutset(d, *restart_factor, *max_iters, seed).map_err(solve_err)?;
            Ok(AlgoRun {
                algo: "wra",
                weight: r.weight.finite_value().expect("cutset weight is finite"),
                size: r.size,
                iterations: r.iterations_used,
                seed,
            })
        }
        AlgoSpec::Greedy => {
            let split = split_graph(d);
            let r = greedy_wfvs(&split.graph).map_err(solve_err)?;
            let originals = split
                .originals(&r.cutset)
                .expect("cutset vertices come from the split graph");
            Ok(AlgoRun {
                algo: "greedy",
                weight: r.weight.finite_value().expect("cutset weight is finite"),
                size: originals.len(),
                iterations: r.iterations_used,
                seed: 0,
            })
        }
        AlgoSpec::Exact => {
            let split = split_graph(d);
            let r = brute_force_min_wfvs(&split.graph)
                .map_err(|source| SuiteError::Oracle { graph_id, source })?;
            let originals = split
                .originals(&r.optimum_set)
                .expect("optimum vertices come from the split graph");
            Ok(AlgoRun {
                algo: "exact",
                weight: r
                    .optimum_weight
                    .finite_value()
                    .expect("optimum weight is finite"),
                size: originals.len(),
                iterations: 0,
                seed: 0,
            })
        }
    }
}

/// Runs every configured algorithm on every generated graph. Rows come back
/// ordered by graph id and the whole suite is deterministic in the config.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<(Vec<ComparisonRow>, SuiteSummary), SuiteError> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.graph_count as usize);
    for graph_id in 0..cfg.graph_count {
        let dag = gen_random_dag(cfg, graph_id)?;
        let seed = derive_seed(cfg.seed, graph_id as u64);
        let first = run_algo(&dag, &cfg.algorithms[0], graph_id, seed)?;
        let second = run_algo(&dag, &cfg.algorithms[1], graph_id, seed)?;
        let winner = Winner::decide(first.weight, second.weight);
        rows.push(ComparisonRow {
            graph_id,
            runs: [first, second],
            winner,
        });
    }

    let count = rows.len() as f64;
    let mut summary = SuiteSummary {
        algo_names: [cfg.algorithms[0].name(), cfg.algorithms[1].name()],
        first_wins: 0,
        second_wins: 0,
        ties: 0,
        mean_weight: [0.0; 2],
        mean_size: [0.0; 2],
    };
    for row in &rows {
        match row.winner {
            Winner::First => summary.first_wins += 1,
            Winner::Second => summary.second_wins += 1,
            Winner::Tie => summary.ties += 1,
        }
        for side in 0..2 {
            summary.mean_weight[side] += row.runs[side].weight / count;
            summary.mean_size[side] += row.runs[side].size as f64 / count;
        }
    }
    Ok((rows, summary))
}

/// One line of the output table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub graph_id: u64,
    pub algo: String,
    pub weight: f64,
    pub size: usize,
    pub iterations: u64,
    pub seed: u64,
}

pub fn flatten_rows(rows: &[ComparisonRow]) -> Vec<ResultRecord> {
    rows.iter()
        .flat_map(|row| {
            row.runs.iter().map(|run| ResultRecord {
                graph_id: row.graph_id as u64,
                algo: run.algo.to_string(),
                weight: run.weight,
                size: run.size,
                iterations: run.iterations,
                seed: run.seed,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Serializes records byte-stably; weights always print with 6 decimals.
pub fn emit_table(records: &[ResultRecord], format: TableFormat) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("graph_id,algo,weight,size,iterations,seed\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{:.6},{},{},{}",
                    r.graph_id, r.algo, r.weight, r.size, r.iterations, r.seed
                );
            }
        }
        TableFormat::Json => {
            if records.is_empty() {
                out.push_str("[]\n");
                return out;
            }
            out.push_str("[\n");
            for (i, r) in records.iter().enumerate() {
                let _ = write!(
                    out,
                    "  {{\"graph_id\":{},\"algo\":\"{}\",\"weight\":{:.6},\"size\":{},\"iterations\":{},\"seed\":{}}}",
                    r.graph_id, r.algo, r.weight, r.size, r.iterations, r.seed
                );
                out.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
        }
    }
    out
}

/// Human-readable suite summary, one line per fact.
pub fn format_summary(summary: &SuiteSummary) -> String {
    let [first, second] = summary.algo_names;
    let mut out = format!(
        "{first} vs {second}: first={} second={} tie={}\n",
        summary.first_wins, summary.second_wins, summary.ties
    );
    for side in 0..2 {
        let _ = writeln!(
            out,
            "{}: mean weight {:.6}, mean size {:.2}",
            summary.algo_names[side], summary.mean_weight[side], summary.mean_size[side]
        );
    }
    out
}
