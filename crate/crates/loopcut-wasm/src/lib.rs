//! wasm-bindgen surface for the browser demo.
//!
//! Three operations, all exchanging plain strings so the page needs no glue
//! types: `generate_network` emits a seeded random `.bn` network,
//! `solve_network` runs the loop cutset pipeline (randomized anytime solver
//! vs. greedy, plus the exact optimum on small inputs), and `solve_graph`
//! does the same for a `.wgr` weighted multigraph. Results come back as
//! JSON for the page to render.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use loopcut_core::bayes::{split_graph, BayesianDag};
use loopcut_core::bench::{gen_random_dag, AlgoSpec, ExperimentConfig};
use loopcut_core::formats::{parse_bn, parse_wgr, write_bn};
use loopcut_core::graph::WeightedMultigraph;
use loopcut_core::oracle::{brute_force_min_wfvs, greedy_wfvs, BRUTE_FORCE_VERTEX_LIMIT};
use loopcut_core::solver::{wra_traced, Improvement};

#[derive(Serialize)]
struct TracePoint {
    iteration: u64,
    weight: f64,
    size: usize,
}

#[derive(Serialize)]
struct Run {
    cutset: Vec<u32>,
    weight: f64,
    size: usize,
    iterations: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trace: Vec<TracePoint>,
}

#[derive(Serialize)]
struct NetworkNode {
    id: u32,
    domain: u32,
    weight: f64,
}

#[derive(Serialize)]
struct NetworkSolution {
    nodes: Vec<NetworkNode>,
    edges: Vec<(u32, u32)>,
    wra: Run,
    greedy: Run,
    exact: Option<Run>,
}

#[derive(Serialize)]
struct GraphNode {
    id: u32,
    /// `None` marks an unselectable vertex.
    weight: Option<f64>,
}

#[derive(Serialize)]
struct GraphSolution {
    nodes: Vec<GraphNode>,
    edges: Vec<(u32, u32, u32)>,
    wra: Run,
    greedy: Run,
    exact: Option<Run>,
}

fn trace_points(trace: Vec<Improvement>) -> Vec<TracePoint> {
    trace
        .into_iter()
        .map(|p| TracePoint {
            iteration: p.iteration,
            weight: p.weight,
            size: p.size,
        })
        .collect()
}

fn network_bn(n: u32, m: u32, domain_lo: u32, domain_hi: u32, seed: u64, index: u32) -> Result<String, String> {
    let cfg = ExperimentConfig {
        n_vertices: n,
        n_edges: m,
        domain_lo,
        domain_hi,
        graph_count: 1,
        algorithms: vec![
            AlgoSpec::Wra {
                restart_factor: 1.0,
                max_iters: 1,
            },
            AlgoSpec::Greedy,
        ],
        seed,
    };
    let dag = gen_random_dag(&cfg, index).map_err(|e| e.to_string())?;
    Ok(write_bn(&dag))
}

fn solve_network_json(text: &str, restart_factor: f64, max_iters: u64, seed: u64) -> Result<String, String> {
    let dag: BayesianDag = parse_bn(text).map_err(|e| e.to_string())?;
    let split = split_graph(&dag);

    let (found, trace) =
        wra_traced(&split.graph, restart_factor, max_iters, seed).map_err(|e| e.to_string())?;
    let wra_cutset = split.originals(&found.cutset).map_err(|e| e.to_string())?;
    let wra = Run {
        cutset: wra_cutset.iter().map(|v| v.0).collect(),
        weight: found.weight.finite_value().unwrap_or(f64::NAN),
        size: found.size,
        iterations: found.iterations_used,
        trace: trace_points(trace),
    };

    let greedy_found = greedy_wfvs(&split.graph).map_err(|e| e.to_string())?;
    let greedy_cutset = split.originals(&greedy_found.cutset).map_err(|e| e.to_string())?;
    let greedy = Run {
        cutset: greedy_cutset.iter().map(|v| v.0).collect(),
        weight: greedy_found.weight.finite_value().unwrap_or(f64::NAN),
        size: greedy_cutset.len(),
        iterations: greedy_found.iterations_used,
        trace: Vec::new(),
    };

    let exact = (split.graph.vertex_count() <= BRUTE_FORCE_VERTEX_LIMIT)
        .then(|| brute_force_min_wfvs(&split.graph))
        .transpose()
        .map_err(|e| e.to_string())?
        .map(|optimum| {
            let cutset = split
                .originals(&optimum.optimum_set)
                .expect("optimum is in the split graph");
            Run {
                cutset: cutset.iter().map(|v| v.0).collect(),
                weight: optimum.optimum_weight.finite_value().unwrap_or(f64::NAN),
                size: cutset.len(),
                iterations: 0,
                trace: Vec::new(),
            }
        });

    let solution = NetworkSolution {
        nodes: dag
            .vertices()
            .map(|(v, domain)| NetworkNode {
                id: v.0,
                domain,
                weight: (domain as f64).log2(),
            })
            .collect(),
        edges: dag.edges().map(|(u, v)| (u.0, v.0)).collect(),
        wra,
        greedy,
        exact,
    };
    serde_json::to_string(&solution).map_err(|e| e.to_string())
}

fn solve_graph_json(text: &str, restart_factor: f64, max_iters: u64, seed: u64) -> Result<String, String> {
    let graph: WeightedMultigraph = parse_wgr(text).map_err(|e| e.to_string())?;

    let (found, trace) =
        wra_traced(&graph, restart_factor, max_iters, seed).map_err(|e| e.to_string())?;
    let wra = Run {
        cutset: found.cutset.iter().map(|v| v.0).collect(),
        weight: found.weight.finite_value().unwrap_or(f64::NAN),
        size: found.size,
        iterations: found.iterations_used,
        trace: trace_points(trace),
    };

    let greedy_found = greedy_wfvs(&graph).map_err(|e| e.to_string())?;
    let greedy = Run {
        cutset: greedy_found.cutset.iter().map(|v| v.0).collect(),
        weight: greedy_found.weight.finite_value().unwrap_or(f64::NAN),
        size: greedy_found.size,
        iterations: greedy_found.iterations_used,
        trace: Vec::new(),
    };

    let exact = (graph.vertex_count() <= BRUTE_FORCE_VERTEX_LIMIT)
        .then(|| brute_force_min_wfvs(&graph))
        .transpose()
        .map_err(|e| e.to_string())?
        .map(|optimum| Run {
            cutset: optimum.optimum_set.iter().map(|v| v.0).collect(),
            weight: optimum.optimum_weight.finite_value().unwrap_or(f64::NAN),
            size: optimum.optimum_set.len(),
            iterations: 0,
            trace: Vec::new(),
        });

    let solution = GraphSolution {
        nodes: graph
            .vertices()
            .map(|(v, w)| GraphNode {
                id: v.0,
                weight: w.finite_value(),
            })
            .collect(),
        edges: graph.edges().map(|(u, v, mult)| (u.0, v.0, mult)).collect(),
        wra,
        greedy,
        exact,
    };
    serde_json::to_string(&solution).map_err(|e| e.to_string())
}

/// Emits a seeded random Bayesian network in `.bn` text form.
#[wasm_bindgen]
pub fn generate_network(
    n_vertices: u32,
    n_edges: u32,
    domain_lo: u32,
    domain_hi: u32,
    seed: u64,
    index: u32,
) -> Result<String, JsError> {
    network_bn(n_vertices, n_edges, domain_lo, domain_hi, seed, index).map_err(|e| JsError::new(&e))
}

/// Solves the loop cutset problem for a `.bn` network; returns JSON with
/// the network, the anytime run (with its improvement trace), the greedy
/// baseline and, on small inputs, the exact optimum.
#[wasm_bindgen]
pub fn solve_network(
    bn_text: &str,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<String, JsError> {
    solve_network_json(bn_text, restart_factor, max_iters, seed).map_err(|e| JsError::new(&e))
}

/// Solves weighted feedback vertex set for a `.wgr` multigraph; same JSON
/// shape as [`solve_network`] with multigraph edges.
#[wasm_bindgen]
pub fn solve_graph(
    wgr_text: &str,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<String, JsError> {
    solve_graph_json(wgr_text, restart_factor, max_iters, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_network_solves_end_to_end() {
        let bn = network_bn(8, 11, 2, 4, 7, 0).unwrap();
        let json = solve_network_json(&bn, 1.0, 50, 3).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["nodes"].as_array().unwrap().len(), 8);
        assert_eq!(value["edges"].as_array().unwrap().len(), 11);
        let wra_weight = value["wra"]["weight"].as_f64().unwrap();
        let exact_weight = value["exact"]["weight"].as_f64().unwrap();
        assert!(wra_weight + 1e-9 >= exact_weight);
        assert!(value["wra"]["trace"].as_array().unwrap().len() >= 1);
    }

    #[test]
    fn graph_demo_reports_unselectable_vertices() {
        let wgr = "3 4\n0 inf\n1 2.5\n2 1\n0 1\n1 2\n2 0\n1 2\n";
        let json = solve_graph_json(wgr, 1.0, 40, 11).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value["nodes"][0]["weight"].is_null());
        let cutset = value["wra"]["cutset"].as_array().unwrap();
        assert!(!cutset.iter().any(|v| v.as_u64() == Some(0)));
    }

    #[test]
    fn parse_errors_surface() {
        assert!(solve_network_json("nonsense", 1.0, 10, 0).is_err());
        assert!(solve_graph_json("1 0\n0 -3\n", 1.0, 10, 0).is_err());
    }
}
