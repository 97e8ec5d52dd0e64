//! Bayesian-network side: the directed acyclic graph model, the splitting
//! reduction to a weighted undirected multigraph, and the loop cutset solver
//! built on top of it.
//!
//! Each DAG vertex `v` splits into an in-vertex (carrying all incoming
//! edges, unselectable) and an out-vertex (carrying all outgoing edges,
//! weighing log2 of the domain size), joined by an edge. Cycles of the split
//! graph correspond one-to-one to loops of the DAG, and a feedback vertex
//! set of out-vertices maps back to a loop cutset: an out-vertex is an
//! allowed (non-sink) vertex on every loop through it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{VertexId, Weight, WeightedMultigraph};
use crate::sample::SolveError;
use crate::solver::{wra_traced, CutsetResult, Improvement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DagError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("self edge on {0}")]
    SelfEdge(VertexId),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph contains a directed cycle")]
    DirectedCycle,
    #[error("vertex {0} has domain size < 2")]
    DomainTooSmall(VertexId),
    #[error("unknown split vertex {0}")]
    UnknownSplitVertex(VertexId),
}

/// Directed acyclic graph with a domain size (>= 2) per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesianDag {
    vertices: BTreeMap<VertexId, u32>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl BayesianDag {
    /// Validates domain sizes, edge endpoints, duplicates, self-edges and
    /// acyclicity.
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, u32)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, DagError> {
        let mut vertex_map = BTreeMap::new();
        for (id, domain) in vertices {
            if domain < 2 {
                return Err(DagError::DomainTooSmall(id));
            }
            if vertex_map.insert(id, domain).is_some() {
                return Err(DagError::DuplicateVertex(id));
            }
        }
        let mut edge_set = BTreeSet::new();
        for (parent, child) in edges {
            if parent == child {
                return Err(DagError::SelfEdge(parent));
            }
            for v in [parent, child] {
                if !vertex_map.contains_key(&v) {
                    return Err(DagError::UnknownVertex(v));
                }
            }
            if !edge_set.insert((parent, child)) {
                return Err(DagError::DuplicateEdge(parent, child));
            }
        }
        let dag = Self {
            vertices: vertex_map,
            edges: edge_set,
        };
        if dag.has_directed_cycle() {
            return Err(DagError::DirectedCycle);
        }
        Ok(dag)
    }

    fn has_directed_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle exists iff some vertex never reaches
        // in-degree zero.
        let mut in_degree: BTreeMap<VertexId, usize> =
            self.vertices.keys().map(|&v| (v, 0)).collect();
        for &(_, child) in &self.edges {
            *in_degree.get_mut(&child).expect("validated endpoint") += 1;
        }
        let mut ready: Vec<VertexId> = in_degree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(parent, child) in self.edges.range((v, VertexId(0))..) {
                if parent != v {
                    break;
                }
                let d = in_degree.get_mut(&child).expect("validated endpoint");
                *d -= 1;
                if *d == 0 {
                    ready.push(child);
                }
            }
        }
        seen != self.vertices.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn domain_size(&self, v: VertexId) -> Result<u32, DagError> {
        self.vertices
            .get(&v)
            .copied()
            .ok_or(DagError::UnknownVertex(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.vertices.iter().map(|(&v, &d)| (v, d))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }
}

/// Which half of a split vertex an id refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    In,
    Out,
}

/// The splitting graph of a DAG plus the mapping back to original vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGraph {
    pub graph: WeightedMultigraph,
    origin: BTreeMap<VertexId, (VertexId, Role)>,
}

impl SplitGraph {
    /// Split id of the in-half of original vertex `v`.
    pub fn in_id(v: VertexId) -> VertexId {
        VertexId(2 * v.0)
    }

    /// Split id of the out-half of original vertex `v`.
    pub fn out_id(v: VertexId) -> VertexId {
        VertexId(2 * v.0 + 1)
    }

    pub fn origin_of(&self, split: VertexId) -> Result<(VertexId, Role), DagError> {
        self.origin
            .get(&split)
            .copied()
            .ok_or(DagError::UnknownSplitVertex(split))
    }

    /// Maps a set of split vertices back to their originating DAG vertices,
    /// deduplicating pairs that share an original.
    pub fn originals(&self, set: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, DagError> {
        set.iter()
            .map(|&v| self.origin_of(v).map(|(orig, _)| orig))
            .collect()
    }
}

/// Builds the splitting graph: `2|V|` vertices and `|E| + |V|` edges, with
/// in-vertices unselectable and out-vertices weighing log2(domain size).
pub fn split_graph(d: &BayesianDag) -> SplitGraph {
    let mut graph = WeightedMultigraph::new();
    let mut origin = BTreeMap::new();
    for (v, domain) in d.vertices() {
        let (v_in, v_out) = (SplitGraph::in_id(v), SplitGraph::out_id(v));
        graph.add_vertex(v_in, Weight::Unselectable).expect("fresh id");
        graph
            .add_vertex(v_out, Weight::Finite((domain as f64).log2()))
            .expect("fresh id");
        origin.insert(v_in, (v, Role::In));
        origin.insert(v_out, (v, Role::Out));
        graph.add_edge(v_in, v_out).expect("vertices just added");
    }
    for (parent, child) in d.edges() {
        graph
            .add_edge(SplitGraph::out_id(parent), SplitGraph::in_id(child))
            .expect("vertices exist");
    }
    SplitGraph { graph, origin }
}

/// Finds a loop cutset of `d` by solving weighted FVS on its splitting graph
/// and mapping the result back. The reported weight is the sum of log2
/// domain sizes over the cutset.
pub fn loop_cutset(
    d: &BayesianDag,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<CutsetResult, SolveError> {
    loop_cutset_traced(d, restart_factor, max_iters, seed).map(|(result, _)| result)
}

/// [`loop_cutset`] plus the anytime improvement trace of the underlying run.
pub fn loop_cutset_traced(
    d: &BayesianDag,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<(CutsetResult, Vec<Improvement>), SolveError> {
    let split = split_graph(d);
    let (found, trace) = wra_traced(&split.graph, restart_factor, max_iters, seed)?;
    let cutset = split
        .originals(&found.cutset)
        .expect("cutset vertices come from the split graph");
    // The solver only ever selects finite-weight vertices, i.e. out-halves,
    // so the mapping is one-to-one and weight and size carry over.
    debug_assert_eq!(cutset.len(), found.size);
    Ok((
        CutsetResult {
            cutset,
            weight: found.weight,
            size: found.size,
            iterations_used: found.iterations_used,
            seed: found.seed,
        },
        trace,
    ))
}

/// True iff removing the out-halves of `set` from the splitting graph leaves
/// a forest, i.e. `set` contains an allowed vertex of every loop of `d`.
/// Ids outside `d` make the answer false.
pub fn is_loop_cutset(d: &BayesianDag, set: &BTreeSet<VertexId>) -> bool {
    if set.iter().any(|&v| !d.has_vertex(v)) {
        return false;
    }
    let split = split_graph(d);
    let outs: BTreeSet<VertexId> = set.iter().map(|&v| SplitGraph::out_id(v)).collect();
    split.graph.is_fvs(&outs)
}
