//! Ground-truth and comparison baselines: an exact brute-force WFVS solver
//! used to verify the randomized algorithms, and a deterministic greedy
//! heuristic in the spirit of classic degree-over-weight greedy cutset
//! algorithms.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::graph::{VertexId, Weight, WeightedMultigraph};
use crate::reduce::reduce_to_branchy;
use crate::sample::SolveError;
use crate::solver::CutsetResult;

/// Largest vertex count `brute_force_min_wfvs` accepts.
pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices, above the brute-force limit of {BRUTE_FORCE_VERTEX_LIMIT}")]
    TooLarge(usize),
    #[error("no finite-weight feedback vertex set exists")]
    NoFiniteFeedbackVertexSet,
}

/// An exact optimum: the lexicographically smallest among the smallest
/// minimum-weight feedback vertex sets, plus that minimal cardinality.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimum_weight: Weight,
    pub optimum_set: BTreeSet<VertexId>,
    pub min_cardinality_k: usize,
}

/// Subset enumerated in best-first order. Members are indices into the
/// candidate list, ascending; extensions only append larger indices, so
/// every subset is generated exactly once.
struct Candidate {
    weight: f64,
    members: Vec<usize>,
}

impl Candidate {
    fn key<'a>(&'a self, pool: &'a [(VertexId, f64)]) -> impl Iterator<Item = VertexId> + 'a {
        self.members.iter().map(|&i| pool[i].0)
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| self.members.len().cmp(&other.members.len()))
            .then_with(|| self.members.cmp(&other.members))
    }
}

/// Exact minimum-weight FVS by best-first enumeration of finite-weight
/// vertex subsets in `(weight, size, lexicographic)` order; the first subset
/// that is an FVS is the optimum.
///
/// Deliberately independent of the kernelizing reductions so it can serve as
/// their verification oracle.
pub fn brute_force_min_wfvs(g: &WeightedMultigraph) -> Result<OracleResult, OracleError> {
    if g.vertex_count() > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(OracleError::TooLarge(g.vertex_count()));
    }
    let pool: Vec<(VertexId, f64)> = g
        .vertices()
        .filter_map(|(v, w)| w.finite_value().map(|value| (v, value)))
        .collect();
    let all_finite: BTreeSet<VertexId> = pool.iter().map(|&(v, _)| v).collect();
    if !g.is_fvs(&all_finite) {
        return Err(OracleError::NoFiniteFeedbackVertexSet);
    }

    // Candidate indices are ordered by id, so member lists compare like the
    // vertex sets they denote.
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Candidate {
        weight: 0.0,
        members: Vec::new(),
    }));
    while let Some(Reverse(candidate)) = heap.pop() {
        let set: BTreeSet<VertexId> = candidate.key(&pool).collect();
        if g.is_fvs(&set) {
            return Ok(OracleResult {
                optimum_weight: Weight::Finite(candidate.weight),
                min_cardinality_k: set.len(),
                optimum_set: set,
            });
        }
        let start = candidate.members.last().map_or(0, |&i| i + 1);
        for next in start..pool.len() {
            let mut members = candidate.members.clone();
            members.push(next);
            heap.push(Reverse(Candidate {
                weight: candidate.weight + pool[next].1,
                members,
            }));
        }
    }
    unreachable!("the all-finite subset is enumerated and is an FVS")
}

/// Deterministic greedy WFVS: reduce to branchy, then repeatedly delete the
/// finite-weight vertex maximizing degree/weight (ties to the smallest id).
pub fn greedy_wfvs(g: &WeightedMultigraph) -> Result<CutsetResult, SolveError> {
    let mut cutset = BTreeSet::new();
    let mut weight = Weight::ZERO;
    let mut work = g.clone();
    let mut picks: u64 = 0;
    loop {
        let red = reduce_to_branchy(&work);
        work = red.graph;
        for v in red.forced {
            match g.weight(v).expect("forced vertices come from g") {
                w @ Weight::Finite(_) => weight += w,
                Weight::Unselectable => return Err(SolveError::NoFiniteFeedbackVertexSet),
            }
            cutset.insert(v);
        }
        if work.is_empty() {
            let size = cutset.len();
            return Ok(CutsetResult {
                cutset,
                weight,
                size,
                iterations_used: picks,
                seed: 0,
            });
        }
        let mut best: Option<(VertexId, f64)> = None;
        for (v, w) in work.vertices() {
            let Some(value) = w.finite_value() else {
                continue;
            };
            let ratio = work.degree(v).expect("v exists") as f64 / value;
            if best.is_none_or(|(_, r)| ratio > r) {
                best = Some((v, ratio));
            }
        }
        let (v, _) = best.ok_or(SolveError::NoSelectableVertex)?;
        weight += work.weight(v).expect("v exists");
        cutset.insert(v);
        work.remove_vertex(v).expect("v exists");
        picks += 1;
    }
}
