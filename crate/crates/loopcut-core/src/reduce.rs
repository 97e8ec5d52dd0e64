//! Kernelizing reductions that shrink a multigraph while harvesting vertices
//! every feedback vertex set must contain.
//!
//! Both reductions repeatedly drop leaves and bypass linkpoints (degree-2
//! vertices) with a direct edge between their neighbors. A vertex that
//! acquires a self-loop this way lies on a cycle no other vertex can break,
//! so it is forced into the solution and removed.
//!
//! * [`reduce_to_rich`] bypasses every linkpoint. It preserves minimum FVS
//!   *cardinality* and yields a graph where every vertex has degree >= 3.
//! * [`reduce_to_branchy`] bypasses a linkpoint only when some neighbor is at
//!   most as heavy, which preserves minimum FVS *weight*. Remaining
//!   linkpoints end up adjacent only to branchpoints.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{VertexId, WeightedMultigraph};

/// A reduced graph plus the vertices forced into every (minimum) FVS.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub graph: WeightedMultigraph,
    pub forced: BTreeSet<VertexId>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BypassRule {
    /// Bypass every linkpoint (ignores weights).
    Always,
    /// Bypass only when some neighbor weighs at most as much as the
    /// linkpoint itself. Ties bypass; Unselectable ties Unselectable.
    NeighborNotHeavier,
}

/// Reduces to a rich graph: no leaves, no linkpoints, no self-loops.
pub fn reduce_to_rich(g: &WeightedMultigraph) -> Reduction {
    reduce(g, BypassRule::Always)
}

/// Reduces to a branchy graph: no leaves, no self-loops, and every remaining
/// linkpoint adjacent only to branchpoints.
pub fn reduce_to_branchy(g: &WeightedMultigraph) -> Reduction {
    reduce(g, BypassRule::NeighborNotHeavier)
}

/// Work-queue driven reduction. The queue is seeded with all vertices in
/// ascending id order and a vertex is re-enqueued whenever its incident
/// structure changes, which makes the output (including the forced set)
/// deterministic.
fn reduce(g: &WeightedMultigraph, rule: BypassRule) -> Reduction {
    let mut graph = g.clone();
    let mut forced = BTreeSet::new();
    let mut queue: VecDeque<VertexId> = graph.vertex_ids().collect();
    let mut queued: BTreeSet<VertexId> = queue.iter().copied().collect();

    while let Some(v) = queue.pop_front() {
        queued.remove(&v);
        if !graph.has_vertex(v) {
            continue;
        }

        if graph.self_loops(v) > 0 {
            let touched: Vec<VertexId> = graph
                .neighbors(v)
                .expect("v exists")
                .map(|(u, _)| u)
                .filter(|&u| u != v)
                .collect();
            forced.insert(v);
            graph.remove_vertex(v).expect("v exists");
            requeue(&graph, &mut queue, &mut queued, &touched);
            continue;
        }

        let degree = graph.degree(v).expect("v exists");
        if degree <= 1 {
            let touched: Vec<VertexId> = graph
                .neighbors(v)
                .expect("v exists")
                .map(|(u, _)| u)
                .collect();
            graph.remove_vertex(v).expect("v exists");
            requeue(&graph, &mut queue, &mut queued, &touched);
            continue;
        }

        if degree == 2 {
            // No self-loop here, so the two endpoints are real neighbors
            // (possibly the same one twice).
            let ends: Vec<(VertexId, u32)> = graph.neighbors(v).expect("v exists").collect();
            let (a, b) = match ends.as_slice() {
                [(u, 2)] => (*u, *u),
                [(u, 1), (w, 1)] => (*u, *w),
                _ => unreachable!("degree 2 without self-loops has two endpoints"),
            };
            let own = graph.weight(v).expect("v exists");
            let bypass = match rule {
                BypassRule::Always => true,
                BypassRule::NeighborNotHeavier => {
                    graph.weight(a).expect("a exists") <= own
                        || graph.weight(b).expect("b exists") <= own
                }
            };
            if bypass {
                graph.remove_vertex(v).expect("v exists");
                graph.add_edge(a, b).expect("endpoints exist");
                requeue(&graph, &mut queue, &mut queued, &[a, b]);
            }
        }
    }

    Reduction { graph, forced }
}

fn requeue(
    graph: &WeightedMultigraph,
    queue: &mut VecDeque<VertexId>,
    queued: &mut BTreeSet<VertexId>,
    touched: &[VertexId],
) {
    for &u in touched {
        if graph.has_vertex(u) && queued.insert(u) {
            queue.push_back(u);
        }
    }
}
