//! Weighted undirected multigraph with parallel edges and self-loops.
//!
//! Vertex ids are stable: reductions and solvers delete vertices but never
//! renumber them, so an id identifies the same vertex across an entire solve
//! pipeline. Edge multiplicities are stored as counts, which keeps the
//! parallel edges generated by linkpoint bypassing cheap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign};

use thiserror::Error;

/// Hard cap on the number of vertices a graph may hold.
pub const MAX_VERTICES: usize = 1 << 31;

/// Stable vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for VertexId {
    fn from(id: u32) -> Self {
        VertexId(id)
    }
}

/// Vertex weight: a strictly positive finite value, or `Unselectable` for
/// vertices that may never enter a cutset.
///
/// `Unselectable` compares greater than every finite weight and absorbs
/// addition, so weight sums and comparisons are total without resorting to
/// floating-point infinities. `Weight::ZERO` exists only as the sum of an
/// empty set; vertex weights themselves are validated to be positive.
#[derive(Debug, Clone, Copy)]
pub enum Weight {
    Finite(f64),
    Unselectable,
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0.0);

    /// Validated constructor for vertex weights: requires a finite value > 0.
    pub fn finite(value: f64) -> Option<Weight> {
        (value.is_finite() && value > 0.0).then_some(Weight::Finite(value))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite_value(&self) -> Option<f64> {
        match self {
            Weight::Finite(v) => Some(*v),
            Weight::Unselectable => None,
        }
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Weight {}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Weight::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.total_cmp(b),
            (Finite(_), Unselectable) => std::cmp::Ordering::Less,
            (Unselectable, Finite(_)) => std::cmp::Ordering::Greater,
            (Unselectable, Unselectable) => std::cmp::Ordering::Equal,
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => Weight::Finite(a + b),
            _ => Weight::Unselectable,
        }
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(v) => v.fmt(f),
            Weight::Unselectable => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("vertex weight must be a positive finite number or unselectable")]
    InvalidWeight,
    #[error("no edge between {0} and {1}")]
    UnknownEdge(VertexId, VertexId),
    #[error("vertex limit exceeded")]
    TooManyVertices,
}

#[derive(Debug, Clone, PartialEq)]
struct VertexState {
    weight: Weight,
    /// Neighbor -> edge multiplicity. A self-loop is stored under the
    /// vertex's own id with its loop count.
    neighbors: BTreeMap<VertexId, u32>,
    /// Cached endpoint count; a self-loop contributes 2.
    degree: u32,
}

/// Undirected multigraph with per-vertex weights.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedMultigraph {
    vertices: BTreeMap<VertexId, VertexState>,
    edge_count: usize,
}

/// Edge counts of a graph partitioned by a feedback vertex set `f`:
/// `remainder_edges` have both endpoints outside `f`, `crossing_edges` have
/// exactly one endpoint in `f`. Edges inside `f` are counted by neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionStats {
    pub remainder_edges: usize,
    pub crossing_edges: usize,
}

impl WeightedMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, weight: Weight) -> Result<(), GraphError> {
        if let Weight::Finite(v) = weight {
            if !(v.is_finite() && v > 0.0) {
                return Err(GraphError::InvalidWeight);
            }
        }
        if self.vertices.len() >= MAX_VERTICES {
            return Err(GraphError::TooManyVertices);
        }
        match self.vertices.entry(id) {
            std::collections::btree_map::Entry::Occupied(_) => {
                Err(GraphError::DuplicateVertex(id))
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(VertexState {
                    weight,
                    neighbors: BTreeMap::new(),
                    degree: 0,
                });
                Ok(())
            }
        }
    }

    /// Adds one edge instance between `u` and `v`; `u == v` adds a self-loop.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.vertices.contains_key(&u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.vertices.contains_key(&v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            let state = self.vertices.get_mut(&u).expect("checked above");
            *state.neighbors.entry(u).or_insert(0) += 1;
            state.degree += 2;
        } else {
            for (a, b) in [(u, v), (v, u)] {
                let state = self.vertices.get_mut(&a).expect("checked above");
                *state.neighbors.entry(b).or_insert(0) += 1;
                state.degree += 1;
            }
        }
        self.edge_count += 1;
        Ok(())
    }

    /// Removes one edge instance between `u` and `v`.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.vertices.contains_key(&u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.vertices.contains_key(&v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if self.edge_multiplicity(u, v) == 0 {
            return Err(GraphError::UnknownEdge(u, v));
        }
        if u == v {
            let state = self.vertices.get_mut(&u).expect("checked above");
            Self::decrement(&mut state.neighbors, u);
            state.degree -= 2;
        } else {
            for (a, b) in [(u, v), (v, u)] {
                let state = self.vertices.get_mut(&a).expect("checked above");
                Self::decrement(&mut state.neighbors, b);
                state.degree -= 1;
            }
        }
        self.edge_count -= 1;
        Ok(())
    }

    fn decrement(neighbors: &mut BTreeMap<VertexId, u32>, key: VertexId) {
        let count = neighbors.get_mut(&key).expect("multiplicity checked");
        *count -= 1;
        if *count == 0 {
            neighbors.remove(&key);
        }
    }

    /// Removes `v` together with all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let state = self
            .vertices
            .remove(&v)
            .ok_or(GraphError::UnknownVertex(v))?;
        for (&u, &mult) in &state.neighbors {
            if u == v {
                self.edge_count -= mult as usize;
                continue;
            }
            let other = self.vertices.get_mut(&u).expect("adjacency is symmetric");
            other.neighbors.remove(&v);
            other.degree -= mult;
            self.edge_count -= mult as usize;
        }
        Ok(())
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Endpoint count at `v`; a self-loop counts twice.
    pub fn degree(&self, v: VertexId) -> Result<u32, GraphError> {
        self.vertices
            .get(&v)
            .map(|s| s.degree)
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn weight(&self, v: VertexId) -> Result<Weight, GraphError> {
        self.vertices
            .get(&v)
            .map(|s| s.weight)
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn self_loops(&self, v: VertexId) -> u32 {
        self.vertices
            .get(&v)
            .and_then(|s| s.neighbors.get(&v))
            .copied()
            .unwrap_or(0)
    }

    pub fn edge_multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.vertices
            .get(&u)
            .and_then(|s| s.neighbors.get(&v))
            .copied()
            .unwrap_or(0)
    }

    /// Vertex ids in ascending order.
    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Weight)> + '_ {
        self.vertices.iter().map(|(&id, s)| (id, s.weight))
    }

    /// Neighbors of `v` with multiplicities, ascending by id. The vertex's
    /// own id appears when it carries self-loops.
    pub fn neighbors(
        &self,
        v: VertexId,
    ) -> Result<impl Iterator<Item = (VertexId, u32)> + '_, GraphError> {
        self.vertices
            .get(&v)
            .map(|s| s.neighbors.iter().map(|(&u, &m)| (u, m)))
            .ok_or(GraphError::UnknownVertex(v))
    }

    /// Each unordered edge once as `(u, v, multiplicity)` with `u <= v`,
    /// ascending lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.vertices.iter().flat_map(|(&u, s)| {
            s.neighbors
                .iter()
                .filter(move |(&v, _)| u <= v)
                .map(move |(&v, &m)| (u, v, m))
        })
    }

    /// Sum of all degrees; equals twice the edge count.
    pub fn total_degree(&self) -> u64 {
        self.vertices.values().map(|s| s.degree as u64).sum()
    }

    /// Sum of the weights of `set`. Missing ids are an error.
    pub fn weight_of(&self, set: &BTreeSet<VertexId>) -> Result<Weight, GraphError> {
        let mut total = Weight::ZERO;
        for &v in set {
            total += self.weight(v)?;
        }
        Ok(total)
    }

    /// True iff deleting `f` (and all incident edges) leaves a forest.
    ///
    /// Any surviving self-loop or repeated connection within a component is a
    /// cycle. Ids in `f` that are not present in the graph are ignored.
    pub fn is_fvs(&self, f: &BTreeSet<VertexId>) -> bool {
        // `kept` is sorted because vertex iteration is ordered by id.
        let kept: Vec<VertexId> = self.vertex_ids().filter(|v| !f.contains(v)).collect();
        let mut dsu = DisjointSets::new(kept.len());
        for (u, v, mult) in self.edges() {
            let (Ok(iu), Ok(iv)) = (kept.binary_search(&u), kept.binary_search(&v)) else {
                continue;
            };
            if iu == iv || mult > 1 || !dsu.union(iu, iv) {
                return false;
            }
        }
        true
    }

    /// Edge counts relative to the partition `(f, V \ f)`.
    pub fn partition_stats(&self, f: &BTreeSet<VertexId>) -> PartitionStats {
        let mut stats = PartitionStats {
            remainder_edges: 0,
            crossing_edges: 0,
        };
        for (u, v, mult) in self.edges() {
            match (f.contains(&u), f.contains(&v)) {
                (false, false) => stats.remainder_edges += mult as usize,
                (true, true) => {}
                _ => stats.crossing_edges += mult as usize,
            }
        }
        stats
    }

    /// Recomputes cached counts from the adjacency and panics on any
    /// mismatch. Exercised by tests after mutation sequences.
    pub fn check_consistency(&self) {
        let mut endpoint_total = 0u64;
        for (&v, state) in &self.vertices {
            let mut degree = 0u32;
            for (&u, &mult) in &state.neighbors {
                assert!(mult > 0, "zero multiplicity stored for {v}-{u}");
                assert!(self.vertices.contains_key(&u), "dangling neighbor {u}");
                if u == v {
                    degree += 2 * mult;
                } else {
                    assert_eq!(
                        self.vertices[&u].neighbors.get(&v),
                        Some(&mult),
                        "asymmetric adjacency between {v} and {u}"
                    );
                    degree += mult;
                }
            }
            assert_eq!(degree, state.degree, "stale degree at {v}");
            endpoint_total += degree as u64;
        }
        assert_eq!(endpoint_total, 2 * self.edge_count as u64);
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(raw: &[u32]) -> BTreeSet<VertexId> {
        raw.iter().map(|&i| VertexId(i)).collect()
    }

    fn triangle() -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for i in 0..3 {
            g.add_vertex(VertexId(i), Weight::Finite(1.0)).unwrap();
        }
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(1), VertexId(2)).unwrap();
        g.add_edge(VertexId(0), VertexId(2)).unwrap();
        g
    }

    /// Three parallel edges 0-1 and three parallel edges 0-2.
    pub(crate) fn star_of_parallels(w_hub: f64, w_left: f64, w_right: f64) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Finite(w_hub)).unwrap();
        g.add_vertex(VertexId(1), Weight::Finite(w_left)).unwrap();
        g.add_vertex(VertexId(2), Weight::Finite(w_right)).unwrap();
        for _ in 0..3 {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
            g.add_edge(VertexId(0), VertexId(2)).unwrap();
        }
        g
    }

    #[test]
    fn snapshots_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<WeightedMultigraph>();
        assert_send_sync::<Weight>();
    }

    #[test]
    fn weight_ordering_and_sums() {
        assert!(Weight::Finite(3.0) < Weight::Unselectable);
        assert!(Weight::Unselectable <= Weight::Unselectable);
        assert_eq!(
            Weight::Unselectable + Weight::Finite(1.0),
            Weight::Unselectable
        );
        assert_eq!(Weight::finite(0.0), None);
        assert_eq!(Weight::finite(-1.0), None);
        assert_eq!(Weight::finite(f64::INFINITY), None);
        assert_eq!(Weight::ZERO + Weight::Finite(2.5), Weight::Finite(2.5));
    }

    #[test]
    fn degree_counts_cycle_vertex() {
        let g = triangle();
        assert_eq!(g.degree(VertexId(0)).unwrap(), 2);
    }

    #[test]
    fn degree_counts_self_loop_twice() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(7), Weight::Finite(1.0)).unwrap();
        g.add_edge(VertexId(7), VertexId(7)).unwrap();
        assert_eq!(g.degree(VertexId(7)).unwrap(), 2);
        assert_eq!(g.self_loops(VertexId(7)), 1);
        assert_eq!(g.edge_count(), 1);
        g.check_consistency();
    }

    #[test]
    fn degree_counts_parallel_edges() {
        let g = star_of_parallels(6.0, 3.0, 3.0);
        assert_eq!(g.degree(VertexId(0)).unwrap(), 6);
        assert_eq!(g.degree(VertexId(1)).unwrap(), 3);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.total_degree(), 12);
    }

    #[test]
    fn degree_unknown_vertex_errors() {
        let g = triangle();
        assert_eq!(
            g.degree(VertexId(9)),
            Err(GraphError::UnknownVertex(VertexId(9)))
        );
    }

    #[test]
    fn fvs_on_triangle() {
        let g = triangle();
        assert!(g.is_fvs(&ids(&[0])));
        assert!(!g.is_fvs(&ids(&[])));
    }

    #[test]
    fn fvs_on_parallel_star() {
        let g = star_of_parallels(6.0, 3.0, 3.0);
        assert!(g.is_fvs(&ids(&[0])));
        assert!(!g.is_fvs(&ids(&[1])));
        assert!(g.is_fvs(&ids(&[1, 2])));
    }

    #[test]
    fn partition_stats_examples() {
        let g = triangle();
        let s = g.partition_stats(&ids(&[0]));
        assert_eq!(s.remainder_edges, 1);
        assert_eq!(s.crossing_edges, 2);

        let star = star_of_parallels(6.0, 3.0, 3.0);
        let s = star.partition_stats(&ids(&[0]));
        assert_eq!(s.remainder_edges, 0);
        assert_eq!(s.crossing_edges, 6);

        let all = star.partition_stats(&ids(&[0, 1, 2]));
        assert_eq!(all.remainder_edges, 0);
        assert_eq!(all.crossing_edges, 0);
    }

    #[test]
    fn remove_vertex_updates_counts() {
        let mut g = star_of_parallels(6.0, 3.0, 3.0);
        g.remove_vertex(VertexId(0)).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree(VertexId(1)).unwrap(), 0);
        g.check_consistency();
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Finite(1.0)).unwrap();
        assert_eq!(
            g.add_vertex(VertexId(0), Weight::Finite(2.0)),
            Err(GraphError::DuplicateVertex(VertexId(0)))
        );
    }
}
