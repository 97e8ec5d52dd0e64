//! Randomized vertex selection rules.
//!
//! Both rules restrict the candidate set to finite-weight vertices:
//! unselectable vertices receive probability zero, which can only raise the
//! chance of landing inside a finite-weight cutset.

use rand::Rng;
use thiserror::Error;

use crate::graph::{VertexId, WeightedMultigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// No finite-weight vertex with positive degree exists to pick from.
    #[error("no selectable (finite-weight) vertex with positive degree")]
    NoSelectableVertex,
    /// Some cycle consists entirely of unselectable vertices.
    #[error("no finite-weight feedback vertex set exists")]
    NoFiniteFeedbackVertexSet,
    #[error("invalid parameter: {0}")]
    InvalidParams(&'static str),
}

/// Candidates for degree-proportional selection: every finite-weight vertex
/// with positive degree, paired with its degree, in ascending id order.
pub fn degree_weights(g: &WeightedMultigraph) -> Vec<(VertexId, u64)> {
    g.vertices()
        .filter(|(_, w)| w.is_finite())
        .map(|(v, _)| (v, g.degree(v).expect("v exists") as u64))
        .filter(|&(_, d)| d > 0)
        .collect()
}

/// Candidates for degree-over-weight selection: finite-weight vertices with
/// positive degree, paired with the ratio d(v)/w(v), in ascending id order.
pub fn degree_over_weight_ratios(g: &WeightedMultigraph) -> Vec<(VertexId, f64)> {
    g.vertices()
        .filter_map(|(v, w)| {
            let weight = w.finite_value()?;
            let degree = g.degree(v).expect("v exists");
            (degree > 0).then(|| (v, degree as f64 / weight))
        })
        .collect()
}

/// Picks a finite-weight vertex with probability proportional to its degree.
pub fn pick_degree_proportional<R: Rng + ?Sized>(
    g: &WeightedMultigraph,
    rng: &mut R,
) -> Result<VertexId, SolveError> {
    let candidates = degree_weights(g);
    let total: u64 = candidates.iter().map(|&(_, d)| d).sum();
    if total == 0 {
        return Err(SolveError::NoSelectableVertex);
    }
    let mut target = rng.gen_range(0..total);
    for (v, d) in candidates {
        if target < d {
            return Ok(v);
        }
        target -= d;
    }
    unreachable!("target is below the total degree")
}

/// Picks a finite-weight vertex with probability proportional to the ratio
/// of its degree over its weight.
pub fn pick_degree_over_weight<R: Rng + ?Sized>(
    g: &WeightedMultigraph,
    rng: &mut R,
) -> Result<VertexId, SolveError> {
    let candidates = degree_over_weight_ratios(g);
    let total: f64 = candidates.iter().map(|&(_, r)| r).sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(SolveError::NoSelectableVertex);
    }
    let target = rng.gen_range(0.0..total);
    let mut acc = 0.0;
    let last = candidates.len() - 1;
    for (i, (v, r)) in candidates.into_iter().enumerate() {
        acc += r;
        // The final bucket absorbs any floating-point shortfall.
        if target < acc || i == last {
            return Ok(v);
        }
    }
    unreachable!("loop returns on the last candidate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Weight;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Three parallel edges 0-1 and 0-2 with the given weights.
    fn parallel_star(w0: f64, w1: f64, w2: f64) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for (i, w) in [w0, w1, w2].into_iter().enumerate() {
            g.add_vertex(VertexId(i as u32), Weight::finite(w).unwrap())
                .unwrap();
        }
        for _ in 0..3 {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
            g.add_edge(VertexId(0), VertexId(2)).unwrap();
        }
        g
    }

    #[test]
    fn degree_weights_on_parallel_star() {
        let g = parallel_star(6.0, 3.0, 3.0);
        let weights = degree_weights(&g);
        assert_eq!(
            weights,
            vec![(VertexId(0), 6), (VertexId(1), 3), (VertexId(2), 3)]
        );
    }

    #[test]
    fn ratio_weights_follow_degree_over_weight() {
        let g = parallel_star(6.0, 3.0, 3.0);
        let ratios = degree_over_weight_ratios(&g);
        let total: f64 = ratios.iter().map(|&(_, r)| r).sum();
        let p0 = ratios[0].1 / total;
        assert!((p0 - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_vertex_ratio_split() {
        // Equal degrees, weights 1 and 3: probabilities 3/4 and 1/4.
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Finite(1.0)).unwrap();
        g.add_vertex(VertexId(1), Weight::Finite(3.0)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        let ratios = degree_over_weight_ratios(&g);
        let total: f64 = ratios.iter().map(|&(_, r)| r).sum();
        assert!((ratios[0].1 / total - 0.75).abs() < 1e-12);
        assert!((ratios[1].1 / total - 0.25).abs() < 1e-12);
    }

    #[test]
    fn unit_weights_collapse_ratio_rule_to_degree_rule() {
        let mut g = WeightedMultigraph::new();
        for i in 0..5 {
            g.add_vertex(VertexId(i), Weight::Finite(1.0)).unwrap();
        }
        for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 3)] {
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
        let degrees = degree_weights(&g);
        let ratios = degree_over_weight_ratios(&g);
        assert_eq!(degrees.len(), ratios.len());
        for (&(v, d), &(u, r)) in degrees.iter().zip(&ratios) {
            assert_eq!(v, u);
            assert_eq!(d as f64, r);
        }
    }

    #[test]
    fn unselectable_vertices_are_never_picked() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Unselectable).unwrap();
        g.add_vertex(VertexId(1), Weight::Finite(1.0)).unwrap();
        g.add_vertex(VertexId(2), Weight::Finite(2.0)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(0), VertexId(2)).unwrap();
        g.add_edge(VertexId(1), VertexId(2)).unwrap();
        let mut r = rng(11);
        for _ in 0..2000 {
            assert_ne!(pick_degree_proportional(&g, &mut r).unwrap(), VertexId(0));
            assert_ne!(pick_degree_over_weight(&g, &mut r).unwrap(), VertexId(0));
        }
    }

    #[test]
    fn all_unselectable_errors() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Unselectable).unwrap();
        g.add_vertex(VertexId(1), Weight::Unselectable).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(
            pick_degree_proportional(&g, &mut rng(0)),
            Err(SolveError::NoSelectableVertex)
        );
        assert_eq!(
            pick_degree_over_weight(&g, &mut rng(0)),
            Err(SolveError::NoSelectableVertex)
        );
    }

    #[test]
    fn empirical_split_on_single_edge() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Finite(1.0)).unwrap();
        g.add_vertex(VertexId(1), Weight::Finite(5.0)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        let mut r = rng(97);
        let hits = (0..20_000)
            .filter(|_| pick_degree_proportional(&g, &mut r).unwrap() == VertexId(0))
            .count();
        let rate = hits as f64 / 20_000.0;
        assert!((rate - 0.5).abs() < 0.02, "rate {rate}");
    }
}
