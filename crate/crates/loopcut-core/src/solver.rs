//! Randomized feedback vertex set solvers.
//!
//! The single-shot guesses alternate kernelizing reductions with one random
//! vertex pick until the graph is empty or a size budget runs out. The
//! repeated drivers restart them with independent RNG streams; `wra` is the
//! practical anytime driver that keeps the lightest cutset found so far and
//! re-derives its iteration budget from it.
//!
//! Randomness comes from ChaCha8 seeded with a caller-supplied 64-bit seed;
//! restart number `i` draws from stream `i` of that seed, so serial and
//! fanned-out execution produce identical results.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{VertexId, Weight, WeightedMultigraph};
use crate::reduce::{reduce_to_branchy, reduce_to_rich, Reduction};
use crate::sample::{pick_degree_over_weight, pick_degree_proportional, SolveError};

/// Common knobs for the randomized drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmParams {
    /// Largest cutset size a single guess may return.
    pub target_size: usize,
    /// Restart multiplier; the repeated drivers run `ceil(c * base^j)` trials.
    pub restart_factor: f64,
    /// Upper bound on anytime iterations.
    pub max_iters: u64,
    pub seed: u64,
}

impl AlgorithmParams {
    pub fn validate(&self) -> Result<(), SolveError> {
        if self.target_size < 1 {
            return Err(SolveError::InvalidParams("target size must be >= 1"));
        }
        if !(self.restart_factor >= 1.0) {
            return Err(SolveError::InvalidParams("restart factor must be >= 1"));
        }
        if self.max_iters < 1 {
            return Err(SolveError::InvalidParams("max iterations must be >= 1"));
        }
        Ok(())
    }
}

/// A feedback vertex set together with run metadata.
///
/// The cutset always satisfies `is_fvs` on the input graph and contains no
/// unselectable vertex; `weight` is the (finite) sum of member weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CutsetResult {
    pub cutset: BTreeSet<VertexId>,
    pub weight: Weight,
    pub size: usize,
    pub iterations_used: u64,
    pub seed: u64,
}

impl CutsetResult {
    /// `(weight, lexicographic cutset)` ordering used to keep the best of
    /// several equally valid results.
    fn beats(&self, other: &CutsetResult) -> bool {
        self.weight < other.weight || (self.weight == other.weight && self.cutset < other.cutset)
    }
}

/// One accepted improvement in an anytime run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    /// 1-based guess index at which the cutset was accepted.
    pub iteration: u64,
    pub weight: f64,
    pub size: usize,
}

/// RNG for restart number `restart` of a driver seeded with `seed`.
pub fn restart_rng(seed: u64, restart: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    rng
}

/// `ceil(factor * base^exponent)` saturated to `u64::MAX`.
fn restart_budget(factor: f64, base: f64, exponent: f64) -> u64 {
    (factor * base.powf(exponent)).ceil() as u64
}

fn guess<R, P>(
    g: &WeightedMultigraph,
    size_budget: usize,
    reduce: fn(&WeightedMultigraph) -> Reduction,
    mut pick: P,
    rng: &mut R,
) -> Result<Option<CutsetResult>, SolveError>
where
    R: Rng + ?Sized,
    P: FnMut(&WeightedMultigraph, &mut R) -> Result<VertexId, SolveError>,
{
    let mut cutset = BTreeSet::new();
    let mut weight = Weight::ZERO;
    let mut work = g.clone();
    loop {
        let red = reduce(&work);
        work = red.graph;
        for v in red.forced {
            match g.weight(v).expect("forced vertices come from g") {
                w @ Weight::Finite(_) => weight += w,
                Weight::Unselectable => return Err(SolveError::NoFiniteFeedbackVertexSet),
            }
            cutset.insert(v);
        }
        if work.is_empty() {
            if cutset.len() > size_budget {
                return Ok(None);
            }
            let size = cutset.len();
            return Ok(Some(CutsetResult {
                cutset,
                weight,
                size,
                iterations_used: 1,
                seed: 0,
            }));
        }
        if cutset.len() >= size_budget {
            return Ok(None);
        }
        let v = pick(&work, rng)?;
        weight += work.weight(v).expect("picked vertex exists");
        cutset.insert(v);
        work.remove_vertex(v).expect("picked vertex exists");
    }
}

/// One randomized guess for the unweighted problem: rich reduction plus
/// degree-proportional picks. Returns `None` ("Fail") when the cutset would
/// exceed `size_budget`; forced vertices count against the budget.
pub fn single_guess<R: Rng + ?Sized>(
    g: &WeightedMultigraph,
    size_budget: usize,
    rng: &mut R,
) -> Result<Option<CutsetResult>, SolveError> {
    guess(g, size_budget, reduce_to_rich, pick_degree_proportional, rng)
}

/// One randomized guess for the weighted problem: branchy reduction plus
/// degree-proportional picks (selection ignores weights).
pub fn single_weighted_guess<R: Rng + ?Sized>(
    g: &WeightedMultigraph,
    size_budget: usize,
    rng: &mut R,
) -> Result<Option<CutsetResult>, SolveError> {
    guess(
        g,
        size_budget,
        reduce_to_branchy,
        pick_degree_proportional,
        rng,
    )
}

/// Weighted guess selecting by the ratio of degree over weight. Its output
/// weight is bounded in expectation, but its chance of hitting the true
/// minimum can be made arbitrarily small by adversarial weights.
pub fn single_weighted_guess_ratio<R: Rng + ?Sized>(
    g: &WeightedMultigraph,
    size_budget: usize,
    rng: &mut R,
) -> Result<Option<CutsetResult>, SolveError> {
    guess(
        g,
        size_budget,
        reduce_to_branchy,
        pick_degree_over_weight,
        rng,
    )
}

/// Restarts `single_guess` with growing size budgets `j = 1..=|V|`, running
/// `ceil(c * 4^j)` trials per budget, and returns the first success.
pub fn repeated_guess(
    g: &WeightedMultigraph,
    restart_factor: f64,
    seed: u64,
) -> Result<CutsetResult, SolveError> {
    if !(restart_factor >= 1.0) {
        return Err(SolveError::InvalidParams("restart factor must be >= 1"));
    }
    if g.is_empty() {
        return Ok(empty_result(seed));
    }
    let mut calls: u64 = 0;
    for budget in 1..=g.vertex_count() {
        let trials = restart_budget(restart_factor, 4.0, budget as f64);
        for _ in 0..trials {
            let mut rng = restart_rng(seed, calls);
            calls += 1;
            if let Some(mut found) = single_guess(g, budget, &mut rng)? {
                found.iterations_used = calls;
                found.seed = seed;
                return Ok(found);
            }
        }
    }
    unreachable!("a budget of |V| cannot fail")
}

/// Runs `single_weighted_guess` `ceil(c * 6^j)` times and returns the
/// lightest cutset of size <= `size_budget` found, ties broken by the
/// lexicographically smallest vertex set. `None` means no such cutset was
/// found, i.e. the minimum WFVS most likely has more than `size_budget`
/// vertices.
pub fn repeated_weighted_guess(
    g: &WeightedMultigraph,
    restart_factor: f64,
    size_budget: usize,
    seed: u64,
) -> Result<Option<CutsetResult>, SolveError> {
    if !(restart_factor >= 1.0) {
        return Err(SolveError::InvalidParams("restart factor must be >= 1"));
    }
    if size_budget < 1 {
        return Err(SolveError::InvalidParams("size budget must be >= 1"));
    }
    let trials = restart_budget(restart_factor, 6.0, size_budget as f64);
    let mut best: Option<CutsetResult> = None;
    for restart in 0..trials {
        let mut rng = restart_rng(seed, restart);
        if let Some(found) = single_weighted_guess(g, size_budget, &mut rng)? {
            if best.as_ref().is_none_or(|b| found.beats(b)) {
                best = Some(found);
            }
        }
    }
    Ok(best.map(|mut b| {
        b.iterations_used = trials;
        b.seed = seed;
        b
    }))
}

/// Anytime weighted solver: unlimited-budget weighted guesses, keeping the
/// lightest cutset seen. After each accepted cutset `F` the iteration cap is
/// re-derived as `min(max_iters, ceil(c * 6^w(F)))`. Ties (equal weight)
/// replace the incumbent.
pub fn wra(
    g: &WeightedMultigraph,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<CutsetResult, SolveError> {
    wra_traced(g, restart_factor, max_iters, seed).map(|(result, _)| result)
}

/// [`wra`] plus the sequence of accepted improvements.
pub fn wra_traced(
    g: &WeightedMultigraph,
    restart_factor: f64,
    max_iters: u64,
    seed: u64,
) -> Result<(CutsetResult, Vec<Improvement>), SolveError> {
    if !(restart_factor >= 1.0) {
        return Err(SolveError::InvalidParams("restart factor must be >= 1"));
    }
    if max_iters < 1 {
        return Err(SolveError::InvalidParams("max iterations must be >= 1"));
    }
    let budget = g.vertex_count();
    let mut calls: u64 = 0;
    let run = |calls: &mut u64| -> Result<CutsetResult, SolveError> {
        let mut rng = restart_rng(seed, *calls);
        *calls += 1;
        let found = single_weighted_guess(g, budget, &mut rng)?;
        Ok(found.expect("a budget of |V| cannot fail"))
    };

    let mut best = run(&mut calls)?;
    let mut trace = vec![improvement_of(&best, calls)];
    let mut cap = iteration_cap(restart_factor, &best.weight, max_iters);
    let mut i: u64 = 1;
    while i <= cap {
        let candidate = run(&mut calls)?;
        if candidate.weight <= best.weight {
            best = candidate;
            cap = iteration_cap(restart_factor, &best.weight, max_iters);
            trace.push(improvement_of(&best, calls));
        }
        i += 1;
    }
    best.iterations_used = calls;
    best.seed = seed;
    Ok((best, trace))
}

fn improvement_of(result: &CutsetResult, calls: u64) -> Improvement {
    Improvement {
        iteration: calls,
        weight: result.weight.finite_value().expect("cutset weight is finite"),
        size: result.size,
    }
}

fn iteration_cap(restart_factor: f64, weight: &Weight, max_iters: u64) -> u64 {
    let w = weight.finite_value().expect("cutset weight is finite");
    restart_budget(restart_factor, 6.0, w).min(max_iters)
}

fn empty_result(seed: u64) -> CutsetResult {
    CutsetResult {
        cutset: BTreeSet::new(),
        weight: Weight::ZERO,
        size: 0,
        iterations_used: 0,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: u32, edges: &[(u32, u32)]) -> WeightedMultigraph {
        weighted_graph(&vec![1.0; n as usize], edges)
    }

    fn weighted_graph(weights: &[f64], edges: &[(u32, u32)]) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for (i, &w) in weights.iter().enumerate() {
            g.add_vertex(VertexId(i as u32), Weight::finite(w).unwrap())
                .unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
        g
    }

    /// Three parallel edges 0-1 and three parallel edges 0-2.
    fn parallel_star(w0: f64, w1: f64, w2: f64) -> WeightedMultigraph {
        let mut g = weighted_graph(&[w0, w1, w2], &[]);
        for _ in 0..3 {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
            g.add_edge(VertexId(0), VertexId(2)).unwrap();
        }
        g
    }

    #[test]
    fn forest_succeeds_with_empty_cutset() {
        let g = unit_graph(4, &[(0, 1), (1, 2), (1, 3)]);
        let r = single_guess(&g, 1, &mut restart_rng(1, 0)).unwrap().unwrap();
        assert!(r.cutset.is_empty());
        assert_eq!(r.weight, Weight::ZERO);
    }

    #[test]
    fn triangle_never_fails_at_budget_one() {
        let g = unit_graph(3, &[(0, 1), (1, 2), (0, 2)]);
        for s in 0..200 {
            let r = single_guess(&g, 1, &mut restart_rng(7, s)).unwrap().unwrap();
            assert_eq!(r.size, 1);
            assert!(g.is_fvs(&r.cutset));
        }
    }

    #[test]
    fn k4_always_solved_with_two_vertices() {
        let g = unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for s in 0..10_000 {
            let r = single_guess(&g, 2, &mut restart_rng(3, s)).unwrap().unwrap();
            assert_eq!(r.size, 2);
            assert!(g.is_fvs(&r.cutset));
        }
    }

    #[test]
    fn weighted_guess_solves_cycle_by_reduction_alone() {
        let g = weighted_graph(&[5.0, 1.0, 5.0], &[(0, 1), (1, 2), (0, 2)]);
        for op in [single_weighted_guess, single_weighted_guess_ratio] {
            let r = op(&g, 1, &mut restart_rng(0, 0)).unwrap().unwrap();
            assert_eq!(r.cutset, [VertexId(1)].into_iter().collect());
            assert_eq!(r.weight, Weight::Finite(1.0));
        }
    }

    #[test]
    fn weighted_guess_on_parallel_star_wins_half_the_time() {
        let g = parallel_star(6.0, 3.0, 3.0);
        let trials = 10_000;
        let mut hits = 0;
        for s in 0..trials {
            if let Some(r) = single_weighted_guess(&g, 1, &mut restart_rng(5, s)).unwrap() {
                assert_eq!(r.cutset, [VertexId(0)].into_iter().collect());
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        assert!((rate - 0.5).abs() < 0.02, "success rate {rate}");
    }

    #[test]
    fn ratio_guess_on_parallel_star_wins_a_third_of_the_time() {
        let g = parallel_star(6.0, 3.0, 3.0);
        let trials = 10_000;
        let mut hits = 0;
        for s in 0..trials {
            if single_weighted_guess_ratio(&g, 1, &mut restart_rng(6, s))
                .unwrap()
                .is_some()
            {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        assert!((rate - 1.0 / 3.0).abs() < 0.02, "success rate {rate}");
    }

    #[test]
    fn repeated_guess_examples() {
        let forest = unit_graph(3, &[(0, 1), (1, 2)]);
        let r = repeated_guess(&forest, 1.0, 9).unwrap();
        assert!(r.cutset.is_empty());
        assert_eq!(r.iterations_used, 1);

        let two_triangles = unit_graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let r = repeated_guess(&two_triangles, 1.0, 9).unwrap();
        assert_eq!(r.size, 2);
        assert!(two_triangles.is_fvs(&r.cutset));

        let k4 = unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let r = repeated_guess(&k4, 1.0, 9).unwrap();
        assert_eq!(r.size, 2);
    }

    #[test]
    fn repeated_weighted_guess_finds_hub() {
        // Hub weight 6 vs rim weights 3 and 6: {hub} at weight 6 beats
        // {1, 2} at weight 9, and only hub picks succeed at budget 1.
        let g = parallel_star(6.0, 3.0, 6.0);
        let r = repeated_weighted_guess(&g, 2.0, 1, 13).unwrap().unwrap();
        assert_eq!(r.cutset, [VertexId(0)].into_iter().collect());
        assert_eq!(r.weight, Weight::Finite(6.0));
        assert_eq!(r.iterations_used, 12);
    }

    #[test]
    fn repeated_weighted_guess_reports_too_large() {
        let two_triangles = unit_graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(repeated_weighted_guess(&two_triangles, 1.0, 1, 21).unwrap(), None);

        let forest = unit_graph(4, &[(0, 1), (2, 3)]);
        let r = repeated_weighted_guess(&forest, 1.0, 1, 21).unwrap().unwrap();
        assert!(r.cutset.is_empty());
    }

    #[test]
    fn wra_on_forest_uses_minimal_cap() {
        let forest = unit_graph(5, &[(0, 1), (2, 3)]);
        let (r, trace) = wra_traced(&forest, 1.0, 300, 17).unwrap();
        assert!(r.cutset.is_empty());
        assert_eq!(r.weight, Weight::ZERO);
        // cap = min(300, ceil(1 * 6^0)) = 1, plus the initial guess.
        assert_eq!(r.iterations_used, 2);
        assert_eq!(trace.len(), 2);
    }

    #[test]
    fn wra_finds_hub_reliably() {
        let g = parallel_star(6.0, 3.0, 6.0);
        let mut hits = 0;
        for seed in 0..100 {
            let r = wra(&g, 1.0, 300, seed).unwrap();
            if r.cutset == [VertexId(0)].into_iter().collect() {
                hits += 1;
            }
        }
        assert!(hits >= 99, "hub found in only {hits}/100 runs");
    }

    #[test]
    fn wra_accepted_weights_never_increase() {
        let g = weighted_graph(
            &[4.0, 2.0, 7.0, 1.0, 3.0, 5.0],
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2), (0, 4), (1, 5)],
        );
        for seed in 0..50 {
            let (_, trace) = wra_traced(&g, 1.0, 200, seed).unwrap();
            for pair in trace.windows(2) {
                assert!(pair[1].weight <= pair[0].weight);
                assert!(pair[1].iteration > pair[0].iteration);
            }
        }
    }

    #[test]
    fn identical_seed_gives_identical_result() {
        let g = weighted_graph(
            &[4.0, 2.0, 7.0, 1.0, 3.0],
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 0)],
        );
        let a = wra(&g, 1.0, 120, 77).unwrap();
        let b = wra(&g, 1.0, 120, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn all_unselectable_cycle_is_an_error() {
        let mut g = WeightedMultigraph::new();
        g.add_vertex(VertexId(0), Weight::Unselectable).unwrap();
        g.add_vertex(VertexId(1), Weight::Unselectable).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(matches!(
            wra(&g, 1.0, 10, 0),
            Err(SolveError::NoFiniteFeedbackVertexSet)
        ));
    }
}
