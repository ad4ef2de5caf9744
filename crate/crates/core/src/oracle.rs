//! Brute-force optima used to cross-check the solvers.
//!
//! [`oracle_subsets`] tries every subset of allowed edges. [`oracle_forest`]
//! enumerates how the purple points are grouped by shared purple edges: for
//! each set partition of the purple points it prices the cheapest purple
//! forest realizing the grouping (one MST per block) plus the cheapest red
//! and blue completions with the blocks pre-merged. An optimal graph is the
//! union of a red tree and a blue tree sharing only purple edges, so the
//! minimum over groupings is the optimum.

use crate::error::{Error, Result};
use crate::graph::{is_rbp_spanning, kruskal_sorted, solution_stats, Solution, SolverTag};
use crate::model::{allowed_edges, Edge, EdgeClass, EdgeSet, Instance, Side};
use crate::scalar::Scalar;

/// Default cap on purple points for [`oracle_forest`].
pub const FOREST_MAX_PURPLE: usize = 8;
/// Cap on allowed edges for [`oracle_subsets`].
pub const SUBSETS_MAX_EDGES: usize = 22;

/// Calls `visit` with every set partition of `0..k`, as a block label per element.
pub fn for_each_partition(k: usize, mut visit: impl FnMut(&[usize])) {
    // restricted growth strings: label[i] <= 1 + max(label[..i])
    let mut label = vec![0usize; k];
    let mut max_before = vec![0usize; k];
    loop {
        visit(&label);
        let mut i = k;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            if label[i] <= max_before[i] {
                label[i] += 1;
                break;
            }
        }
        for j in i + 1..k {
            label[j] = 0;
            max_before[j] = max_before[j - 1].max(label[j - 1]);
        }
    }
}

/// Exact optimum by enumerating purple groupings; refuses more than
/// [`FOREST_MAX_PURPLE`] purple points.
pub fn oracle_forest<T: Scalar>(instance: &Instance<T>) -> Result<Solution<T>> {
    oracle_forest_with_limit(instance, FOREST_MAX_PURPLE)
}

/// [`oracle_forest`] with an explicit cap on the number of purple points.
pub fn oracle_forest_with_limit<T: Scalar>(instance: &Instance<T>, max_purple: usize) -> Result<Solution<T>> {
    let k = instance.k();
    if k > max_purple {
        return Err(Error::TooLarge { what: "purple point count", actual: k, limit: max_purple });
    }
    let n = instance.len();
    let purple = instance.purple();
    let edges = allowed_edges(instance);
    let purple_edges: Vec<Edge<T>> = edges.iter().copied().filter(|e| e.class == EdgeClass::Purple).collect();
    let red_vertices = instance.side_vertices(Side::Red);
    let blue_vertices = instance.side_vertices(Side::Blue);
    let red_edges: Vec<Edge<T>> = edges.iter().copied().filter(|e| e.class.serves_red()).collect();
    let blue_edges: Vec<Edge<T>> = edges.iter().copied().filter(|e| e.class.serves_blue()).collect();

    let mut block_of = vec![usize::MAX; n];
    let mut best: Option<(T, Vec<Edge<T>>)> = None;
    for_each_partition(k, |labels| {
        for (i, &p) in purple.iter().enumerate() {
            block_of[p] = labels[i];
        }
        // cheapest forest whose trees are exactly the blocks
        let mut forest = Vec::new();
        let mut ds = crate::graph::DisjointSets::new(n);
        for e in &purple_edges {
            if block_of[e.u] == block_of[e.v] && ds.union(e.u, e.v) {
                forest.push(*e);
            }
        }
        let forced: Vec<(usize, usize)> = forest.iter().map(Edge::endpoints).collect();
        let red = kruskal_sorted(n, &red_vertices, &red_edges, &forced).expect("complete red side");
        let blue = kruskal_sorted(n, &blue_vertices, &blue_edges, &forced).expect("complete blue side");
        let total: T = forest.iter().chain(&red).chain(&blue).map(|e| e.length).sum();
        if best.as_ref().is_none_or(|(w, _)| total < *w) {
            forest.extend(red);
            forest.extend(blue);
            best = Some((total, forest));
        }
    });
    let (_, chosen) = best.expect("at least one partition");
    Ok(solution_stats(instance, EdgeSet::new(chosen), SolverTag::OracleForest))
}

/// Exact optimum by trying every subset of the allowed edges; refuses
/// instances with more than [`SUBSETS_MAX_EDGES`] allowed edges.
pub fn oracle_subsets<T: Scalar>(instance: &Instance<T>) -> Result<Solution<T>> {
    let edges = allowed_edges(instance);
    let m = edges.len();
    if m > SUBSETS_MAX_EDGES {
        return Err(Error::TooLarge { what: "allowed edge count", actual: m, limit: SUBSETS_MAX_EDGES });
    }
    let n = instance.len();
    assert!(n <= 64, "an instance with at most 22 allowed edges has few points");
    let side_mask = |side: Side| {
        instance.points().iter().filter(|p| side.contains(p.color)).fold(0u64, |m, p| m | 1 << p.id)
    };
    let red_mask = side_mask(Side::Red);
    let blue_mask = side_mask(Side::Blue);

    // subset weight = low[mask & LOW] + high[mask >> HALF]
    const HALF: usize = 11;
    let table = |offset: usize, bits: usize| -> Vec<T> {
        (0..1usize << bits)
            .map(|mask| (0..bits).filter(|b| mask >> b & 1 == 1).map(|b| edges[offset + b].length).sum())
            .collect()
    };
    let low_bits = m.min(HALF);
    let low = table(0, low_bits);
    let high = table(low_bits, m - low_bits);
    let low_mask = (1usize << low_bits) - 1;

    let connected = |mask: usize, side: Side, vertices: u64| -> bool {
        if vertices.count_ones() <= 1 {
            return true;
        }
        let mut adj = [0u64; 64];
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 && side.admits(e.class) {
                adj[e.u] |= 1 << e.v;
                adj[e.v] |= 1 << e.u;
            }
        }
        let mut seen = vertices & vertices.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen & vertices == vertices
    };

    let full = (1usize << m) - 1;
    let mut best_mask = full;
    let mut best = low[full & low_mask] + high[full >> low_bits];
    for mask in 0..full {
        let w = low[mask & low_mask] + high[mask >> low_bits];
        if w < best && connected(mask, Side::Red, red_mask) && connected(mask, Side::Blue, blue_mask) {
            best = w;
            best_mask = mask;
        }
    }
    let chosen: Vec<Edge<T>> = (0..m).filter(|i| best_mask >> i & 1 == 1).map(|i| edges[i]).collect();
    debug_assert!(is_rbp_spanning(instance, &chosen));
    Ok(solution_stats(instance, EdgeSet::new(chosen), SolverTag::OracleSubsets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::constrained_mst;
    use crate::model::Color::{self, *};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(pts: &[(Color, f64, f64)]) -> Instance<f64> {
        Instance::new(pts.iter().copied()).unwrap()
    }

    fn e1() -> Instance<f64> {
        inst(&[(Purple, 0.0, 0.0), (Purple, 10.0, 0.0), (Red, 4.0, 0.0), (Blue, 6.0, 0.0)])
    }

    /// The literal forest formulation: every acyclic set of purple pairs.
    fn literal_forest_optimum(instance: &Instance<f64>) -> f64 {
        let purple = instance.purple();
        let pairs: Vec<(usize, usize)> = purple
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| purple[i + 1..].iter().map(move |&b| (a, b)))
            .collect();
        let red = instance.side_vertices(Side::Red);
        let blue = instance.side_vertices(Side::Blue);
        let mut best = f64::INFINITY;
        for mask in 0u32..1 << pairs.len() {
            let f: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let mut ds = crate::graph::DisjointSets::new(instance.len());
            if !f.iter().all(|&(a, b)| ds.union(a, b)) {
                continue;
            }
            let wf: f64 = f.iter().map(|&(a, b)| instance.dist(a, b)).sum();
            let wr = constrained_mst(instance, &red, &f).unwrap().weight();
            let wb = constrained_mst(instance, &blue, &f).unwrap().weight();
            best = best.min(wf + wr + wb);
        }
        best
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance<f64> {
        Instance::new((0..n).map(|_| {
            let c = Color::ALL[rng.gen_range(0..3)];
            (c, rng.gen::<f64>(), rng.gen::<f64>())
        }))
        .unwrap()
    }

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (k, &b) in bell.iter().enumerate() {
            let mut count = 0;
            for_each_partition(k, |_| count += 1);
            assert_eq!(count, b, "k = {k}");
        }
    }

    #[test]
    fn e1_examples() {
        let i = e1();
        let f = oracle_forest(&i).unwrap();
        assert_eq!(f.weight, 18.0);
        assert!(f.edges.contains(0, 1));
        assert_eq!(oracle_subsets(&i).unwrap().weight, 18.0);
    }

    #[test]
    fn tiny_examples() {
        let lone = inst(&[(Purple, 1.0, 1.0)]);
        assert_eq!(oracle_forest(&lone).unwrap().weight, 0.0);
        assert_eq!(oracle_subsets(&lone).unwrap().weight, 0.0);

        let three = inst(&[(Purple, 0.0, 0.0), (Purple, 1.0, 0.0), (Purple, 3.0, 0.0)]);
        assert_eq!(oracle_subsets(&three).unwrap().weight, 3.0);
        assert_eq!(oracle_forest(&three).unwrap().weight, 3.0);

        let forced = inst(&[(Red, 0.0, 0.0), (Purple, 2.0, 0.0)]);
        assert_eq!(oracle_subsets(&forced).unwrap().edges.pairs(), vec![(0, 1)]);
        let apart = inst(&[(Red, 0.0, 0.0), (Blue, 2.0, 0.0)]);
        assert!(oracle_subsets(&apart).unwrap().edges.is_empty());
    }

    #[test]
    fn diameter_circle() {
        let i = inst(&[(Purple, 1.0, 0.0), (Purple, -1.0, 0.0), (Red, 0.0, 1.0), (Blue, 0.0, -1.0)]);
        let want = 2.0 + 2.0 * 2f64.sqrt();
        assert!((oracle_forest(&i).unwrap().weight - want).abs() < 1e-12);
        assert!((oracle_subsets(&i).unwrap().weight - want).abs() < 1e-12);
    }

    #[test]
    fn size_guards() {
        let many = Instance::new((0..9).map(|i| (Purple, i as f64, (i * i) as f64))).unwrap();
        assert!(matches!(oracle_forest(&many), Err(Error::TooLarge { limit: 8, .. })));
        assert!(oracle_forest_with_limit(&many, 9).is_ok());
        assert!(matches!(oracle_subsets(&many), Err(Error::TooLarge { limit: 22, .. })));
    }

    #[test]
    fn grouping_matches_literal_forests() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(2..9);
            let i = random_instance(&mut rng, n);
            if i.k() > 5 {
                continue;
            }
            let a = oracle_forest(&i).unwrap().weight;
            let b = literal_forest_optimum(&i);
            assert!((a - b).abs() <= 1e-9 * b.max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn outputs_are_spanning() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let n = rng.gen_range(1..8);
            let i = random_instance(&mut rng, n);
            assert!(is_rbp_spanning(&i, oracle_forest(&i).unwrap().edges.edges()));
            if allowed_edges(&i).len() <= SUBSETS_MAX_EDGES {
                assert!(is_rbp_spanning(&i, oracle_subsets(&i).unwrap().edges.edges()));
            }
        }
    }
}
