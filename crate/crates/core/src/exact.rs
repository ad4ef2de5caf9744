//! Exact minimum RBP spanning graphs by weighted matroid intersection.
//!
//! A set X is RBP-spanning iff E − X is independent in the dual graphic
//! matroid of both sides. Starting from X = E, each step removes one edge net
//! along a cheapest alternating exchange sequence, which keeps X of minimum
//! weight for its cardinality. The answer is the lightest X seen.

use crate::graph::{is_rbp_spanning, solution_stats, DisjointSets, Solution, SolverTag};
use crate::model::{allowed_edges, Edge, EdgeSet, Instance, Side};
use crate::scalar::Scalar;

/// Edge subset of the allowed edges, tracked by index into the ground set.
#[derive(Clone, Debug)]
pub struct CandidateEdgeSet<'a, T> {
    instance: &'a Instance<T>,
    ground: &'a [Edge<T>],
    member: Vec<bool>,
    len: usize,
    weight: T,
}

impl<'a, T: Scalar> CandidateEdgeSet<'a, T> {
    /// X = E.
    pub fn full(instance: &'a Instance<T>, ground: &'a [Edge<T>]) -> Self {
        CandidateEdgeSet {
            instance,
            ground,
            member: vec![true; ground.len()],
            len: ground.len(),
            weight: ground.iter().map(|e| e.length).sum(),
        }
    }

    pub fn ground(&self) -> &'a [Edge<T>] {
        self.ground
    }

    pub fn contains(&self, index: usize) -> bool {
        self.member[index]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    pub fn edges(&self) -> Vec<Edge<T>> {
        self.ground.iter().zip(&self.member).filter(|(_, &m)| m).map(|(e, _)| *e).collect()
    }

    /// X ← X Δ sequence.
    pub fn apply(&mut self, sequence: &ExchangeSequence<T>) {
        for (pos, &i) in sequence.edges.iter().enumerate() {
            let removing = pos % 2 == 0;
            assert_eq!(self.member[i], removing, "sequence does not alternate over X");
            self.member[i] = !removing;
            if removing {
                self.len -= 1;
                self.weight -= self.ground[i].length;
            } else {
                self.len += 1;
                self.weight += self.ground[i].length;
            }
        }
        // keep the cached weight free of accumulated drift
        self.weight = self.ground.iter().zip(&self.member).filter(|(_, &m)| m).map(|(e, _)| e.length).sum();
    }
}

/// For each member edge, whether dropping it disconnects one side, and if
/// so the component labels of what remains.
struct SideCuts {
    cut: Vec<Option<Vec<usize>>>,
}

impl SideCuts {
    fn new<T: Scalar>(x: &CandidateEdgeSet<'_, T>, side: Side) -> Self {
        let n = x.instance.len();
        let vertices = x.instance.side_vertices(side);
        let on_side: Vec<usize> =
            (0..x.ground.len()).filter(|&i| x.member[i] && side.admits(x.ground[i].class)).collect();
        let mut cut = vec![None; x.ground.len()];
        for &skip in &on_side {
            let mut ds = DisjointSets::new(n);
            for &i in &on_side {
                if i != skip {
                    ds.union(x.ground[i].u, x.ground[i].v);
                }
            }
            let root = ds.find(vertices[0]);
            if vertices.iter().any(|&v| ds.find(v) != root) {
                cut[skip] = Some((0..n).map(|v| ds.find(v)).collect());
            }
        }
        SideCuts { cut }
    }

    /// X − e keeps the side connected.
    fn removable(&self, e: usize) -> bool {
        self.cut[e].is_none()
    }

    /// X − e + f keeps the side connected.
    fn swappable<T: Scalar>(&self, side: Side, e: usize, f: &Edge<T>) -> bool {
        match &self.cut[e] {
            None => true,
            Some(label) => side.admits(f.class) && label[f.u] != label[f.v],
        }
    }
}

/// Auxiliary digraph over the ground edges plus source and sink.
#[derive(Clone, Debug)]
pub struct ExchangeGraph<T> {
    /// Out-arcs per node as (target, weight). Nodes `0..m` are ground
    /// edges, then [`Self::source`] and [`Self::sink`].
    pub arcs: Vec<Vec<(usize, T)>>,
    pub source: usize,
    pub sink: usize,
}

impl<T> ExchangeGraph<T> {
    pub fn node_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }
}

pub fn build_exchange_graph<T: Scalar>(x: &CandidateEdgeSet<'_, T>) -> ExchangeGraph<T> {
    let m = x.ground.len();
    let (source, sink) = (m, m + 1);
    let red = SideCuts::new(x, Side::Red);
    let blue = SideCuts::new(x, Side::Blue);
    let mut arcs = vec![Vec::new(); m + 2];
    let inside: Vec<usize> = (0..m).filter(|&i| x.member[i]).collect();
    let outside: Vec<usize> = (0..m).filter(|&i| !x.member[i]).collect();
    for &e in &inside {
        if blue.removable(e) {
            arcs[source].push((e, -x.ground[e].length));
        }
        for &f in &outside {
            if red.swappable(Side::Red, e, &x.ground[f]) {
                arcs[e].push((f, x.ground[f].length));
            }
        }
        if red.removable(e) {
            arcs[e].push((sink, T::zero()));
        }
    }
    for &f in &outside {
        for &e in &inside {
            if blue.swappable(Side::Blue, e, &x.ground[f]) {
                arcs[f].push((e, -x.ground[e].length));
            }
        }
    }
    ExchangeGraph { arcs, source, sink }
}

/// Alternating sequence of ground-edge indices; even positions leave X.
#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeSequence<T> {
    pub edges: Vec<usize>,
    pub cost: T,
}

impl<T> ExchangeSequence<T> {
    pub fn hops(&self) -> usize {
        self.edges.len()
    }
}

/// Cheapest source→sink path, fewest hops among the cheapest.
pub fn find_min_exchange_sequence<T: Scalar>(x: &CandidateEdgeSet<'_, T>) -> Option<ExchangeSequence<T>> {
    let graph = build_exchange_graph(x);
    let nodes = graph.node_count();
    let scale: T = x.ground.iter().map(|e| e.length).sum();
    let tol = T::lit(T::TIE_TOL) * (scale + T::one());
    let better = |(c1, h1): (T, usize), (c2, h2): (T, usize)| c1 < c2 - tol || (c1 <= c2 + tol && h1 < h2);

    let mut label: Vec<Option<(T, usize)>> = vec![None; nodes];
    let mut pred = vec![usize::MAX; nodes];
    label[graph.source] = Some((T::zero(), 0));
    let order: Vec<usize> = std::iter::once(graph.source).chain(0..nodes - 2).collect();
    for _ in 0..nodes {
        let mut changed = false;
        for &u in &order {
            let Some((cu, hu)) = label[u] else { continue };
            for &(v, w) in &graph.arcs[u] {
                let cand = (cu + w, hu + 1);
                if label[v].is_none_or(|cur| better(cand, cur)) {
                    label[v] = Some(cand);
                    pred[v] = u;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let (cost, _) = label[graph.sink]?;
    let mut edges = Vec::new();
    let mut v = pred[graph.sink];
    while v != graph.source {
        assert!(edges.len() <= nodes, "predecessor chain has a cycle");
        edges.push(v);
        v = pred[v];
    }
    edges.reverse();
    Some(ExchangeSequence { edges, cost })
}

/// Trace of one exact run: the weight of each visited X_i by cardinality.
#[derive(Clone, Debug)]
pub struct ExactRun<T> {
    pub solution: Solution<T>,
    /// (|X_i|, w(X_i)) from |E| downwards.
    pub weights: Vec<(usize, T)>,
}

pub fn solve_exact<T: Scalar>(instance: &Instance<T>) -> Solution<T> {
    solve_exact_traced(instance).solution
}

pub fn solve_exact_traced<T: Scalar>(instance: &Instance<T>) -> ExactRun<T> {
    let ground = allowed_edges(instance);
    let mut x = CandidateEdgeSet::full(instance, &ground);
    let mut best = (x.weight(), x.edges());
    let mut weights = vec![(x.len(), x.weight())];
    // without purple points the optimum has only n − 2 edges, so run until no exchange remains
    while let Some(sequence) = find_min_exchange_sequence(&x) {
        x.apply(&sequence);
        debug_assert!(is_rbp_spanning(instance, &x.edges()));
        weights.push((x.len(), x.weight()));
        if x.weight() < best.0 {
            best = (x.weight(), x.edges());
        }
    }
    ExactRun { solution: solution_stats(instance, EdgeSet::new(best.1), SolverTag::Exact), weights }
}
