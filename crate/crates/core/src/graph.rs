//! Union-find, spanning trees, RBP validity and solution statistics.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::points_properly_cross;
use crate::model::{Edge, EdgeClass, EdgeSet, Instance, Side};
use crate::scalar::Scalar;

/// Disjoint sets over `0..n` with path compression and union by rank.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), rank: vec![0; n], sets: n }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.sets -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Number of sets over the whole ground set `0..n`.
    pub fn count(&self) -> usize {
        self.sets
    }
}

/// A minimum spanning tree over a vertex subset.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree<T> {
    pub vertices: Vec<usize>,
    pub edges: EdgeSet<T>,
}

/// Kruskal over `sorted` (already in global edge order), restricted to edges
/// with both ends in `vertices`, after pre-merging every `forced` pair.
///
/// Returns the chosen edges in selection order.
pub(crate) fn kruskal_sorted<T: Scalar>(
    n: usize,
    vertices: &[usize],
    sorted: &[Edge<T>],
    forced: &[(usize, usize)],
) -> Result<Vec<Edge<T>>> {
    let mut member = vec![false; n];
    for &v in vertices {
        member[v] = true;
    }
    let mut ds = DisjointSets::new(n);
    let mut components = vertices.len();
    for &(a, b) in forced {
        if ds.union(a, b) {
            components -= 1;
        }
    }
    let mut chosen = Vec::with_capacity(components.saturating_sub(1));
    for e in sorted {
        if components <= 1 {
            break;
        }
        if member[e.u] && member[e.v] && ds.union(e.u, e.v) {
            components -= 1;
            chosen.push(*e);
        }
    }
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(chosen)
}

fn pairs_within<T: Scalar>(instance: &Instance<T>, vertices: &[usize], keep: impl Fn(&Edge<T>) -> bool) -> Vec<Edge<T>> {
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            let e = instance.edge(u, v);
            if keep(&e) {
                edges.push(e);
            }
        }
    }
    edges.sort_by(Edge::order);
    edges
}

/// Minimum spanning tree of `vertices` using only edges accepted by `filter`.
///
/// Ties are broken by the global edge order. An empty or singleton vertex set
/// yields an empty tree.
pub fn kruskal_mst<T, F>(instance: &Instance<T>, vertices: &[usize], filter: F) -> Result<SpanningTree<T>>
where
    T: Scalar,
    F: Fn(&Edge<T>) -> bool,
{
    let edges = pairs_within(instance, vertices, filter);
    let chosen = kruskal_sorted(instance.len(), vertices, &edges, &[])?;
    Ok(SpanningTree { vertices: vertices.to_vec(), edges: EdgeSet::new(chosen) })
}

/// Euclidean MST of one side of the instance (red+purple or blue+purple).
pub fn side_mst<T: Scalar>(instance: &Instance<T>, side: Side) -> SpanningTree<T> {
    let vertices = instance.side_vertices(side);
    kruskal_mst(instance, &vertices, |e| side.admits(e.class)).expect("complete side graph is connected")
}

/// Cheapest edges connecting `vertices` when every `forced` pair is already
/// joined at no cost. Any allowed edge inside `vertices` may be used; the
/// forced pairs themselves never appear in the result.
pub fn constrained_mst<T: Scalar>(
    instance: &Instance<T>,
    vertices: &[usize],
    forced: &[(usize, usize)],
) -> Result<EdgeSet<T>> {
    let edges = pairs_within(instance, vertices, |e| e.class != EdgeClass::Invalid);
    let chosen = kruskal_sorted(instance.len(), vertices, &edges, forced)?;
    Ok(EdgeSet::new(chosen))
}

/// Number of connected pieces of `side` under `edges`. Zero for an empty side.
pub fn side_components<T: Scalar>(instance: &Instance<T>, edges: &[Edge<T>], side: Side) -> usize {
    let mut ds = DisjointSets::new(instance.len());
    let members = instance.points().iter().filter(|p| side.contains(p.color)).count();
    let mut pieces = members;
    for e in edges {
        if side.admits(e.class) && ds.union(e.u, e.v) {
            pieces -= 1;
        }
    }
    pieces
}

/// Both the red+purple and the blue+purple subgraphs are connected.
pub fn is_rbp_spanning<T: Scalar>(instance: &Instance<T>, edges: &[Edge<T>]) -> bool {
    Side::BOTH.iter().all(|&s| side_components(instance, edges, s) <= 1)
}

/// Which algorithm produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverTag {
    Exact,
    Line,
    Circle,
    ApproxUnion,
    ApproxA,
    OracleForest,
    OracleSubsets,
    /// Built by hand or by a generator rather than by a solver.
    Constructed,
}

impl SolverTag {
    pub fn name(self) -> &'static str {
        match self {
            SolverTag::Exact => "exact",
            SolverTag::Line => "line",
            SolverTag::Circle => "circle",
            SolverTag::ApproxUnion => "approx-union",
            SolverTag::ApproxA => "approx-a",
            SolverTag::OracleForest => "oracle-forest",
            SolverTag::OracleSubsets => "oracle-subsets",
            SolverTag::Constructed => "constructed",
        }
    }

    /// The solver returns a minimum RBP spanning graph.
    pub fn is_optimal(self) -> bool {
        !matches!(self, SolverTag::ApproxUnion | SolverTag::ApproxA | SolverTag::Constructed)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub red: usize,
    pub blue: usize,
    pub purple: usize,
}

/// An edge set together with its statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub edges: EdgeSet<T>,
    pub weight: T,
    pub counts: ClassCounts,
    pub max_degree: usize,
    /// Number of unordered pairs of purple edges that properly cross.
    pub purple_crossings: usize,
    /// For each edge (in `edges` order), how many purple edges cross it.
    pub purple_crossings_per_edge: Vec<usize>,
    pub solver: SolverTag,
}

impl<T: Scalar> Solution<T> {
    /// Purple crossing count of the edge `(u, v)`, if present.
    pub fn crossings_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .edges()
            .iter()
            .position(|e| (e.u, e.v) == key)
            .map(|i| self.purple_crossings_per_edge[i])
    }

    /// Plain `key value` statistics block, one pair per line.
    pub fn stats_block(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "weight {:?}", self.weight);
        let _ = writeln!(s, "red_edges {}", self.counts.red);
        let _ = writeln!(s, "blue_edges {}", self.counts.blue);
        let _ = writeln!(s, "purple_edges {}", self.counts.purple);
        let _ = writeln!(s, "max_degree {}", self.max_degree);
        let _ = writeln!(s, "purple_crossings {}", self.purple_crossings);
        let _ = writeln!(s, "solver {}", self.solver.name());
        s
    }
}

/// Computes weight, class counts, degrees and purple crossing statistics.
pub fn solution_stats<T: Scalar>(instance: &Instance<T>, edges: EdgeSet<T>, solver: SolverTag) -> Solution<T> {
    let mut counts = ClassCounts::default();
    let mut degree = vec![0usize; instance.len()];
    for e in edges.edges() {
        match e.class {
            EdgeClass::Red => counts.red += 1,
            EdgeClass::Blue => counts.blue += 1,
            EdgeClass::Purple => counts.purple += 1,
            EdgeClass::Invalid => {}
        }
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    let purple: Vec<usize> = (0..edges.len()).filter(|&i| edges.edges()[i].class == EdgeClass::Purple).collect();
    let mut per_edge = vec![0usize; edges.len()];
    let mut purple_crossings = 0;
    let all = edges.edges();
    for &pi in &purple {
        let p = &all[pi];
        for (j, e) in all.iter().enumerate() {
            if j == pi || e.shares_endpoint(p) {
                continue;
            }
            let pt = |id| instance.point(id);
            if points_properly_cross(pt(p.u), pt(p.v), pt(e.u), pt(e.v)) {
                per_edge[j] += 1;
                if e.class == EdgeClass::Purple && j > pi {
                    purple_crossings += 1;
                }
            }
        }
    }
    Solution {
        weight: edges.weight(),
        edges,
        counts,
        max_degree: degree.into_iter().max().unwrap_or(0),
        purple_crossings,
        purple_crossings_per_edge: per_edge,
        solver,
    }
}

/// Every properly crossing pair of edges, as index pairs into `edges`.
pub fn crossing_pairs<T: Scalar>(instance: &Instance<T>, edges: &[Edge<T>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (&edges[i], &edges[j]);
            if a.shares_endpoint(b) {
                continue;
            }
            let pt = |id| instance.point(id);
            if points_properly_cross(pt(a.u), pt(a.v), pt(b.u), pt(b.v)) {
                out.push((i, j));
            }
        }
    }
    out
}
