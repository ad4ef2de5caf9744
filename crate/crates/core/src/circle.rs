//! Cubic-time exact solver for points on a circle.
//!
//! Purple points p_0..p_{k-1} in angular order split the circle into arcs.
//! For each ordered pair (i, j) four tables hold the optimum for the points
//! from p_i round to p_j, under a boundary condition saying how p_i and p_j
//! are already joined from outside: on both sides ([`Boundary::Purple`]), on
//! one side only, or not at all ([`Boundary::None`]).

use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::concyclicity_within;
use crate::graph::{side_mst, solution_stats, Solution, SolverTag};
use crate::model::{Color, Edge, EdgeSet, Instance, Side};
use crate::scalar::Scalar;

/// Red and blue points strictly between consecutive purple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
    /// In angular order from `left` to `right`.
    pub interior: Vec<usize>,
}

/// How the two ends of a subproblem are joined outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Purple,
    Red,
    Blue,
    None,
}

impl Boundary {
    pub const ALL: [Boundary; 4] = [Boundary::Purple, Boundary::Red, Boundary::Blue, Boundary::None];

    fn index(self) -> usize {
        self as usize
    }

    /// Whether the ends already count as joined on `side`.
    fn joins(self, side: Side) -> bool {
        matches!((self, side), (Boundary::Purple, _) | (Boundary::Red, Side::Red) | (Boundary::Blue, Side::Blue))
    }

    fn name(self) -> &'static str {
        match self {
            Boundary::Purple => "PC",
            Boundary::Red => "RC",
            Boundary::Blue => "BC",
            Boundary::None => "NC",
        }
    }
}

/// Ids of `arc.left`, the interior points of `color`, and `arc.right`.
fn chain_ids<T: Scalar>(instance: &Instance<T>, arc: &Arc, color: Color) -> Vec<usize> {
    std::iter::once(arc.left)
        .chain(arc.interior.iter().copied().filter(|&id| instance.color(id) == color))
        .chain(std::iter::once(arc.right))
        .collect()
}

/// Edges serving one side of an arc. With the ends joined, the longest link
/// of the chain is left out; otherwise the chain must run end to end, which
/// needs an interior point of that color.
fn side_of_arc<T: Scalar>(
    instance: &Instance<T>,
    arc: &Arc,
    side: Side,
    joined: bool,
    out: Option<&mut Vec<(usize, usize)>>,
) -> T {
    let color = if side == Side::Red { Color::Red } else { Color::Blue };
    let ids = chain_ids(instance, arc, color);
    if !joined && ids.len() == 2 {
        return T::infinity();
    }
    let links: Vec<T> = ids.windows(2).map(|w| instance.dist(w[0], w[1])).collect();
    let total: T = links.iter().copied().sum();
    let mut skip = usize::MAX;
    let mut cost = total;
    if joined {
        let (at, longest) = links.iter().enumerate().fold((0, T::neg_infinity()), |m, (i, &w)| if w > m.1 { (i, w) } else { m });
        skip = at;
        cost = total - longest;
    }
    if let Some(out) = out {
        out.extend(ids.windows(2).enumerate().filter(|&(i, _)| i != skip).map(|(_, w)| (w[0], w[1])));
    }
    cost
}

/// The four boundary-condition optima for one arc, indexed like [`Boundary::ALL`].
/// The direct purple edge is never used here; the recurrence adds it.
pub fn base_arc_costs<T: Scalar>(instance: &Instance<T>, arc: &Arc) -> [T; 4] {
    Boundary::ALL.map(|b| {
        side_of_arc(instance, arc, Side::Red, b.joins(Side::Red), None)
            + side_of_arc(instance, arc, Side::Blue, b.joins(Side::Blue), None)
    })
}

fn arc_edges<T: Scalar>(instance: &Instance<T>, arc: &Arc, boundary: Boundary, out: &mut Vec<(usize, usize)>) {
    for side in Side::BOTH {
        side_of_arc(instance, arc, side, boundary.joins(side), Some(out));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Unset,
    Base,
    /// Purple edge p_i p_h, then PC[i,h] and the same condition on [h,j].
    Edge(usize),
    /// [i,i+1] under the first condition, [i+1,j] under the second.
    Split(Boundary, Boundary),
}

/// Costs and back-pointers for every ordered purple pair.
#[derive(Clone, Debug)]
pub struct DPTables<T> {
    k: usize,
    cost: [Vec<T>; 4],
    choice: [Vec<Choice>; 4],
}

impl<T: Scalar> DPTables<T> {
    fn new(k: usize) -> Self {
        DPTables {
            k,
            cost: std::array::from_fn(|_| vec![T::infinity(); k * k]),
            choice: std::array::from_fn(|_| vec![Choice::Unset; k * k]),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry for the points from p_i round to p_j; zero when i = j.
    pub fn get(&self, boundary: Boundary, i: usize, j: usize) -> T {
        if i == j { T::zero() } else { self.cost[boundary.index()][i * self.k + j] }
    }

    fn offer(&mut self, boundary: Boundary, i: usize, j: usize, cost: T, choice: Choice) {
        let at = i * self.k + j;
        let b = boundary.index();
        if cost < self.cost[b][at] {
            self.cost[b][at] = cost;
            self.choice[b][at] = choice;
        }
    }

    /// One text matrix per table; `inf` marks infeasible entries.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for b in Boundary::ALL {
            writeln!(s, "{}", b.name()).unwrap();
            for i in 0..self.k {
                let row: Vec<String> = (0..self.k)
                    .map(|j| match self.get(b, i, j) {
                        c if c.is_infinite() => "inf".to_string(),
                        c => format!("{:.6}", c.as_f64()),
                    })
                    .collect();
                writeln!(s, "{}", row.join(" ")).unwrap();
            }
        }
        s
    }
}

/// Fills all tables in order of increasing span.
pub fn fill_tables<T: Scalar>(instance: &Instance<T>, arcs: &[Arc]) -> DPTables<T> {
    let k = arcs.len();
    let purple: Vec<usize> = arcs.iter().map(|a| a.left).collect();
    let mut t = DPTables::new(k);
    for span in 1..k {
        for i in 0..k {
            let j = (i + span) % k;
            let next = (i + 1) % k;
            // PC first: the other tables may close the subproblem with the edge p_i p_j on top of it
            let base = if span == 1 { Some(base_arc_costs(instance, &arcs[i])) } else { None };
            for b in Boundary::ALL {
                if let Some(base) = base {
                    t.offer(b, i, j, base[b.index()], Choice::Base);
                } else {
                    for &(first, second) in splits(b) {
                        let c = t.get(first, i, next) + t.get(second, next, j);
                        t.offer(b, i, j, c, Choice::Split(first, second));
                    }
                }
                let last = if b == Boundary::Purple { span - 1 } else { span };
                for step in 1..=last {
                    let h = (i + step) % k;
                    let c = t.get(Boundary::Purple, i, h) + t.get(b, h, j) + instance.dist(purple[i], purple[h]);
                    t.offer(b, i, j, c, Choice::Edge(h));
                }
            }
        }
    }
    t
}

/// Ways to split [i,j] at i+1 when p_i has no purple edge into it.
fn splits(b: Boundary) -> &'static [(Boundary, Boundary)] {
    use Boundary::*;
    match b {
        None => &[(None, None)],
        Red => &[(None, Red), (Red, None)],
        Blue => &[(None, Blue), (Blue, None)],
        Purple => &[(None, Purple), (Purple, None), (Red, Blue), (Blue, Red)],
    }
}

/// Pairings of [0,j] with [j,0] that make the whole circle RBP-spanning.
const FINAL_PAIRS: [(Boundary, Boundary); 4] = [
    (Boundary::Purple, Boundary::None),
    (Boundary::None, Boundary::Purple),
    (Boundary::Red, Boundary::Blue),
    (Boundary::Blue, Boundary::Red),
];

/// Optimal weight with the split point j and the pairing used.
pub fn combine_final<T: Scalar>(tables: &DPTables<T>) -> (T, usize, (Boundary, Boundary)) {
    let mut best = (T::infinity(), 1, FINAL_PAIRS[0]);
    for j in 1..tables.k() {
        for pair in FINAL_PAIRS {
            let c = tables.get(pair.0, 0, j) + tables.get(pair.1, j, 0);
            if c < best.0 {
                best = (c, j, pair);
            }
        }
    }
    best
}

fn reconstruct<T: Scalar>(
    instance: &Instance<T>,
    arcs: &[Arc],
    t: &DPTables<T>,
    b: Boundary,
    i: usize,
    j: usize,
    out: &mut Vec<(usize, usize)>,
) {
    if i == j {
        return;
    }
    let k = t.k;
    match t.choice[b.index()][i * k + j] {
        Choice::Base => arc_edges(instance, &arcs[i], b, out),
        Choice::Edge(h) => {
            out.push((arcs[i].left, arcs[h].left));
            reconstruct(instance, arcs, t, Boundary::Purple, i, h, out);
            reconstruct(instance, arcs, t, b, h, j, out);
        }
        Choice::Split(first, second) => {
            let next = (i + 1) % k;
            reconstruct(instance, arcs, t, first, i, next, out);
            reconstruct(instance, arcs, t, second, next, j, out);
        }
        Choice::Unset => unreachable!("reconstructing an infeasible entry"),
    }
}

/// Certifies concyclicity and cuts the circle into arcs at the purple points.
pub fn arcs<T: Scalar>(instance: &Instance<T>) -> Result<Vec<Arc>> {
    arcs_within(instance, T::SHAPE_RTOL)
}

/// [`arcs`] accepting points within `rtol` (relative to the radius) of the fitted circle.
pub fn arcs_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<Vec<Arc>> {
    let fit = concyclicity_within(instance, rtol)?;
    let (cx, cy) = fit.center;
    let angle: Vec<f64> = instance.points().iter().map(|p| (p.y.as_f64() - cy).atan2(p.x.as_f64() - cx)).collect();
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&a, &b| angle[a].total_cmp(&angle[b]));
    let Some(first) = order.iter().position(|&id| instance.color(id) == Color::Purple) else {
        return Ok(Vec::new());
    };
    order.rotate_left(first);
    let mut out: Vec<Arc> = Vec::with_capacity(instance.k());
    for &id in &order {
        if instance.color(id) == Color::Purple {
            if let Some(last) = out.last_mut() {
                last.right = id;
            }
            out.push(Arc { left: id, right: usize::MAX, interior: Vec::new() });
        } else {
            out.last_mut().expect("starts at a purple point").interior.push(id);
        }
    }
    let p0 = out[0].left;
    out.last_mut().unwrap().right = p0;
    Ok(out)
}

/// Optimal edges, also returning the tables when the DP ran (k ≥ 2).
pub fn solve_circle_with_tables<T: Scalar>(
    instance: &Instance<T>,
    rtol: f64,
) -> Result<(Vec<Edge<T>>, Option<DPTables<T>>)> {
    let arcs = arcs_within(instance, rtol)?;
    if arcs.len() <= 1 {
        // no purple edge exists, so the sides are independent
        let mut edges: Vec<Edge<T>> = Vec::new();
        for side in Side::BOTH {
            edges.extend(side_mst(instance, side).edges.edges());
        }
        return Ok((edges, None));
    }
    let tables = fill_tables(instance, &arcs);
    let (_, j, (first, second)) = combine_final(&tables);
    let mut pairs = Vec::new();
    reconstruct(instance, &arcs, &tables, first, 0, j, &mut pairs);
    reconstruct(instance, &arcs, &tables, second, j, 0, &mut pairs);
    Ok((pairs.into_iter().map(|(u, v)| instance.edge(u, v)).collect(), Some(tables)))
}

pub fn solve_circle<T: Scalar>(instance: &Instance<T>) -> Result<Solution<T>> {
    solve_circle_within(instance, T::SHAPE_RTOL)
}

pub fn solve_circle_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<Solution<T>> {
    let (edges, _) = solve_circle_with_tables(instance, rtol)?;
    Ok(solution_stats(instance, EdgeSet::new(edges), SolverTag::Circle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::solve_exact;
    use crate::geometry::segments_properly_cross;
    use crate::graph::is_rbp_spanning;
    use crate::model::{Color::*, EdgeClass};
    use crate::oracle::{oracle_forest, oracle_subsets};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, SQRT_2};

    fn on_circle(pts: &[(Color, f64)]) -> Instance<f64> {
        Instance::new(pts.iter().map(|&(c, deg): &(Color, f64)| {
            let a = deg.to_radians();
            (c, a.cos(), a.sin())
        }))
        .unwrap()
    }

    fn random_circle(rng: &mut ChaCha8Rng, n: usize, max_purple: usize) -> Instance<f64> {
        let (cx, cy, r) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(0.5..4.0));
        let mut purple = 0;
        Instance::new((0..n).map(|_| {
            let mut color = Color::ALL[rng.gen_range(0..3)];
            if color == Purple {
                if purple == max_purple {
                    color = Blue;
                } else {
                    purple += 1;
                }
            }
            let a: f64 = rng.gen_range(0.0..2.0 * PI);
            (color, cx + r * a.cos(), cy + r * a.sin())
        }))
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn examples() {
        let s = solve_circle(&on_circle(&[(Purple, 0.0), (Purple, 180.0), (Red, 90.0), (Blue, 270.0)])).unwrap();
        assert!(close(s.weight, 2.0 + 2.0 * SQRT_2));
        let s = solve_circle(&on_circle(&[(Purple, 10.0), (Purple, 100.0)])).unwrap();
        assert!(close(s.weight, SQRT_2));
        assert_eq!(s.edges.len(), 1);
        let s = solve_circle(&on_circle(&[(Purple, 45.0), (Purple, 135.0), (Purple, 225.0), (Purple, 315.0)])).unwrap();
        assert!(close(s.weight, 3.0 * SQRT_2));
        assert_eq!(s.edges.len(), 3);
    }

    #[test]
    fn base_entries() {
        // p at 0 and 180 degrees with one red point between them
        let i = on_circle(&[(Purple, 0.0), (Purple, 180.0), (Red, 60.0)]);
        let arc = Arc { left: 0, right: 1, interior: vec![2] };
        let [pc, rc, bc, nc] = base_arc_costs(&i, &arc);
        assert!(close(pc, 1.0));
        assert!(rc.is_infinite() && nc.is_infinite());
        assert!(close(bc, 1.0 + 3f64.sqrt()));

        let empty = Arc { left: 0, right: 1, interior: vec![] };
        let [pc, rc, bc, nc] = base_arc_costs(&i, &empty);
        assert_eq!(pc, 0.0);
        assert!(rc.is_infinite() && bc.is_infinite() && nc.is_infinite());
    }

    #[test]
    fn base_entries_match_subset_oracle() {
        // with k = 2 and one empty arc, the whole answer is NC of the other arc or PC plus the chord
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for m in 0..=5usize {
            for pattern in 0..1u32 << m {
                let mut pts = vec![(Purple, 0.0), (Purple, rng.gen_range(30.0..330.0))];
                let span = pts[1].1;
                for b in 0..m {
                    let c = if pattern >> b & 1 == 1 { Blue } else { Red };
                    pts.push((c, rng.gen_range(0.5..span - 0.5)));
                }
                let i = on_circle(&pts);
                let arcs = arcs(&i).unwrap();
                let inner = arcs.iter().find(|a| !a.interior.is_empty()).cloned();
                let want = oracle_subsets(&i).unwrap().weight;
                let chord = i.dist(0, 1);
                let arc = inner.unwrap_or(Arc { left: 0, right: 1, interior: vec![] });
                let [pc, _, _, nc] = base_arc_costs(&i, &arc);
                assert!(close(nc.min(pc + chord), want), "{pts:?}");
            }
        }
    }

    #[test]
    fn tables_are_ordered_and_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let n = rng.gen_range(2..14);
            let i = random_circle(&mut rng, n, n);
            let arcs = arcs(&i).unwrap();
            if arcs.len() < 2 {
                continue;
            }
            let t = fill_tables(&i, &arcs);
            for a in 0..t.k() {
                for b in (0..t.k()).filter(|&b| b != a) {
                    let [pc, rc, bc, nc] = Boundary::ALL.map(|x| t.get(x, a, b));
                    assert!(pc >= 0.0);
                    assert!(pc <= rc.min(bc) && rc.max(bc) <= nc, "{pc} {rc} {bc} {nc}");
                }
            }
            assert!(combine_final(&t).0.is_finite());
        }
    }

    #[test]
    fn rotation_of_purple_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..20 {
            let i = random_circle(&mut rng, 10, 5);
            let mut a = arcs(&i).unwrap();
            if a.len() < 2 {
                continue;
            }
            let w0 = combine_final(&fill_tables(&i, &a)).0;
            a.rotate_left(1);
            let w1 = combine_final(&fill_tables(&i, &a)).0;
            assert!(close(w0, w1));
        }
    }

    #[test]
    fn rejects_points_off_the_circle() {
        let i = Instance::new([(Purple, 1.0, 0.0), (Red, 0.0, 1.0), (Blue, -1.0, 0.0), (Red, 0.0, -1.5)]).unwrap();
        assert!(matches!(solve_circle(&i), Err(Error::NotConcyclic { .. })));
    }

    #[test]
    fn matches_exact_and_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let n = rng.gen_range(1..10);
            let i = random_circle(&mut rng, n, n);
            let s = solve_circle(&i).unwrap();
            assert!(close(s.weight, solve_exact(&i).weight), "{}", crate::io::serialize_instance(&i));
            assert!(is_rbp_spanning(&i, s.edges.edges()));
        }
        for _ in 0..40 {
            let n = rng.gen_range(8..17);
            let i = random_circle(&mut rng, n, 6);
            let s = solve_circle(&i).unwrap();
            assert!(close(s.weight, oracle_forest(&i).unwrap().weight), "{}", crate::io::serialize_instance(&i));
        }
    }

    #[test]
    fn output_geometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..40 {
            let n = rng.gen_range(4..30);
            let i = random_circle(&mut rng, n, n);
            let s = solve_circle(&i).unwrap();
            let edges = s.edges.edges();
            for e in edges.iter().filter(|e| e.class == EdgeClass::Purple) {
                for f in edges.iter().filter(|f| !f.shares_endpoint(e)) {
                    assert!(!segments_properly_cross(&i, e, f).unwrap());
                }
            }
            for &p in i.purple() {
                let purple_nbrs = edges.iter().filter(|e| e.class == EdgeClass::Purple && e.touches(p)).count();
                assert!(purple_nbrs <= 2);
            }
            // no red or blue edge crosses any chord between purple points
            let purple = i.purple();
            for e in edges.iter().filter(|e| e.class != EdgeClass::Purple) {
                for (a, &p) in purple.iter().enumerate() {
                    for &q in &purple[a + 1..] {
                        let chord = i.edge(p, q);
                        if !chord.shares_endpoint(e) {
                            assert!(!segments_properly_cross(&i, e, &chord).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dump_has_four_matrices() {
        let i = on_circle(&[(Purple, 0.0), (Purple, 120.0), (Purple, 240.0), (Red, 60.0)]);
        let (_, tables) = solve_circle_with_tables(&i, 1e-9).unwrap();
        let dump = tables.unwrap().dump();
        assert_eq!(dump.lines().count(), 4 * 4);
        assert!(dump.starts_with("PC\n"));
    }
}
