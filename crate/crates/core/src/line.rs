//! Linear-time exact solver for collinear instances.
//!
//! Purple points cut the line into segments. An optimal graph never uses an
//! edge that jumps over a purple point, so each segment is solved on its own:
//! either both sides run a chain across the gap, or the gap gets a purple
//! edge and each color hangs off it with its longest link removed.

use crate::error::Result;
use crate::geometry::collinearity_within;
use crate::graph::{solution_stats, Solution, SolverTag};
use crate::model::{Color, Edge, EdgeSet, Instance};
use crate::scalar::Scalar;

/// Points strictly between two consecutive purple points, or beyond the
/// outermost one when `left` or `right` is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub interior: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentCase {
    /// Red and blue chains both cross the gap.
    Chains,
    /// The gap is bridged by a purple edge.
    PurpleEdge,
    /// Segment outside the purple span, or the whole line when P = ∅.
    Open,
}

#[derive(Clone, Debug)]
pub struct SegmentSolution<T> {
    pub case: SegmentCase,
    pub cost: T,
    pub edges: Vec<(usize, usize)>,
}

/// Splits points sorted along the line into segments at the purple points.
pub fn segments<T: Scalar>(instance: &Instance<T>, sorted: &[usize]) -> Vec<Segment> {
    let mut out = Vec::with_capacity(instance.k() + 1);
    let mut current = Segment { left: None, right: None, interior: Vec::new() };
    for &id in sorted {
        if instance.color(id) == Color::Purple {
            current.right = Some(id);
            let next = Segment { left: Some(id), right: None, interior: Vec::new() };
            out.push(std::mem::replace(&mut current, next));
        } else {
            current.interior.push(id);
        }
    }
    out.push(current);
    out
}

/// Chain through `ids` (in line order), optionally leaving out the longest link.
fn chain(pos: &[f64], ids: &[usize], drop_longest: bool, out: &mut Vec<(usize, usize)>) -> f64 {
    let mut longest = (f64::NEG_INFINITY, usize::MAX);
    let mut total = 0.0;
    for (i, w) in ids.windows(2).enumerate() {
        let gap = (pos[w[1]] - pos[w[0]]).abs();
        total += gap;
        if gap > longest.0 {
            longest = (gap, i);
        }
    }
    let skip = if drop_longest && longest.1 != usize::MAX { longest.1 } else { usize::MAX };
    out.extend(ids.windows(2).enumerate().filter(|&(i, _)| i != skip).map(|(_, w)| (w[0], w[1])));
    if skip == usize::MAX { total } else { total - longest.0 }
}

/// Reusable buffers for [`solve_segment`].
#[derive(Default)]
struct Scratch {
    reds: Vec<usize>,
    blues: Vec<usize>,
    bridged: Vec<(usize, usize)>,
}

fn solve_segment<T: Scalar>(
    instance: &Instance<T>,
    pos: &[f64],
    left: Option<usize>,
    right: Option<usize>,
    interior: &[usize],
    scratch: &mut Scratch,
    edges: &mut Vec<(usize, usize)>,
) -> (SegmentCase, f64) {
    let Scratch { reds, blues, bridged } = scratch;
    for (list, color) in [(&mut *reds, Color::Red), (&mut *blues, Color::Blue)] {
        list.clear();
        list.extend(left);
        list.extend(interior.iter().copied().filter(|&id| instance.color(id) == color));
        list.extend(right);
    }
    let (Some(a), Some(b)) = (left, right) else {
        let cost = chain(pos, reds, false, edges) + chain(pos, blues, false, edges);
        return (SegmentCase::Open, cost);
    };
    let g = (pos[b] - pos[a]).abs();
    let both = reds.len() > 2 && blues.len() > 2;
    bridged.clear();
    bridged.push((a, b));
    let with_edge = g + chain(pos, reds, true, bridged) + chain(pos, blues, true, bridged);
    if both && 2.0 * g < with_edge {
        let cost = chain(pos, reds, false, edges) + chain(pos, blues, false, edges);
        (SegmentCase::Chains, cost)
    } else {
        edges.extend_from_slice(bridged);
        (SegmentCase::PurpleEdge, with_edge)
    }
}

/// Cheapest way to serve one segment; `pos` is the coordinate along the line.
pub fn segment_cost<T: Scalar>(instance: &Instance<T>, pos: &[f64], segment: &Segment) -> SegmentSolution<T> {
    let mut edges = Vec::new();
    let (case, cost) =
        solve_segment(instance, pos, segment.left, segment.right, &segment.interior, &mut Scratch::default(), &mut edges);
    SegmentSolution { case, cost: T::lit(cost), edges }
}

/// Point ids sorted by their coordinate along the fitted line, and the coordinates.
fn line_order<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<(Vec<usize>, Vec<f64>)> {
    let fit = collinearity_within(instance, rtol)?;
    let (ox, oy) = fit.origin;
    let (dx, dy) = fit.direction;
    let pos: Vec<f64> =
        instance.points().iter().map(|p| (p.x.as_f64() - ox) * dx + (p.y.as_f64() - oy) * dy).collect();
    let mut order: Vec<usize> = (0..instance.len()).collect();
    // stable and adaptive: linear on input that is already in line order
    order.sort_by(|&a, &b| pos[a].total_cmp(&pos[b]));
    Ok((order, pos))
}

/// The optimal edges without building a [`Solution`].
pub fn solve_line_edges<T: Scalar>(instance: &Instance<T>) -> Result<Vec<Edge<T>>> {
    solve_line_edges_within(instance, T::SHAPE_RTOL)
}

/// [`solve_line_edges`] accepting points within `rtol` of the fitted line.
pub fn solve_line_edges_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<Vec<Edge<T>>> {
    let (order, pos) = line_order(instance, rtol)?;
    let mut pairs = Vec::with_capacity(instance.len());
    let mut scratch = Scratch::default();
    let mut left = None;
    let mut from = 0;
    for (at, &id) in order.iter().enumerate() {
        if instance.color(id) == Color::Purple {
            solve_segment(instance, &pos, left, Some(id), &order[from..at], &mut scratch, &mut pairs);
            left = Some(id);
            from = at + 1;
        }
    }
    solve_segment(instance, &pos, left, None, &order[from..], &mut scratch, &mut pairs);
    Ok(pairs.into_iter().map(|(u, v)| instance.edge(u, v)).collect())
}

pub fn solve_line<T: Scalar>(instance: &Instance<T>) -> Result<Solution<T>> {
    solve_line_within(instance, T::SHAPE_RTOL)
}

pub fn solve_line_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<Solution<T>> {
    let edges = solve_line_edges_within(instance, rtol)?;
    Ok(solution_stats(instance, EdgeSet::new(edges), SolverTag::Line))
}
