//! Colored point sets, edges and edge sets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{cmp, Scalar};

/// Set membership of a point. The derived order is used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
    Purple,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Blue, Color::Purple];

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Purple => 'P',
        }
    }

    pub fn from_letter(c: &str) -> Option<Color> {
        match c {
            "R" => Some(Color::Red),
            "B" => Some(Color::Blue),
            "P" => Some(Color::Purple),
            _ => None,
        }
    }

    /// Member of the red set (red or purple).
    pub fn on_red_side(self) -> bool {
        self != Color::Blue
    }

    /// Member of the blue set (blue or purple).
    pub fn on_blue_side(self) -> bool {
        self != Color::Red
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Purple => "purple",
        };
        f.write_str(name)
    }
}

/// Color class of an edge, determined by its endpoint colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    Red,
    Blue,
    Purple,
    /// Joins a red point to a blue point; never part of a solution.
    Invalid,
}

impl EdgeClass {
    pub fn of(a: Color, b: Color) -> EdgeClass {
        use Color::*;
        match (a, b) {
            (Purple, Purple) => EdgeClass::Purple,
            (Red, Blue) | (Blue, Red) => EdgeClass::Invalid,
            (Red, _) | (_, Red) => EdgeClass::Red,
            (Blue, _) | (_, Blue) => EdgeClass::Blue,
        }
    }

    /// Counts toward connectivity of the red set.
    pub fn serves_red(self) -> bool {
        matches!(self, EdgeClass::Red | EdgeClass::Purple)
    }

    /// Counts toward connectivity of the blue set.
    pub fn serves_blue(self) -> bool {
        matches!(self, EdgeClass::Blue | EdgeClass::Purple)
    }
}

/// One of the two connectivity requirements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Red and purple points, joined by red and purple edges.
    Red,
    /// Blue and purple points, joined by blue and purple edges.
    Blue,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Red, Side::Blue];

    pub fn contains(self, c: Color) -> bool {
        match self {
            Side::Red => c.on_red_side(),
            Side::Blue => c.on_blue_side(),
        }
    }

    pub fn admits(self, class: EdgeClass) -> bool {
        match self {
            Side::Red => class.serves_red(),
            Side::Blue => class.serves_blue(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub id: usize,
    pub color: Color,
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn dist(&self, other: &Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Immutable colored point set. Ids are positions in `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    points: Vec<Point<T>>,
    red: Vec<usize>,
    blue: Vec<usize>,
    purple: Vec<usize>,
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance, rejecting non-finite coordinates and coincident points.
    pub fn new<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Color, T, T)>,
    {
        let mut pts = Vec::new();
        let mut seen: HashMap<(u64, u64), usize> = HashMap::new();
        for (id, (color, x, y)) in points.into_iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite);
            }
            // adding zero folds -0.0 into 0.0
            let key = ((x.as_f64() + 0.0).to_bits(), (y.as_f64() + 0.0).to_bits());
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicatePoint { at: id, first });
            }
            seen.insert(key, id);
            pts.push(Point { id, color, x, y });
        }
        if pts.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self::from_points_unchecked(pts))
    }

    fn from_points_unchecked(points: Vec<Point<T>>) -> Self {
        let ids_of = |c: Color| points.iter().filter(|p| p.color == c).map(|p| p.id).collect();
        let red = ids_of(Color::Red);
        let blue = ids_of(Color::Blue);
        let purple = ids_of(Color::Purple);
        Instance { points, red, blue, purple }
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point<T> {
        &self.points[id]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn red(&self) -> &[usize] {
        &self.red
    }

    pub fn blue(&self) -> &[usize] {
        &self.blue
    }

    pub fn purple(&self) -> &[usize] {
        &self.purple
    }

    /// Number of purple points.
    pub fn k(&self) -> usize {
        self.purple.len()
    }

    pub fn color(&self, id: usize) -> Color {
        self.points[id].color
    }

    /// Sorted ids of the points belonging to `side`.
    pub fn side_vertices(&self, side: Side) -> Vec<usize> {
        self.points.iter().filter(|p| side.contains(p.color)).map(|p| p.id).collect()
    }

    pub fn dist(&self, u: usize, v: usize) -> T {
        self.points[u].dist(&self.points[v])
    }

    /// The edge between two distinct points, in canonical orientation.
    ///
    /// Panics if `u == v` or either id is out of range.
    pub fn edge(&self, u: usize, v: usize) -> Edge<T> {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Edge {
            u,
            v,
            length: self.dist(u, v),
            class: EdgeClass::of(self.points[u].color, self.points[v].color),
        }
    }

    /// Number of unordered point pairs whose distances coincide with another
    /// pair's within [`Scalar::TIE_TOL`]. Zero means general position.
    ///
    /// Quadratic in `n`; meant for diagnostics on small inputs.
    pub fn distance_ties(&self) -> usize {
        let n = self.len();
        let mut d: Vec<f64> = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                d.push(self.dist(u, v).as_f64());
            }
        }
        d.sort_by(|a, b| a.total_cmp(b));
        d.windows(2).filter(|w| w[1] - w[0] <= T::TIE_TOL).count()
    }

    pub fn in_general_position(&self) -> bool {
        self.distance_ties() == 0
    }

    /// Converts coordinates to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Result<Instance<U>> {
        Instance::new(
            self.points.iter().map(|p| (p.color, U::lit(p.x.as_f64()), U::lit(p.y.as_f64()))),
        )
    }
}

/// Undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub length: T,
    pub class: EdgeClass,
}

impl<T: Scalar> Edge<T> {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, id: usize) -> bool {
        self.u == id || self.v == id
    }

    pub fn shares_endpoint(&self, other: &Edge<T>) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }

    /// Global deterministic order: length, then endpoints, then class.
    pub fn order(&self, other: &Edge<T>) -> Ordering {
        cmp(self.length, other.length)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
            .then(self.class.cmp(&other.class))
    }
}

/// A set of edges over one instance, kept sorted by endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSet<T> {
    edges: Vec<Edge<T>>,
    weight: T,
}

impl<T: Scalar> EdgeSet<T> {
    /// Sorts by endpoints and merges duplicates.
    pub fn new(mut edges: Vec<Edge<T>>) -> Self {
        edges.sort_by_key(|e| (e.u, e.v));
        edges.dedup_by(|a, b| a.u == b.u && a.v == b.v);
        let weight = edges.iter().map(|e| e.length).sum();
        EdgeSet { edges, weight }
    }

    pub fn empty() -> Self {
        EdgeSet { edges: Vec::new(), weight: T::zero() }
    }

    /// Builds an edge set from id pairs, rejecting unknown ids, loops and red-blue pairs.
    pub fn from_pairs(instance: &Instance<T>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = instance.len();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n || v >= n || u == v {
                return Err(Error::UnknownPoint(u, v));
            }
            let e = instance.edge(u, v);
            if e.class == EdgeClass::Invalid {
                return Err(Error::InvalidEdge(e.u, e.v));
            }
            edges.push(e);
        }
        Ok(Self::new(edges))
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search_by(|e| (e.u, e.v).cmp(&key)).is_ok()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(Edge::endpoints).collect()
    }

    /// Union of two edge sets; shared edges are counted once.
    pub fn union(&self, other: &EdgeSet<T>) -> EdgeSet<T> {
        let mut all = self.edges.clone();
        all.extend_from_slice(&other.edges);
        EdgeSet::new(all)
    }
}

/// All edges that do not join a red point to a blue point, in global edge order.
pub fn allowed_edges<T: Scalar>(instance: &Instance<T>) -> Vec<Edge<T>> {
    let n = instance.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let e = instance.edge(u, v);
            if e.class != EdgeClass::Invalid {
                edges.push(e);
            }
        }
    }
    edges.sort_by(Edge::order);
    edges
}

/// `C(r+p, 2) + C(b+p, 2) - C(p, 2)`: the size of [`allowed_edges`].
pub fn allowed_edge_count(red: usize, blue: usize, purple: usize) -> usize {
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    c2(red + purple) + c2(blue + purple) - c2(purple)
}
