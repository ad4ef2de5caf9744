//! Seeded random instances and the fixed constructions used in experiments.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::side_mst;
use crate::model::{Color, EdgeSet, Instance, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plane,
    Line,
    Circle,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "plane" => Ok(Mode::Plane),
            "line" => Ok(Mode::Line),
            "circle" => Ok(Mode::Circle),
            _ => Err(Error::Generator(format!("unknown mode {s:?} (plane, line, circle)"))),
        }
    }
}

/// Colors drawn with the given probabilities; the rest are purple.
fn draw_color(rng: &mut ChaCha8Rng, red: f64, blue: f64) -> Color {
    let u: f64 = rng.gen();
    if u < red {
        Color::Red
    } else if u < red + blue {
        Color::Blue
    } else {
        Color::Purple
    }
}

/// `n` seeded points in the unit square, on a segment through the origin, or
/// on the unit circle. Coincident points are redrawn.
pub fn gen_random(n: usize, red: f64, blue: f64, mode: Mode, seed: u64) -> Result<Instance<f64>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if !(0.0..=1.0).contains(&red) || !(0.0..=1.0).contains(&blue) || red + blue > 1.0 {
        return Err(Error::Generator(format!("color fractions {red} and {blue} must lie in [0,1] and sum to at most 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle: f64 = rng.gen_range(0.0..PI);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let color = draw_color(&mut rng, red, blue);
        let (x, y) = match mode {
            Mode::Plane => (rng.gen::<f64>(), rng.gen::<f64>()),
            Mode::Line => {
                let t: f64 = rng.gen();
                (t * angle.cos(), t * angle.sin())
            }
            Mode::Circle => {
                let a: f64 = rng.gen_range(0.0..2.0 * PI);
                (a.cos(), a.sin())
            }
        };
        if seen.insert((x.to_bits(), y.to_bits())) {
            points.push((color, x, y));
        }
    }
    Instance::new(points)
}

/// `n` points on the x axis in increasing order with uniform colors.
pub fn gen_line_sorted(n: usize, seed: u64) -> Result<Instance<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.0;
    Instance::new((0..n).map(|_| {
        x += rng.gen_range(0.5..1.5);
        (draw_color(&mut rng, 1.0 / 3.0, 1.0 / 3.0), x, 0.0)
    }))
}

/// `k` purple points on the unit circle with `per_arc` red or blue points in each arc.
pub fn gen_circle_arcs(k: usize, per_arc: usize, seed: u64) -> Result<Instance<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = 2.0 * PI / k as f64;
    let mut points = Vec::with_capacity(k * (per_arc + 1));
    for i in 0..k {
        let base = i as f64 * step;
        points.push((Color::Purple, base));
        for j in 0..per_arc {
            let color = if rng.gen::<bool>() { Color::Red } else { Color::Blue };
            points.push((color, base + step * (j as f64 + 1.0) / (per_arc as f64 + 1.0)));
        }
    }
    Instance::new(points.into_iter().map(|(c, a)| (c, a.cos(), a.sin())))
}

/// Purple center, purple hexagon of radius 3, red hexagon of radius 1 and a
/// blue one of radius 1 turned by `rotation`.
pub fn gen_hexagon(rotation: f64) -> Result<Instance<f64>> {
    let turns = rotation / FRAC_PI_3;
    if !rotation.is_finite() || (turns - turns.round()).abs() < 1e-9 {
        return Err(Error::Generator(format!("rotation {rotation} puts blue points on the red ones")));
    }
    let ring = |color: Color, r: f64, offset: f64| {
        (0..6).map(move |j| {
            let a = offset + j as f64 * FRAC_PI_3;
            (color, r * a.cos(), r * a.sin())
        })
    };
    let points = std::iter::once((Color::Purple, 0.0, 0.0))
        .chain(ring(Color::Purple, 3.0, 0.0))
        .chain(ring(Color::Red, 1.0, 0.0))
        .chain(ring(Color::Blue, 1.0, rotation));
    Instance::new(points)
}

pub const HEXAGON_DEFAULT_ROTATION: f64 = PI / 12.0;

/// Every point joined to the center (id 0).
pub fn hexagon_star(instance: &Instance<f64>) -> EdgeSet<f64> {
    let pairs: Vec<(usize, usize)> = (1..instance.len()).map(|v| (0, v)).collect();
    EdgeSet::from_pairs(instance, &pairs).expect("every point may join the purple center")
}

/// A Steiner-family instance with a known feasible solution.
#[derive(Clone, Debug)]
pub struct SteinerFamily {
    pub instance: Instance<f64>,
    /// Chains along the spokes towards the Fermat point, closed near it.
    pub two_chain: EdgeSet<f64>,
}

/// Unit equilateral triangle of purple points with `t` red and `t` blue
/// points on each corner-to-center spoke.
pub fn gen_steiner_family(t: usize) -> SteinerFamily {
    let h = 3f64.sqrt() / 2.0;
    let corners = [(0.0, 0.0), (1.0, 0.0), (0.5, h)];
    let center = (0.5, h / 3.0);
    let along = |c: (f64, f64), f: f64| (c.0 + f * (center.0 - c.0), c.1 + f * (center.1 - c.1));
    let denom = t as f64 + 1.0;
    let mut points: Vec<(Color, f64, f64)> = corners.iter().map(|&(x, y)| (Color::Purple, x, y)).collect();
    let mut pairs = Vec::new();
    let mut innermost = [Vec::new(), Vec::new()];
    for (ci, &c) in corners.iter().enumerate() {
        for (si, color) in [Color::Red, Color::Blue].into_iter().enumerate() {
            let mut prev = ci;
            for j in 1..=t {
                let f = if color == Color::Red { j as f64 } else { j as f64 - 0.5 } / denom;
                let (x, y) = along(c, f);
                let id = points.len();
                points.push((color, x, y));
                pairs.push((prev, id));
                prev = id;
            }
            if t > 0 {
                innermost[si].push(prev);
            }
        }
    }
    let instance = Instance::new(points).expect("distinct construction points");
    let two_chain = if t == 0 {
        side_mst(&instance, Side::Red).edges
    } else {
        for ends in &innermost {
            pairs.push((ends[0], ends[1]));
            pairs.push((ends[1], ends[2]));
        }
        EdgeSet::from_pairs(&instance, &pairs).expect("chains are same-colored")
    };
    SteinerFamily { instance, two_chain }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MartiniParams {
    /// Number of levels; odd.
    pub m: usize,
    pub eps: f64,
    /// Downward shift of the working circle; chosen automatically when absent.
    pub eps0: Option<f64>,
    pub chain_points: usize,
    /// When set, chains get as many points as fit at this spacing instead of `chain_points`.
    pub chain_spacing: Option<f64>,
    /// Polar angle of q_0 in degrees; r_0 is its mirror image.
    pub start_angle: f64,
}

impl Default for MartiniParams {
    fn default() -> Self {
        MartiniParams { m: 1, eps: 1e-3, eps0: None, chain_points: 2, chain_spacing: None, start_angle: 200.0 }
    }
}

#[derive(Clone, Debug)]
pub struct Martini {
    pub instance: Instance<f64>,
    /// Named purple points: p_N, p_S, q_i, r_i.
    pub landmarks: BTreeMap<String, usize>,
    /// Lowest point of the unit circle around p_N; not part of the instance.
    pub p_c: (f64, f64),
    pub eps0: f64,
}

impl Martini {
    pub fn landmark(&self, name: &str) -> usize {
        self.landmarks[name]
    }
}

/// Polar angles (radians) of q_0..q_m on the working circle.
fn martini_angles(params: &MartiniParams) -> Result<Vec<f64>> {
    let bottom = 1.5 * PI;
    let mut theta = vec![params.start_angle.to_radians()];
    if !(PI..bottom).contains(&theta[0]) {
        return Err(Error::Generator(format!("start angle {} must lie in [180, 270)", params.start_angle)));
    }
    for i in 0..params.m {
        // q_{i+1} on the circle at distance |q_i r_i|/2 + eps from q_i
        let chord = theta[i].cos().abs() + params.eps;
        let next = theta[i] + 2.0 * (chord / 2.0).asin();
        if next >= bottom {
            return Err(Error::Generator(format!(
                "level {} passes the bottom of the circle; lower eps or move the start angle towards 180",
                i + 1
            )));
        }
        theta.push(next);
    }
    Ok(theta)
}

pub fn gen_martini(params: &MartiniParams) -> Result<Martini> {
    if params.m.is_multiple_of(2) {
        return Err(Error::Generator(format!("level count {} must be odd", params.m)));
    }
    if !(params.eps > 0.0) || params.chain_points == 0 && params.chain_spacing.is_none() {
        return Err(Error::Generator("eps must be positive and chains non-empty".into()));
    }
    let theta = martini_angles(params)?;
    // y(q_m) > y(p_c) reads eps0 < 1 − cos φ with φ the angle of q_m from the bottom
    let limit = 1.0 + theta[params.m].sin();
    let eps0 = match params.eps0 {
        Some(e) if e > 0.0 && e < limit => e,
        Some(e) => return Err(Error::Generator(format!("eps0 {e} must lie in (0, {limit:e})"))),
        None => 1e-2f64.min(limit / 2.0),
    };
    if !(eps0 > 0.0) {
        return Err(Error::Generator("no positive eps0 keeps q_m above p_c".into()));
    }
    let on_c = |a: f64| (a.cos(), a.sin() - eps0);
    let mirror = |a: f64| PI - a;
    let p_n = (0.0, 0.0);
    let p_s = (0.0, -2.0 - 2.0 * eps0);
    let p_c = (0.0, -1.0);

    let mut points: Vec<(Color, f64, f64)> = Vec::new();
    let mut landmarks = BTreeMap::new();
    let add = |points: &mut Vec<(Color, f64, f64)>, c: Color, (x, y): (f64, f64)| {
        points.push((c, x, y));
        points.len() - 1
    };
    landmarks.insert("p_N".to_string(), add(&mut points, Color::Purple, p_n));
    landmarks.insert("p_S".to_string(), add(&mut points, Color::Purple, p_s));
    for (i, &a) in theta.iter().enumerate() {
        landmarks.insert(format!("q_{i}"), add(&mut points, Color::Purple, on_c(a)));
        landmarks.insert(format!("r_{i}"), add(&mut points, Color::Purple, on_c(mirror(a))));
    }
    let count = |length: f64| match params.chain_spacing {
        Some(s) => ((length / s).ceil() as usize).max(2) - 1,
        None => params.chain_points,
    };
    for i in 0..params.m {
        let (a, b) = (theta[i], theta[i + 1]);
        let c = count(b - a);
        let (left, right) = if i % 2 == 0 { (Color::Blue, Color::Red) } else { (Color::Red, Color::Blue) };
        for j in 1..=c {
            let t = a + (b - a) * j as f64 / (c as f64 + 1.0);
            add(&mut points, left, on_c(t));
            add(&mut points, right, on_c(mirror(t)));
        }
    }
    let mut segment_chain = |color: Color, from: (f64, f64), to: (f64, f64)| {
        let c = count(((to.0 - from.0).powi(2) + (to.1 - from.1).powi(2)).sqrt());
        for j in 1..=c {
            let f = j as f64 / (c as f64 + 1.0);
            add(&mut points, color, (from.0 + f * (to.0 - from.0), from.1 + f * (to.1 - from.1)));
        }
    };
    segment_chain(Color::Red, p_n, on_c(mirror(theta[0])));
    segment_chain(Color::Blue, on_c(theta[params.m]), p_s);

    let instance = Instance::new(points)?;
    let martini = Martini { instance, landmarks, p_c, eps0 };
    check_martini(&martini, params.m)?;
    Ok(martini)
}

/// The geometric inequalities the construction relies on.
fn check_martini(martini: &Martini, m: usize) -> Result<()> {
    let i = &martini.instance;
    let at = |name: String| martini.landmark(&name);
    let q = |j: usize| at(format!("q_{j}"));
    let r = |j: usize| at(format!("r_{j}"));
    let fail = |what: String| Err(Error::Generator(what));
    if i.point(q(m)).y <= martini.p_c.1 {
        return fail("q_m is not above p_c".into());
    }
    for j in 0..m {
        if i.dist(q(j), q(j + 1)) <= i.dist(q(j), r(j)) / 2.0 {
            return fail(format!("|q_{j} q_{}| is not longer than half of |q_{j} r_{j}|", j + 1));
        }
    }
    let (p_n, p_s) = (at("p_N".into()), at("p_S".into()));
    let on_circle: Vec<usize> = (0..=m).flat_map(|j| [q(j), r(j)]).collect();
    let ns = i.dist(p_n, p_s);
    for &nu in &on_circle {
        for &eta in &on_circle {
            if i.dist(p_n, nu) + i.dist(p_s, eta) <= ns {
                return fail("a path p_N -> circle -> p_S is not longer than p_N p_S".into());
            }
        }
    }
    Ok(())
}

/// A generator name with its parameters and seed; the same spec always
/// produces the same instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
}

/// Output of [`GenSpec::generate`].
#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance<f64>,
    /// Landmark and parameter notes for the instance file.
    pub comments: Vec<String>,
    /// A feasible solution shipped with the construction, if any.
    pub reference: Option<EdgeSet<f64>>,
}

pub const GENERATOR_NAMES: [&str; 6] = ["random", "line-sorted", "circle-arcs", "hexagon", "steiner", "martini"];

impl GenSpec {
    pub fn new(name: &str, seed: u64) -> Self {
        GenSpec { name: name.to_string(), params: BTreeMap::new(), seed }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn get<V: FromStr>(&self, key: &str, default: V) -> Result<V> {
        match self.params.get(key) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| Error::Generator(format!("bad value {s:?} for parameter {key}"))),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Generator(format!("{} takes no parameter {k:?} (allowed: {})", self.name, allowed.join(", ")))),
            None => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        let mut comments = vec![format!("generator {} seed {}", self.name, self.seed)];
        comments.extend(self.params.iter().map(|(k, v)| format!("param {k}={v}")));
        let mut reference = None;
        let instance = match self.name.as_str() {
            "random" => {
                self.check_keys(&["n", "red", "blue", "mode"])?;
                let mode: Mode = self.get("mode", Mode::Plane)?;
                gen_random(self.get("n", 10)?, self.get("red", 0.4)?, self.get("blue", 0.4)?, mode, self.seed)?
            }
            "line-sorted" => {
                self.check_keys(&["n"])?;
                gen_line_sorted(self.get("n", 1000)?, self.seed)?
            }
            "circle-arcs" => {
                self.check_keys(&["k", "per_arc"])?;
                gen_circle_arcs(self.get("k", 50)?, self.get("per_arc", 2)?, self.seed)?
            }
            "hexagon" => {
                self.check_keys(&["rotation"])?;
                let inst = gen_hexagon(self.get("rotation", HEXAGON_DEFAULT_ROTATION)?)?;
                comments.push("landmark center 0".into());
                reference = Some(hexagon_star(&inst));
                inst
            }
            "steiner" => {
                self.check_keys(&["t"])?;
                let family = gen_steiner_family(self.get("t", 5)?);
                reference = Some(family.two_chain);
                family.instance
            }
            "martini" => {
                self.check_keys(&["m", "eps", "eps0", "chain_points", "chain_spacing", "start_angle"])?;
                let d = MartiniParams::default();
                let params = MartiniParams {
                    m: self.get("m", d.m)?,
                    eps: self.get("eps", d.eps)?,
                    eps0: self.params.get("eps0").map(|_| self.get("eps0", 0.0)).transpose()?,
                    chain_points: self.get("chain_points", d.chain_points)?,
                    chain_spacing: self.params.get("chain_spacing").map(|_| self.get("chain_spacing", 0.0)).transpose()?,
                    start_angle: self.get("start_angle", d.start_angle)?,
                };
                let martini = gen_martini(&params)?;
                comments.push(format!("eps0 {:e}", martini.eps0));
                comments.push(format!("landmark p_c {} {} (not a point)", martini.p_c.0, martini.p_c.1));
                let mut named: Vec<(&String, &usize)> = martini.landmarks.iter().collect();
                named.sort_by_key(|&(_, &id)| id);
                comments.extend(named.into_iter().map(|(name, id)| format!("landmark {name} {id}")));
                martini.instance
            }
            other => {
                return Err(Error::Generator(format!("unknown generator {other:?} (one of {})", GENERATOR_NAMES.join(", "))))
            }
        };
        Ok(Generated { instance, comments, reference })
    }
}
