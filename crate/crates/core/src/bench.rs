//! Wall-clock medians for the solvers on generated inputs.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::circle::solve_circle;
use crate::exact::solve_exact;
use crate::generators::{gen_circle_arcs, gen_line_sorted, gen_random, Mode};
use crate::line::solve_line_edges;

#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub solver: &'static str,
    /// n for the line and exact solvers, k for the circle solver.
    pub size: usize,
    pub reps: usize,
    pub median: Duration,
}

/// Median wall time of `reps` runs of `f`.
pub fn median_time(reps: usize, mut f: impl FnMut()) -> Duration {
    assert!(reps > 0);
    let mut times: Vec<Duration> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[reps / 2]
}

/// Line solver on pre-sorted inputs; statistics and edge-set sorting excluded.
pub fn bench_line(sizes: &[usize], reps: usize, seed: u64) -> Vec<Timing> {
    sizes
        .iter()
        .map(|&n| {
            let instance = gen_line_sorted(n, seed).expect("positive size");
            let median = median_time(reps, || {
                black_box(solve_line_edges(black_box(&instance)).expect("collinear"));
            });
            Timing { solver: "line", size: n, reps, median }
        })
        .collect()
}

/// Circle solver with `per_arc` points in every arc.
pub fn bench_circle(ks: &[usize], per_arc: usize, reps: usize, seed: u64) -> Vec<Timing> {
    ks.iter()
        .map(|&k| {
            let instance = gen_circle_arcs(k, per_arc, seed).expect("positive size");
            let median = median_time(reps, || {
                black_box(solve_circle(black_box(&instance)).expect("concyclic"));
            });
            Timing { solver: "circle", size: k, reps, median }
        })
        .collect()
}

/// Exact solver on random planar instances.
pub fn bench_exact(ns: &[usize], reps: usize, seed: u64) -> Vec<Timing> {
    ns.iter()
        .map(|&n| {
            let instance = gen_random(n, 0.35, 0.35, Mode::Plane, seed).expect("positive size");
            let median = median_time(reps, || {
                black_box(solve_exact(black_box(&instance)));
            });
            Timing { solver: "exact", size: n, reps, median }
        })
        .collect()
}

/// One row per timing plus the ratio to the previous row of the same solver.
pub fn format_table(timings: &[Timing]) -> String {
    let mut s = String::from("solver  size      reps  median_s      ratio\n");
    for (i, t) in timings.iter().enumerate() {
        let ratio = match i.checked_sub(1).map(|p| &timings[p]) {
            Some(prev) if prev.solver == t.solver => format!("{:.2}", t.median.as_secs_f64() / prev.median.as_secs_f64()),
            _ => "-".to_string(),
        };
        writeln!(s, "{:<7} {:<9} {:<5} {:<13.6e} {}", t.solver, t.size, t.reps, t.median.as_secs_f64(), ratio).unwrap();
    }
    s
}
