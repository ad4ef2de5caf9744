//! Minimum red-blue-purple (RBP) spanning graphs of colored planar point sets.
//!
//! Points are red, blue or purple. An RBP spanning graph connects the red and
//! purple points using red and purple edges, and the blue and purple points
//! using blue and purple edges. This crate computes minimum-weight such graphs:
//!
//! * [`exact::solve_exact`]: weighted matroid intersection, any position;
//! * [`line::solve_line`]: linear scan for collinear points;
//! * [`circle::solve_circle`]: interval dynamic program for concyclic points;
//! * [`approx::approx_union`] and [`approx::approx_a`]: fast approximations;
//! * [`oracle`]: brute-force references for cross-checking.
//!
//! All geometry is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.

pub mod approx;
pub mod bench;
pub mod circle;
pub mod error;
pub mod exact;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod line;
pub mod model;
pub mod oracle;
pub mod render;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{ClassCounts, DisjointSets, SolverTag};
pub use model::{allowed_edges, Color, EdgeClass, Side};
pub use scalar::Scalar;

pub type Point = model::Point<f64>;
pub type Instance = model::Instance<f64>;
pub type Edge = model::Edge<f64>;
pub type EdgeSet = model::EdgeSet<f64>;
pub type Solution = graph::Solution<f64>;

pub type Instance32 = model::Instance<f32>;
pub type Solution32 = graph::Solution<f32>;
