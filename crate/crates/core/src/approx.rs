//! Two fast approximations and ratio bookkeeping.

use crate::error::{Error, Result};
use crate::graph::{constrained_mst, is_rbp_spanning, kruskal_mst, side_mst, solution_stats, Solution, SolverTag};
use crate::model::{EdgeClass, EdgeSet, Instance, Side};
use crate::scalar::Scalar;

/// Steiner ratio constants behind the approximation bounds.
pub struct SteinerRatioBounds;

impl SteinerRatioBounds {
    /// Best proven upper bound on the Steiner ratio.
    pub const RHO_UPPER: f64 = 1.21;
    /// Conjectured value 2/√3.
    pub const RHO_CONJECTURED: f64 = 1.154_700_538_379_251_5;
    /// Guarantee of [`approx_a`]: ρ/2 + 1.
    pub const GUARANTEE: f64 = 0.5 * Self::RHO_UPPER + 1.0;
    /// Guarantee of [`approx_union`].
    pub const UNION_GUARANTEE: f64 = 2.0;
}

/// MST(R∪P) ∪ MST(B∪P).
pub fn approx_union<T: Scalar>(instance: &Instance<T>) -> Solution<T> {
    let red = side_mst(instance, Side::Red).edges;
    let blue = side_mst(instance, Side::Blue).edges;
    solution_stats(instance, red.union(&blue), SolverTag::ApproxUnion)
}

/// MST of the purple points, then each side completed by Kruskal with the
/// purple tree already in place.
pub fn approx_a<T: Scalar>(instance: &Instance<T>) -> Solution<T> {
    let purple = kruskal_mst(instance, instance.purple(), |e| e.class == EdgeClass::Purple)
        .expect("purple points are pairwise joinable")
        .edges;
    let forced = purple.pairs();
    let mut all = purple;
    for side in Side::BOTH {
        let tree = constrained_mst(instance, &instance.side_vertices(side), &forced).expect("side is complete");
        all = all.union(&tree);
    }
    solution_stats(instance, all, SolverTag::ApproxA)
}

/// What an approximate weight is compared against.
#[derive(Clone, Debug)]
pub enum Reference<T> {
    /// Weight of a known optimum.
    Certified(T),
    /// A feasible solution, so only an upper bound on the optimum.
    Constructed(EdgeSet<T>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioReport {
    pub approx: f64,
    pub reference: f64,
    pub ratio: f64,
    pub certified: bool,
    /// The proven bound for the solver, if it has one.
    pub guarantee: Option<f64>,
    /// Ratio above the guarantee against a certified optimum.
    pub violation: bool,
}

pub fn ratio_report<T: Scalar>(instance: &Instance<T>, approx: &Solution<T>, reference: Reference<T>) -> Result<RatioReport> {
    let (reference, certified) = match reference {
        Reference::Certified(w) => (w.as_f64(), true),
        Reference::Constructed(edges) => {
            if !is_rbp_spanning(instance, edges.edges()) {
                return Err(Error::InfeasibleReference);
            }
            (edges.weight().as_f64(), false)
        }
    };
    let approx_w = approx.weight.as_f64();
    let ratio = if reference > 0.0 {
        approx_w / reference
    } else if approx_w == 0.0 {
        1.0
    } else {
        return Err(Error::InfeasibleReference);
    };
    let guarantee = match approx.solver {
        SolverTag::ApproxA => Some(SteinerRatioBounds::GUARANTEE),
        SolverTag::ApproxUnion => Some(SteinerRatioBounds::UNION_GUARANTEE),
        _ => None,
    };
    let violation = certified && guarantee.is_some_and(|g| ratio > g * (1.0 + T::WEIGHT_RTOL));
    Ok(RatioReport { approx: approx_w, reference, ratio, certified, guarantee, violation })
}
