use num_rational::BigRational;
use num_traits::Zero;

use super::coloring::ColoringHistogram;
use super::lambda::{Coordinate, Statistic};
use super::pattern::{kappa_fj, ColorPattern};
use crate::budget::Budget;
use crate::counting::i_profile;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// How to evaluate `kappa_G(J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Joint cumulant of the edge-count statistics over all colorings of `G`.
    Direct,
    /// `sum_{F connected} i(F, G) kappa(F, J)` over the realized patterns.
    Decomposition,
}

/// `kappa_G(J) = kappa(v X_{i_1 j_1}, .., v X_{i_l j_l})`.
pub fn kappa_gj(g: &SimpleGraph, j: &ColorPattern, k: usize, route: Route, budget: &Budget) -> Result<BigRational> {
    if let Some(c) = j.max_color().filter(|&c| c >= k) {
        return Err(Error::ColorOutOfRange { color: c, k });
    }
    let pairs = j.pairs();
    match route {
        Route::Direct => {
            let hist = ColoringHistogram::build(g, k, budget)?;
            let stats: Vec<Statistic> = pairs.iter().map(|&(a, b)| Statistic::Pair(a, b)).collect();
            Ok(hist.joint_cumulant(&stats))
        }
        Route::Decomposition => {
            let profile = i_profile(g, pairs.len(), budget)?;
            let mut total = BigRational::zero();
            for entry in profile.connected() {
                let coeff = kappa_fj(&entry.pattern, &pairs, k)?;
                total += coeff * BigRational::from_integer(entry.count.into());
            }
            Ok(total)
        }
    }
}

/// Joint cumulant of `v(G)` times the given coordinates of `X(G, k)`; vertex
/// and edge coordinates may be mixed. Direct route only.
pub fn coordinate_cumulant(g: &SimpleGraph, k: usize, coords: &[Coordinate], budget: &Budget) -> Result<BigRational> {
    if let Some(c) = coords.iter().find(|c| match **c {
        Coordinate::Vertex(i) => i >= k,
        Coordinate::Edge(i, j) => i >= k || j >= k,
    }) {
        return Err(Error::InvalidParameter(format!("coordinate {c:?} out of range for k = {k}")));
    }
    let hist = ColoringHistogram::build(g, k, budget)?;
    let stats: Vec<Statistic> = coords.iter().map(|c| c.statistic()).collect();
    Ok(hist.joint_cumulant(&stats))
}
