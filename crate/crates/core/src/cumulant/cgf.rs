use super::coloring::for_each_coloring;
use super::lambda::LambdaVector;
use crate::budget::Budget;
use crate::counting::WeightedTarget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::scalar::LogSumExp;

/// `f_{G,k}(lambda) = (1/v(G)) log E[exp(<lambda, v(G) X(G,k)>)]`, with the
/// expectation taken exactly over all `k^{v(G)}` colorings.
///
/// The expectation factors over connected components, so the coloring budget
/// applies to each component separately.
pub fn cgf_value(g: &SimpleGraph, lambda: &LambdaVector, budget: &Budget) -> Result<f64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("f is undefined on the empty graph".into()));
    }
    let k = lambda.k;
    let weights = lambda.statistic_weights();
    let mut log_e = 0.0;
    for comp in g.components_bfs() {
        let sub = g.induced_subgraph(&comp);
        let mut acc = LogSumExp::default();
        // Near the origin, log1p(mean(expm1(y))) keeps full relative precision
        // where log(sum e^y) - n log k would cancel.
        let mut small = 0.0;
        let mut max_abs: f64 = 0.0;
        let mut count = 0u64;
        for_each_coloring(&sub, k, budget, |counts| {
            let exponent: f64 = counts.iter().zip(&weights).map(|(&c, &w)| f64::from(c) * w).sum();
            acc.add(exponent);
            small += exponent.exp_m1();
            max_abs = max_abs.max(exponent.abs());
            count += 1;
        })?;
        log_e += if max_abs <= 1.0 {
            (small / count as f64).ln_1p()
        } else {
            acc.value() - comp.len() as f64 * (k as f64).ln()
        };
    }
    Ok(log_e / n as f64)
}

/// `H_lambda`: vertex weights `e^{lambda_i}`, off-diagonal edge weights
/// `e^{lambda_ij + lambda_ji}`, loop weights `e^{lambda_ii}`. With these
/// weights `f_{G,k}(lambda) = (1/v(G)) log t(G, H_lambda)` holds exactly.
pub fn target_from_lambda(lambda: &LambdaVector) -> WeightedTarget<f64> {
    let k = lambda.k;
    let vertex = lambda.vertex.iter().map(|x| x.exp()).collect();
    let edge = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        lambda.edge[i][i].exp()
                    } else {
                        (lambda.edge[i][j] + lambda.edge[j][i]).exp()
                    }
                })
                .collect()
        })
        .collect();
    WeightedTarget::new(vertex, edge).expect("exponential weights are positive and symmetric")
}
