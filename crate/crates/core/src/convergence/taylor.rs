use std::collections::{BTreeMap, HashMap};
use std::f64::consts::E;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::fmn::ln_fmn_bound;
use crate::budget::Budget;
use crate::cumulant::{joint_cumulant, kappa_gj, ColorPattern, ColoringHistogram, Coordinate, LambdaVector, Route, Statistic, MAX_PARTITION_SIZE};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::scalar::{format_ratio, ratio_to_f64};

/// `1 / (4 e D)`.
pub fn radius(d: usize) -> f64 {
    1.0 / (4.0 * E * d as f64)
}

/// Taylor polynomial of `f_{G,k}` at the origin.
///
/// `f` depends on `lambda` only through the statistic weights `w(lambda)`
/// (see [`LambdaVector::statistic_weights`]), so coefficients are stored once
/// per multiset of statistics: `c_beta = kappa_beta / (v(G) beta!)`. A key is
/// the sorted list of statistic indices.
#[derive(Debug, Clone)]
pub struct TaylorModel {
    k: usize,
    order: usize,
    v: usize,
    degree_bound: usize,
    coefficients: BTreeMap<Vec<usize>, BigRational>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn multiplicities(key: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    for &s in key {
        match out.last_mut() {
            Some((t, m)) if *t == s => *m += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn multisets(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for s in start..n {
        cur.push(s);
        multisets(n, len, s, cur, out);
        cur.pop();
    }
}

pub fn taylor_model(g: &SimpleGraph, k: usize, order: usize, budget: &Budget) -> Result<TaylorModel> {
    if order > MAX_PARTITION_SIZE {
        return Err(Error::InvalidParameter(format!(
            "Taylor order must be at most {MAX_PARTITION_SIZE}, got {order}"
        )));
    }
    let v = g.vertex_count();
    if v == 0 {
        return Err(Error::InvalidParameter("f is undefined on the empty graph".into()));
    }
    let hist = ColoringHistogram::build(g, k, budget)?;
    let stats = Statistic::all(k);
    let total = BigRational::from_integer(BigInt::from(hist.total().clone()));
    let mut moments: HashMap<Vec<usize>, BigRational> = HashMap::new();
    let mut moment = |key: Vec<usize>| -> BigRational {
        moments
            .entry(key)
            .or_insert_with_key(|key| {
                let mut sum = BigInt::zero();
                for (counts, mult) in hist.entries() {
                    let mut prod = BigInt::from(*mult);
                    for &s in key {
                        prod *= counts[s];
                    }
                    sum += prod;
                }
                BigRational::from_integer(sum) / &total
            })
            .clone()
    };
    let mut coefficients = BTreeMap::new();
    for l in 1..=order {
        let mut keys = Vec::new();
        multisets(stats.len(), l, 0, &mut Vec::new(), &mut keys);
        for key in keys {
            let kappa = joint_cumulant(l, |block: &[usize]| {
                let mut sub: Vec<usize> = block.iter().map(|&p| key[p]).collect();
                sub.sort_unstable();
                moment(sub)
            });
            if kappa.is_zero() {
                continue;
            }
            let beta_fact: BigInt = multiplicities(&key).iter().map(|&(_, m)| factorial(m)).product();
            let c = kappa / BigRational::from_integer(beta_fact * BigInt::from(v));
            coefficients.insert(key, c);
        }
    }
    Ok(TaylorModel { k, order, v, degree_bound: g.effective_degree_bound(), coefficients })
}

impl TaylorModel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn radius(&self) -> f64 {
        radius(self.degree_bound)
    }

    /// Nonzero coefficients keyed by sorted statistic indices.
    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.coefficients
    }

    /// Coefficient of the monomial `prod w_s` over the given statistics.
    pub fn coefficient(&self, stats: &[Statistic]) -> BigRational {
        let mut key: Vec<usize> = stats.iter().map(|s| s.index(self.k)).collect();
        key.sort_unstable();
        self.coefficients.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `d^alpha f(0) / alpha!` for a multi-index over the `k + k^2` full
    /// coordinates. `lambda_ij` and `lambda_ji` act through their sum, which
    /// contributes the binomial factor `beta! / alpha!`.
    pub fn full_coefficient(&self, alpha: &[(Coordinate, u32)]) -> BigRational {
        let mut beta: BTreeMap<Statistic, u32> = BTreeMap::new();
        let mut alpha_fact = BigInt::one();
        for &(c, m) in alpha {
            *beta.entry(c.statistic()).or_insert(0) += m;
            alpha_fact *= factorial(m);
        }
        let mut stats = Vec::new();
        let mut beta_fact = BigInt::one();
        for (s, m) in beta {
            beta_fact *= factorial(m);
            stats.extend(std::iter::repeat_n(s, m as usize));
        }
        self.coefficient(&stats) * BigRational::new(beta_fact, alpha_fact)
    }

    /// Sum of the terms of total degree at most `order`.
    pub fn eval_to_order(&self, lambda: &LambdaVector, order: usize) -> f64 {
        let w = lambda.statistic_weights();
        self.coefficients
            .iter()
            .filter(|(key, _)| key.len() <= order)
            .map(|(key, c)| ratio_to_f64(c) * key.iter().map(|&s| w[s]).product::<f64>())
            .sum()
    }

    /// Coefficients as `(monomial, "p/q")`, monomials written over the
    /// statistic weights `w_i` (vertex) and `w_ij` (color pair).
    pub fn terms(&self) -> Vec<(String, String)> {
        let stats = Statistic::all(self.k);
        self.coefficients
            .iter()
            .map(|(key, c)| {
                let mono = multiplicities(key)
                    .into_iter()
                    .map(|(s, m)| {
                        let name = match stats[s] {
                            Statistic::Vertex(i) => format!("w[{i}]"),
                            Statistic::Pair(i, j) => format!("w[{i},{j}]"),
                        };
                        if m == 1 { name } else { format!("{name}^{m}") }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                (mono, format_ratio(c))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorValue {
    pub value: f64,
    pub outside_radius: bool,
}

/// Evaluates the full model and flags points with `|lambda|_inf >= 1/(4eD)`.
pub fn taylor_eval(model: &TaylorModel, lambda: &LambdaVector) -> TaylorValue {
    TaylorValue {
        value: model.eval_to_order(lambda, model.order),
        outside_radius: lambda.sup_norm() >= model.radius(),
    }
}

/// Majorant of `|g(z) - T_m(z)|` for `g(z) = f(z lambda0)`:
/// `sum_{r > m} fmn(r, w, delta, a) |z|^r / (v r!)`.
///
/// Consecutive term ratios increase towards `2e(delta+1)a|z|`, so after an
/// explicit partial sum the remainder is bounded geometrically. Returns
/// infinity when that limit ratio is at least 1.
pub fn tail_majorant(v: usize, w: usize, delta: usize, a: f64, z: f64, m: usize) -> f64 {
    let z = z.abs();
    if z == 0.0 {
        return 0.0;
    }
    let limit = 2.0 * E * (delta + 1) as f64 * a * z;
    if limit >= 1.0 {
        return f64::INFINITY;
    }
    let log_term = |r: usize, log_fact: f64| ln_fmn_bound(r, w, delta, a) + r as f64 * z.ln() - log_fact - (v as f64).ln();
    let mut log_fact: f64 = (1..=m).map(|i| (i as f64).ln()).sum();
    let mut sum = 0.0;
    let mut last = 0.0;
    for r in m + 1..=m + 400 {
        log_fact += (r as f64).ln();
        last = log_term(r, log_fact).exp();
        sum += last;
    }
    sum + last * limit / (1.0 - limit)
}

/// Radius of convergence of the majorant series in `z`.
pub fn majorant_radius(delta: usize, a: f64) -> f64 {
    1.0 / (2.0 * E * (delta + 1) as f64 * a)
}

/// Compares every pure color-pair coefficient of order `<= max_len` with
/// `sum_F i(F,G) kappa(F,J)` and returns the number of mismatches.
pub fn edge_block_crosscheck(model: &TaylorModel, g: &SimpleGraph, max_len: usize, budget: &Budget) -> Result<usize> {
    let stats = Statistic::all(model.k);
    let mut mismatches = 0;
    for l in 1..=max_len.min(model.order) {
        let mut keys = Vec::new();
        multisets(stats.len(), l, 0, &mut Vec::new(), &mut keys);
        for key in keys {
            let pairs: Vec<(usize, usize)> = key
                .iter()
                .filter_map(|&s| match stats[s] {
                    Statistic::Pair(i, j) => Some((i, j)),
                    Statistic::Vertex(_) => None,
                })
                .collect();
            if pairs.len() != key.len() {
                continue;
            }
            let kappa = kappa_gj(g, &ColorPattern::from_pairs(&pairs), model.k, Route::Decomposition, budget)?;
            let beta_fact: BigInt = multiplicities(&key).iter().map(|&(_, m)| factorial(m)).product();
            let expected = kappa / BigRational::from_integer(beta_fact * BigInt::from(model.v));
            let got = model.coefficients.get(&key).cloned().unwrap_or_else(BigRational::zero);
            if got != expected {
                mismatches += 1;
            }
        }
    }
    Ok(mismatches)
}
