use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use serde_json::Value;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::scalar::{parse_ratio, LogSumExp, Scalar};

/// Complete weighted graph on `k` vertices: positive vertex weights and a
/// symmetric matrix of nonnegative edge weights whose diagonal holds the
/// loop weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTarget<T = f64> {
    vertex_weights: Vec<T>,
    edge_weights: Vec<Vec<T>>,
}

impl<T: Scalar> WeightedTarget<T> {
    pub fn new(vertex_weights: Vec<T>, edge_weights: Vec<Vec<T>>) -> Result<Self> {
        let k = vertex_weights.len();
        if k == 0 {
            return Err(Error::InvalidTarget("target needs at least one vertex".into()));
        }
        if edge_weights.len() != k || edge_weights.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidTarget(format!("edge weights must be a {k}x{k} matrix")));
        }
        if let Some(i) = vertex_weights.iter().position(|w| !(*w > T::zero())) {
            return Err(Error::InvalidTarget(format!("vertex weight {i} is not positive")));
        }
        for i in 0..k {
            for j in 0..k {
                if !(edge_weights[i][j] >= T::zero()) {
                    return Err(Error::InvalidTarget(format!("edge weight ({i}, {j}) is negative")));
                }
                if edge_weights[i][j] != edge_weights[j][i] {
                    return Err(Error::InvalidTarget(format!("edge weights not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(WeightedTarget {
            vertex_weights,
            edge_weights,
        })
    }

    /// Every weight equal to one.
    pub fn uniform(k: usize) -> Self {
        WeightedTarget {
            vertex_weights: vec![T::one(); k],
            edge_weights: vec![vec![T::one(); k]; k],
        }
    }

    /// The 0/1-weighted target whose weight-one edges are those of `h`.
    pub fn from_simple(h: &SimpleGraph) -> Self {
        let k = h.vertex_count();
        let edge_weights = (0..k)
            .map(|i| (0..k).map(|j| if h.has_edge(i, j) { T::one() } else { T::zero() }).collect())
            .collect();
        WeightedTarget {
            vertex_weights: vec![T::one(); k],
            edge_weights,
        }
    }

    pub fn k(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn vertex_weight(&self, i: usize) -> &T {
        &self.vertex_weights[i]
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> &T {
        &self.edge_weights[i][j]
    }

    pub fn vertex_weights(&self) -> &[T] {
        &self.vertex_weights
    }

    pub fn edge_weights(&self) -> &[Vec<T>] {
        &self.edge_weights
    }

    /// Soft-core: every edge weight (loops included) strictly positive.
    pub fn is_soft_core(&self) -> bool {
        self.edge_weights.iter().flatten().all(|w| *w > T::zero())
    }

    pub fn to_f64(&self) -> WeightedTarget<f64> {
        WeightedTarget {
            vertex_weights: self.vertex_weights.iter().map(Scalar::to_f64).collect(),
            edge_weights: self
                .edge_weights
                .iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }
}

/// A target read from JSON: always usable in floating mode, and in exact
/// mode when every weight was given as an integer or a `"p/q"` string.
#[derive(Debug, Clone)]
pub struct LoadedTarget {
    pub real: WeightedTarget<f64>,
    pub exact: Option<WeightedTarget<BigRational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetFile {
    k: usize,
    vertex_weights: Vec<Value>,
    edge_weights: Vec<Vec<Value>>,
}

impl LoadedTarget {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TargetFile = serde_json::from_str(text)?;
        if file.vertex_weights.len() != file.k {
            return Err(Error::InvalidTarget(format!(
                "k = {} but {} vertex weights given",
                file.k,
                file.vertex_weights.len()
            )));
        }
        let mut all_exact = true;
        let mut convert = |v: &Value| -> Result<(f64, Option<BigRational>)> {
            match v {
                Value::String(s) => {
                    let r = parse_ratio(s)?;
                    Ok((r.to_f64(), Some(r)))
                }
                Value::Number(n) => {
                    if let Some(i) = n.as_i64() {
                        Ok((i as f64, Some(BigRational::from_integer(i.into()))))
                    } else {
                        all_exact = false;
                        Ok((n.as_f64().unwrap(), None))
                    }
                }
                other => Err(Error::InvalidTarget(format!("weight must be a number or string, got {other}"))),
            }
        };
        let vw: Vec<_> = file.vertex_weights.iter().map(&mut convert).collect::<Result<_>>()?;
        let ew: Vec<Vec<_>> = file
            .edge_weights
            .iter()
            .map(|r| r.iter().map(&mut convert).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let real = WeightedTarget::new(
            vw.iter().map(|x| x.0).collect(),
            ew.iter().map(|r| r.iter().map(|x| x.0).collect()).collect(),
        )?;
        let exact = if all_exact {
            Some(WeightedTarget::new(
                vw.into_iter().map(|x| x.1.unwrap()).collect(),
                ew.into_iter().map(|r| r.into_iter().map(|x| x.1.unwrap()).collect()).collect(),
            )?)
        } else {
            None
        };
        Ok(LoadedTarget { real, exact })
    }
}

/// Exact weighted homomorphism sum: over all maps `f`, the product of
/// `w_{f(v)}` over vertices and `w_{f(u)f(v)}` over edges. Factors over the
/// components of `g`.
pub fn weighted_hom_exact<T: Scalar>(g: &SimpleGraph, h: &WeightedTarget<T>, budget: &Budget) -> Result<T> {
    let mut total = T::one();
    for comp in g.components_bfs() {
        budget.check_colorings(comp.len(), h.k())?;
        let mut image = vec![usize::MAX; g.vertex_count()];
        total = total * sum_component(g, h, &comp, 0, &mut image, T::one());
    }
    Ok(total)
}

fn sum_component<T: Scalar>(
    g: &SimpleGraph,
    h: &WeightedTarget<T>,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    partial: T,
) -> T {
    if depth == order.len() {
        return partial;
    }
    let v = order[depth];
    let mut acc = T::zero();
    for c in 0..h.k() {
        let mut w = partial.clone() * h.vertex_weights[c].clone();
        for &u in g.neighbors(v) {
            if image[u] != usize::MAX {
                w = w * h.edge_weights[c][image[u]].clone();
            }
        }
        if w.is_zero() {
            continue;
        }
        image[v] = c;
        acc = acc + sum_component(g, h, order, depth + 1, image, w);
        image[v] = usize::MAX;
    }
    acc
}

/// `ln hom(g, h)` accumulated in log space per component.
pub fn log_weighted_hom(g: &SimpleGraph, h: &WeightedTarget<f64>, budget: &Budget) -> Result<f64> {
    let log_v: Vec<f64> = h.vertex_weights.iter().map(|w| w.ln()).collect();
    let log_e: Vec<Vec<f64>> = h.edge_weights.iter().map(|r| r.iter().map(|w| w.ln()).collect()).collect();
    let mut total = 0.0;
    for comp in g.components_bfs() {
        budget.check_colorings(comp.len(), h.k())?;
        let mut image = vec![usize::MAX; g.vertex_count()];
        let mut acc = LogSumExp::default();
        log_component(g, &log_v, &log_e, &comp, 0, &mut image, 0.0, &mut acc);
        let value = acc.value();
        if value == f64::NEG_INFINITY {
            return Err(Error::HardCoreZero);
        }
        total += value;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn log_component(
    g: &SimpleGraph,
    log_v: &[f64],
    log_e: &[Vec<f64>],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    partial: f64,
    acc: &mut LogSumExp,
) {
    if depth == order.len() {
        acc.add(partial);
        return;
    }
    let v = order[depth];
    for c in 0..log_v.len() {
        let mut w = partial + log_v[c];
        for &u in g.neighbors(v) {
            if image[u] != usize::MAX {
                w += log_e[c][image[u]];
            }
        }
        if w == f64::NEG_INFINITY {
            continue;
        }
        image[v] = c;
        log_component(g, log_v, log_e, order, depth + 1, image, w, acc);
        image[v] = usize::MAX;
    }
}

/// Floating-point weighted homomorphism sum (`exp` of the log-space value;
/// zero for hard-core targets with no admissible map).
pub fn weighted_hom(g: &SimpleGraph, h: &WeightedTarget<f64>, budget: &Budget) -> Result<f64> {
    match log_weighted_hom(g, h, budget) {
        Ok(x) => Ok(x.exp()),
        Err(Error::HardCoreZero) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `t(g, h) = hom(g, h) / k^{v(g)}`.
pub fn t_density(g: &SimpleGraph, h: &WeightedTarget<f64>, budget: &Budget) -> Result<f64> {
    match log_t_density(g, h, budget) {
        Ok(x) => Ok(x.exp()),
        Err(Error::HardCoreZero) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `ln t(g, h)`; fails with [`Error::HardCoreZero`] when `hom(g, h) = 0`.
pub fn log_t_density(g: &SimpleGraph, h: &WeightedTarget<f64>, budget: &Budget) -> Result<f64> {
    let log_hom = log_weighted_hom(g, h, budget)?;
    Ok(log_hom - g.vertex_count() as f64 * (h.k() as f64).ln())
}

/// Exact `t(g, h)`.
pub fn t_density_exact(g: &SimpleGraph, h: &WeightedTarget<BigRational>, budget: &Budget) -> Result<BigRational> {
    let hom = weighted_hom_exact(g, h, budget)?;
    let denom = num_traits::pow(BigRational::from_integer(h.k().into()), g.vertex_count());
    Ok(hom / denom)
}

impl WeightedTarget<BigRational> {
    pub fn is_all_ones(&self) -> bool {
        self.vertex_weights.iter().chain(self.edge_weights.iter().flatten()).all(One::is_one)
    }
}
