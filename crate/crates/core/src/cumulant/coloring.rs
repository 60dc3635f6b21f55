use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::joint::joint_cumulant;
use super::lambda::Statistic;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// `X(G, C)` for one fixed coloring, kept as integer counts over `v(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorStatistics {
    k: usize,
    v: usize,
    vertex_counts: Vec<u64>,
    pair_counts: Vec<Vec<u64>>,
}

impl ColorStatistics {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    /// `X_i`: proportion of vertices with color `i`.
    pub fn x_vertex(&self, i: usize) -> BigRational {
        self.ratio(self.vertex_counts[i])
    }

    /// `X_{ij} = X_{ji}`: edges between color classes `i` and `j` (within class
    /// `i` when `i == j`), over `v(G)`.
    pub fn x_edge(&self, i: usize, j: usize) -> BigRational {
        self.ratio(self.pair_counts[i][j])
    }

    /// `v(G) * X_{ij}`.
    pub fn edge_count_between(&self, i: usize, j: usize) -> u64 {
        self.pair_counts[i][j]
    }

    pub fn vertices_with_color(&self, i: usize) -> u64 {
        self.vertex_counts[i]
    }

    fn ratio(&self, c: u64) -> BigRational {
        BigRational::new(BigInt::from(c), BigInt::from(self.v.max(1)))
    }
}

/// Color statistics of `g` under `coloring` (vertex -> color in `0..k`).
pub fn color_statistics(g: &SimpleGraph, coloring: &[usize], k: usize) -> Result<ColorStatistics> {
    if coloring.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.vertex_count()
        )));
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= k) {
        return Err(Error::ColorOutOfRange { color: c, k });
    }
    let mut vertex_counts = vec![0; k];
    for &c in coloring {
        vertex_counts[c] += 1;
    }
    let mut pair_counts = vec![vec![0; k]; k];
    for &(u, v) in g.edges() {
        let (a, b) = (coloring[u], coloring[v]);
        pair_counts[a][b] += 1;
        if a != b {
            pair_counts[b][a] += 1;
        }
    }
    Ok(ColorStatistics {
        k,
        v: g.vertex_count(),
        vertex_counts,
        pair_counts,
    })
}

/// Visits every coloring `V(g) -> 0..k` once, passing the statistic vector
/// (indexed by [`Statistic::index`]). Counts are maintained incrementally
/// along a depth-first enumeration.
pub(crate) fn for_each_coloring<F: FnMut(&[u32])>(g: &SimpleGraph, k: usize, budget: &Budget, mut visit: F) -> Result<()> {
    budget.check_colorings(g.vertex_count(), k)?;
    let n = g.vertex_count();
    let pair_index: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| Statistic::Pair(a.min(b), a.max(b)).index(k)).collect())
        .collect();
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&u| u < v).collect())
        .collect();
    let mut counts = vec![0u32; Statistic::count(k)];
    let mut colors = vec![0usize; n];

    struct Ctx<'a, F> {
        k: usize,
        pair_index: &'a [Vec<usize>],
        earlier: &'a [Vec<usize>],
        visit: F,
    }
    fn dfs<F: FnMut(&[u32])>(ctx: &mut Ctx<'_, F>, v: usize, counts: &mut [u32], colors: &mut [usize]) {
        if v == colors.len() {
            (ctx.visit)(counts);
            return;
        }
        for c in 0..ctx.k {
            colors[v] = c;
            counts[c] += 1;
            for &u in &ctx.earlier[v] {
                counts[ctx.pair_index[c][colors[u]]] += 1;
            }
            dfs(ctx, v + 1, counts, colors);
            for &u in &ctx.earlier[v] {
                counts[ctx.pair_index[c][colors[u]]] -= 1;
            }
            counts[c] -= 1;
        }
    }
    let mut ctx = Ctx {
        k,
        pair_index: &pair_index,
        earlier: &earlier,
        visit: &mut visit,
    };
    dfs(&mut ctx, 0, &mut counts, &mut colors);
    Ok(())
}

/// The exact joint distribution of all color statistics under a uniform
/// random coloring: distinct statistic vectors with their multiplicities.
#[derive(Debug, Clone)]
pub struct ColoringHistogram {
    k: usize,
    v: usize,
    total: BigUint,
    entries: Vec<(Vec<u32>, u64)>,
}

impl ColoringHistogram {
    pub fn build(g: &SimpleGraph, k: usize, budget: &Budget) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for_each_coloring(g, k, budget, |counts| {
            if let Some(m) = map.get_mut(counts) {
                *m += 1;
            } else {
                map.insert(counts.to_vec(), 1);
            }
        })?;
        Ok(ColoringHistogram {
            k,
            v: g.vertex_count(),
            total: num_traits::pow(BigUint::from(k), g.vertex_count()),
            entries: map.into_iter().collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn entries(&self) -> &[(Vec<u32>, u64)] {
        &self.entries
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// `E[prod_p S_p]` for statistics `S_p` (each a count, i.e. `v(G)` times
    /// the corresponding coordinate of `X`).
    pub fn moment(&self, stats: &[Statistic]) -> BigRational {
        let idx: Vec<usize> = stats.iter().map(|s| s.index(self.k)).collect();
        let mut sum = BigUint::zero();
        for (counts, mult) in &self.entries {
            let mut prod = BigUint::from(*mult);
            for &i in &idx {
                if counts[i] == 0 {
                    prod = BigUint::zero();
                    break;
                }
                prod *= counts[i];
            }
            sum += prod;
        }
        BigRational::new(BigInt::from(sum), BigInt::from(self.total.clone()))
    }

    /// Joint cumulant `kappa(S_1, ..., S_l)` via the partition formula, with
    /// block moments read from this histogram.
    pub fn joint_cumulant(&self, stats: &[Statistic]) -> BigRational {
        let mut cache: HashMap<Vec<usize>, BigRational> = HashMap::new();
        joint_cumulant(stats.len(), |block: &[usize]| {
            cache
                .entry(block.to_vec())
                .or_insert_with(|| {
                    let chosen: Vec<Statistic> = block.iter().map(|&p| stats[p]).collect();
                    self.moment(&chosen)
                })
                .clone()
        })
    }

    /// Exact distribution of the linear form `sum_s weights[s] * S_s` with
    /// integer weights, as value -> multiplicity.
    pub fn linear_form_distribution(&self, weights: &[i64]) -> BTreeMap<i64, u64> {
        let mut dist = BTreeMap::new();
        for (counts, mult) in &self.entries {
            let y: i64 = counts.iter().zip(weights).map(|(&c, &w)| i64::from(c) * w).sum();
            *dist.entry(y).or_insert(0) += mult;
        }
        dist
    }

    /// Checks the total mass.
    pub fn mass(&self) -> BigUint {
        self.entries.iter().map(|(_, m)| BigUint::from(*m)).fold(BigUint::zero(), |a, b| a + b)
    }
}
