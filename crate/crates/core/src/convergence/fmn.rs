use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::cumulant::{joint_cumulant, moments_to_cumulants, ColoringHistogram, LambdaVector, Statistic};
use crate::error::{Error, Result};
use crate::graph::{spanning_tree_count, SimpleGraph};
use crate::scalar::{ratio_to_f64, ratio_vec};

/// Largest cumulant order accepted by [`direction_cumulants`].
pub const MAX_DIRECTION_ORDER: usize = 10;

/// `2^{r-1} r^{r-2} |W| (Delta+1)^{r-1} A^r`; for `r = 1` this is `|W| A`.
pub fn fmn_bound(r: usize, w: usize, delta: usize, a: f64) -> f64 {
    ln_fmn_bound(r, w, delta, a).exp()
}

/// Natural log of [`fmn_bound`], finite far beyond where the bound overflows.
pub fn ln_fmn_bound(r: usize, w: usize, delta: usize, a: f64) -> f64 {
    assert!(r >= 1, "cumulant order starts at 1");
    let r_f = r as f64;
    (r_f - 1.0) * 2f64.ln()
        + (r_f - 2.0) * r_f.ln()
        + (w as f64).ln()
        + (r_f - 1.0) * ((delta + 1) as f64).ln()
        + r_f * a.ln()
}

/// Largest `|Y_alpha|` for the direction `lambda0`: a vertex carries
/// `lambda_i`, a same-color edge `lambda_ii`, a cross edge `lambda_ij + lambda_ji`.
pub fn contribution_bound(lambda0: &LambdaVector) -> f64 {
    lambda0.statistic_weights().into_iter().fold(0.0, |m, w| m.max(w.abs()))
}

/// Statistic weights of `lambda` as exact rationals (each `f64` is dyadic).
pub fn exact_statistic_weights(lambda: &LambdaVector) -> Vec<BigRational> {
    let q = |x: f64| BigRational::from_float(x).expect("lambda entries are finite");
    Statistic::all(lambda.k)
        .into_iter()
        .map(|s| match s {
            Statistic::Vertex(i) => q(lambda.vertex[i]),
            Statistic::Pair(i, j) if i == j => q(lambda.edge[i][i]),
            Statistic::Pair(i, j) => q(lambda.edge[i][j]) + q(lambda.edge[j][i]),
        })
        .collect()
}

/// Cumulants of `Y = <lambda0, v(G) X>` next to the bound with `|W| = v + m`,
/// `Delta = 2D`, `A = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionCumulants {
    #[serde(with = "ratio_vec")]
    pub kappas: Vec<BigRational>,
    pub bounds: Vec<f64>,
    pub w: usize,
    pub delta: usize,
}

impl DirectionCumulants {
    /// Orders `r` (1-based) with `|kappa_r| >= bound`.
    pub fn violations(&self) -> Vec<usize> {
        self.kappas
            .iter()
            .zip(&self.bounds)
            .enumerate()
            .filter(|(_, (k, b))| ratio_to_f64(&k.abs()) >= **b)
            .map(|(r, _)| r + 1)
            .collect()
    }
}

/// Exact law of `Y` over all colorings, then raw moments and cumulants.
pub fn direction_cumulants(
    g: &SimpleGraph,
    lambda0: &LambdaVector,
    r_max: usize,
    budget: &Budget,
) -> Result<DirectionCumulants> {
    if r_max == 0 || r_max > MAX_DIRECTION_ORDER {
        return Err(Error::InvalidParameter(format!(
            "cumulant order must be in 1..={MAX_DIRECTION_ORDER}, got {r_max}"
        )));
    }
    if lambda0.sup_norm() != 1.0 {
        return Err(Error::InvalidParameter(format!(
            "direction must have sup norm 1, got {}",
            lambda0.sup_norm()
        )));
    }
    let hist = ColoringHistogram::build(g, lambda0.k, budget)?;
    let weights = exact_statistic_weights(lambda0);
    let mut sums = vec![BigRational::zero(); r_max];
    for (counts, mult) in hist.entries() {
        let y: BigRational = counts
            .iter()
            .zip(&weights)
            .map(|(&c, w)| w * BigInt::from(c))
            .fold(BigRational::zero(), |a, b| a + b);
        let mult = BigRational::from_integer((*mult).into());
        let mut power = mult;
        for s in sums.iter_mut() {
            power *= &y;
            *s += &power;
        }
    }
    let total = BigRational::from_integer(BigInt::from(hist.total().clone()));
    let moments: Vec<BigRational> = sums.into_iter().map(|s| s / &total).collect();
    let kappas = moments_to_cumulants(&moments);
    let w = g.vertex_count() + g.edge_count();
    let delta = 2 * g.effective_degree_bound();
    let bounds = (1..=r_max).map(|r| fmn_bound(r, w, delta, 1.0)).collect();
    Ok(DirectionCumulants { kappas, bounds, w, delta })
}

/// `1[edge of G has endpoint colors {i, j}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeIndicator {
    pub edge: usize,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeCheck {
    #[serde(with = "crate::scalar::ratio_string")]
    pub kappa: BigRational,
    #[serde(serialize_with = "serialize_biguint")]
    pub trees: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub bound: BigUint,
    pub holds: bool,
}

fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Joint cumulant of edge indicators under one uniform `k`-coloring of `G`,
/// against `2^{r-1} tree(H)` where `H` joins indicators whose edges meet.
/// When `H` is disconnected the cumulant must vanish exactly.
pub fn spanning_tree_cumulant_check(g: &SimpleGraph, k: usize, family: &[EdgeIndicator]) -> Result<TreeCheck> {
    let r = family.len();
    if r == 0 || r > crate::cumulant::MAX_PARTITION_SIZE {
        return Err(Error::InvalidParameter(format!("family size {r} out of range")));
    }
    let mut support: Vec<usize> = Vec::new();
    let mut ends = Vec::with_capacity(r);
    for y in family {
        let &(u, v) = g
            .edges()
            .get(y.edge)
            .ok_or(Error::IndexOutOfRange { index: y.edge, len: g.edge_count() })?;
        if y.pair.0 >= k || y.pair.1 >= k {
            return Err(Error::ColorOutOfRange { color: y.pair.0.max(y.pair.1), k });
        }
        for x in [u, v] {
            if !support.contains(&x) {
                support.push(x);
            }
        }
        ends.push((u, v));
    }
    let s = support.len();
    let local = |x: usize| support.iter().position(|&y| y == x).expect("endpoint in support");
    let local_ends: Vec<(usize, usize)> = ends.iter().map(|&(u, v)| (local(u), local(v))).collect();

    // Indicator values for every coloring of the support, as bit masks.
    let total = k.pow(s as u32);
    let mut masks = Vec::with_capacity(total);
    let mut colors = vec![0usize; s];
    for code in 0..total {
        let mut c = code;
        for slot in colors.iter_mut() {
            *slot = c % k;
            c /= k;
        }
        let mut mask = 0u32;
        for (p, (&(a, b), y)) in local_ends.iter().zip(family).enumerate() {
            let (ca, cb) = (colors[a].min(colors[b]), colors[a].max(colors[b]));
            if (ca, cb) == (y.pair.0.min(y.pair.1), y.pair.0.max(y.pair.1)) {
                mask |= 1 << p;
            }
        }
        masks.push(mask);
    }
    let kappa = joint_cumulant(r, |block: &[usize]| {
        let want: u32 = block.iter().map(|&p| 1 << p).sum();
        let hits = masks.iter().filter(|&&m| m & want == want).count();
        BigRational::new(BigInt::from(hits), BigInt::from(total))
    });

    let mut h_edges = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let (x, y) = (ends[a], ends[b]);
            if x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1 {
                h_edges.push((a, b));
            }
        }
    }
    let trees = spanning_tree_count(r, &h_edges);
    let bound = trees.clone() << (r - 1);
    let holds = if trees.is_zero() {
        kappa.is_zero()
    } else {
        kappa.abs() <= BigRational::from_integer(BigInt::from(bound.clone()))
    };
    Ok(TreeCheck { kappa, trees, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulant::Coordinate;
    use crate::graph::{generate, Family};
    use crate::scalar::{int, rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bound_values() {
        assert!((fmn_bound(1, 8, 4, 1.0) - 8.0).abs() < 1e-12);
        assert!((fmn_bound(2, 8, 4, 1.0) - 80.0).abs() < 1e-12);
        assert!((fmn_bound(3, 10, 4, 1.0) - 3000.0).abs() < 1e-9);
        assert!(ln_fmn_bound(500, 10, 4, 1.0).is_finite());
    }

    /// A cross edge contributes `lambda_ij + lambda_ji`, so with `A = 1` the
    /// mean already exceeds `|W|` for the all-ones direction.
    #[test]
    fn first_cumulant_needs_a_two() {
        let c8 = generate(&Family::Cycle(8)).unwrap();
        let mut ones = LambdaVector::zeros(2);
        for c in Coordinate::all(2) {
            ones.set(c, 1.0);
        }
        let d = direction_cumulants(&c8, &ones, 6, &Budget::default()).unwrap();
        assert_eq!(d.kappas[0], int(20));
        assert_eq!(d.violations(), vec![1]);
        assert_eq!(contribution_bound(&ones), 2.0);
        for (r, k) in d.kappas.iter().enumerate() {
            assert!(ratio_to_f64(&k.abs()) < fmn_bound(r + 1, d.w, d.delta, 2.0));
        }
    }

    #[test]
    fn single_coordinate_direction() {
        let k2 = generate(&Family::Complete(2)).unwrap();
        let mut l0 = LambdaVector::zeros(2);
        l0.set(Coordinate::Edge(0, 0), 1.0);
        let d = direction_cumulants(&k2, &l0, 2, &Budget::default()).unwrap();
        assert_eq!(d.kappas, vec![rational(1, 4), rational(3, 16)]);
    }

    #[test]
    fn vertex_directions_are_additive() {
        let mut l0 = LambdaVector::zeros(3);
        l0.vertex = vec![1.0, 0.5, -1.0];
        let single = direction_cumulants(&SimpleGraph::empty(1), &l0, 6, &Budget::default()).unwrap();
        for f in [Family::Cycle(5), Family::Path(4)] {
            let g = generate(&f).unwrap();
            let d = direction_cumulants(&g, &l0, 6, &Budget::default()).unwrap();
            for (a, b) in d.kappas.iter().zip(&single.kappas) {
                assert_eq!(a, &(b * int(g.vertex_count() as i64)));
            }
        }
    }

    #[test]
    fn bounds_hold_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c4 = generate(&Family::Cycle(4)).unwrap();
        let mut ones = LambdaVector::zeros(2);
        for c in Coordinate::all(2) {
            ones.set(c, 1.0);
        }
        let d = direction_cumulants(&c4, &ones, 6, &Budget::default()).unwrap();
        assert!(ratio_to_f64(&d.kappas[1]) <= 80.0);
        assert!(d.violations().iter().all(|&r| r == 1));
        for _ in 0..5 {
            let dir = LambdaVector::random_signs(2, &mut rng);
            let d = direction_cumulants(&c4, &dir, 6, &Budget::default()).unwrap();
            let a = contribution_bound(&dir);
            for (r, k) in d.kappas.iter().enumerate() {
                assert!(ratio_to_f64(&k.abs()) < fmn_bound(r + 1, d.w, d.delta, a));
            }
        }
    }

    #[test]
    fn direction_checks() {
        let c4 = generate(&Family::Cycle(4)).unwrap();
        assert!(direction_cumulants(&c4, &LambdaVector::zeros(2), 2, &Budget::default()).is_err());
        let mut l0 = LambdaVector::zeros(2);
        l0.vertex[0] = 1.0;
        assert!(direction_cumulants(&c4, &l0, 11, &Budget::default()).is_err());
    }

    #[test]
    fn tree_lemma_examples() {
        let p4 = generate(&Family::Path(4)).unwrap();
        let ind = |edge, pair| EdgeIndicator { edge, pair };
        let far = spanning_tree_cumulant_check(&p4, 2, &[ind(0, (0, 1)), ind(2, (0, 1))]).unwrap();
        assert!(far.kappa.is_zero() && far.trees.is_zero() && far.holds);

        let near = spanning_tree_cumulant_check(&p4, 2, &[ind(0, (0, 1)), ind(1, (0, 1))]).unwrap();
        // P(both cross) = 1/4, each 1/2.
        assert_eq!(near.kappa, int(0));
        let near = spanning_tree_cumulant_check(&p4, 2, &[ind(0, (0, 0)), ind(1, (0, 0))]).unwrap();
        assert_eq!(near.kappa, rational(1, 8) - rational(1, 16));
        assert_eq!(near.bound, BigUint::from(2u32));
        assert!(near.holds);

        let k3 = generate(&Family::Complete(3)).unwrap();
        let tri = spanning_tree_cumulant_check(&k3, 2, &[ind(0, (0, 0)), ind(1, (0, 0)), ind(2, (0, 0))]).unwrap();
        assert_eq!(tri.trees, BigUint::from(3u32));
        assert_eq!(tri.bound, BigUint::from(12u32));
        assert!(tri.holds);
    }
}
