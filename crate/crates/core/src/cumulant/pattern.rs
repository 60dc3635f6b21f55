use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::partition::{enumerate_partitions, SetPartition};
use crate::error::{Error, Result};
use crate::graph::EdgeLabeledMultigraph;

/// A labeled pattern `J` whose vertices carry colors. Edge `p` of the pattern
/// prescribes the unordered color pair `(i_p, j_p)`; a same-color pair is two
/// distinct pattern vertices with equal colors, never a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorPattern {
    pattern: EdgeLabeledMultigraph,
    colors: Vec<usize>,
}

impl ColorPattern {
    pub fn new(pattern: EdgeLabeledMultigraph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != pattern.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} colors for {} pattern vertices",
                colors.len(),
                pattern.vertex_count()
            )));
        }
        Ok(ColorPattern { pattern, colors })
    }

    /// Builds a pattern realizing the given pair sequence: one vertex per
    /// color used by a cross pair, plus a fresh vertex for the second end of
    /// every same-color pair.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut colors: Vec<usize> = Vec::new();
        let mut primary: Vec<(usize, usize)> = Vec::new();
        let mut vertex_of = |c: usize, colors: &mut Vec<usize>| match primary.iter().find(|(col, _)| *col == c) {
            Some(&(_, v)) => v,
            None => {
                colors.push(c);
                primary.push((c, colors.len() - 1));
                colors.len() - 1
            }
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            let a = vertex_of(i, &mut colors);
            let b = if i == j {
                colors.push(j);
                colors.len() - 1
            } else {
                vertex_of(j, &mut colors)
            };
            edges.push((a, b));
        }
        let pattern = EdgeLabeledMultigraph::new(colors.len(), edges).expect("pattern edges are loop-free");
        ColorPattern { pattern, colors }
    }

    pub fn pattern(&self) -> &EdgeLabeledMultigraph {
        &self.pattern
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.pattern.edge_count()
    }

    /// The color pairs `(i_p, j_p)` with `i_p <= j_p`, in label order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pattern
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.colors[u], self.colors[v]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn max_color(&self) -> Option<usize> {
        self.colors.iter().copied().max()
    }

    /// Applies a permutation of the colors.
    pub fn permute_colors(&self, sigma: &[usize]) -> ColorPattern {
        ColorPattern {
            pattern: self.pattern.clone(),
            colors: self.colors.iter().map(|&c| sigma[c]).collect(),
        }
    }
}

/// Embeds a labeled pattern with distinct colors `0, 1, ..` on the vertices of
/// its canonical representative.
pub fn embed_pattern(j: &EdgeLabeledMultigraph, k: usize) -> Result<ColorPattern> {
    // First-appearance labeling puts isolated vertices last; drop them.
    let canonical = j.canonical();
    let n = canonical.non_isolated_count();
    let canonical = EdgeLabeledMultigraph::new(n, canonical.edges().to_vec())?;
    if k < n {
        return Err(Error::InvalidParameter(format!(
            "embedding a {n}-vertex pattern needs k >= {n}, got k = {k}"
        )));
    }
    Ok(ColorPattern {
        pattern: canonical,
        colors: (0..n).collect(),
    })
}

/// `x(E, J)`: the probability that a uniform `k`-coloring of the vertices of
/// `e` gives every labeled edge `p` the endpoint colors `{i_p, j_p}`.
pub fn x_value(e: &EdgeLabeledMultigraph, pairs: &[(usize, usize)], k: usize) -> Result<BigRational> {
    if pairs.len() != e.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "pattern has {} edges but {} color pairs were given",
            e.edge_count(),
            pairs.len()
        )));
    }
    if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= k || j >= k) {
        return Err(Error::ColorOutOfRange { color: i.max(j), k });
    }
    let n = e.vertex_count();
    // incident[v] = (label, other endpoint)
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (p, &(u, v)) in e.edges().iter().enumerate() {
        incident[u].push((p, v));
        incident[v].push((p, u));
    }
    let mut colors = vec![usize::MAX; n];
    let hits = count_colorings(0, &incident, pairs, k, &mut colors);
    let denom = num_traits::pow(BigInt::from(k), n);
    Ok(BigRational::new(hits, denom))
}

fn count_colorings(
    v: usize,
    incident: &[Vec<(usize, usize)>],
    pairs: &[(usize, usize)],
    k: usize,
    colors: &mut [usize],
) -> BigInt {
    if v == colors.len() {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    'color: for c in 0..k {
        for &(p, w) in &incident[v] {
            let (i, j) = pairs[p];
            if c != i && c != j {
                continue 'color;
            }
            let other = colors[w];
            if other != usize::MAX && (c.min(other), c.max(other)) != (i.min(j), i.max(j)) {
                continue 'color;
            }
        }
        colors[v] = c;
        total += count_colorings(v + 1, incident, pairs, k, colors);
        colors[v] = usize::MAX;
    }
    total
}

/// `F_pi`: the disjoint union over blocks `B` of the subgraph spanned by the
/// edges with labels in `B`; every edge keeps its label.
pub fn f_pi(f: &EdgeLabeledMultigraph, pi: &SetPartition) -> EdgeLabeledMultigraph {
    let mut edges = vec![(0, 0); f.edge_count()];
    let mut next = 0;
    for block in pi.blocks() {
        let mut local: Vec<(usize, usize)> = Vec::new();
        let mut id = |x: usize, next: &mut usize| match local.iter().find(|(o, _)| *o == x) {
            Some(&(_, n)) => n,
            None => {
                local.push((x, *next));
                *next += 1;
                *next - 1
            }
        };
        for &p in block {
            let (u, v) = f.edges()[p];
            let a = id(u, &mut next);
            let b = id(v, &mut next);
            edges[p] = (a, b);
        }
    }
    EdgeLabeledMultigraph::new(next, edges).expect("blocks of a loop-free pattern are loop-free")
}

/// `kappa(F, J) = sum_pi (|pi|-1)! (-1)^{|pi|-1} x(F_pi, J)`.
pub fn kappa_fj(f: &EdgeLabeledMultigraph, pairs: &[(usize, usize)], k: usize) -> Result<BigRational> {
    let l = f.edge_count();
    if pairs.len() != l {
        return Err(Error::InvalidParameter(format!(
            "F has {l} edges but J has {}",
            pairs.len()
        )));
    }
    let mut total = BigRational::zero();
    for pi in enumerate_partitions(l)? {
        let x = x_value(&f_pi(f, &pi), pairs, k)?;
        total += x * BigRational::from_integer(pi.mobius_weight().into());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    fn multi(e: &[(usize, usize)]) -> EdgeLabeledMultigraph {
        EdgeLabeledMultigraph::from_edges(e.to_vec()).unwrap()
    }

    /// Brute-force x over all colorings.
    fn x_brute(e: &EdgeLabeledMultigraph, pairs: &[(usize, usize)], k: usize) -> BigRational {
        let n = e.vertex_count();
        let total = k.pow(n as u32);
        let mut hits = 0i64;
        for code in 0..total {
            let col: Vec<usize> = (0..n).map(|v| code / k.pow(v as u32) % k).collect();
            let ok = e.edges().iter().zip(pairs).all(|(&(u, v), &(i, j))| {
                let (a, b) = (col[u].min(col[v]), col[u].max(col[v]));
                (a, b) == (i.min(j), i.max(j))
            });
            hits += i64::from(ok);
        }
        rational(hits, total as i64)
    }

    #[test]
    fn x_examples() {
        let edge = multi(&[(0, 1)]);
        assert_eq!(x_value(&edge, &[(0, 1)], 2).unwrap(), rational(1, 2));
        assert_eq!(x_value(&edge, &[(0, 0)], 2).unwrap(), rational(1, 4));
        let two = multi(&[(0, 1), (2, 3)]);
        assert_eq!(x_value(&two, &[(0, 1), (0, 1)], 2).unwrap(), rational(1, 4));
        assert!(x_value(&edge, &[(0, 2)], 2).is_err());
    }

    #[test]
    fn x_matches_brute_force() {
        let patterns = [
            multi(&[(0, 1), (1, 2), (2, 0)]),
            multi(&[(0, 1), (0, 1), (1, 2)]),
            multi(&[(0, 1), (2, 3), (1, 2)]),
        ];
        let pair_sets = [
            vec![(0, 1), (1, 2), (0, 2)],
            vec![(0, 0), (0, 1), (1, 1)],
            vec![(1, 2), (1, 2), (0, 0)],
            vec![(0, 1), (0, 1), (0, 1)],
        ];
        for f in &patterns {
            for pairs in &pair_sets {
                assert_eq!(x_value(f, pairs, 3).unwrap(), x_brute(f, pairs, 3));
            }
        }
    }

    #[test]
    fn f_pi_examples() {
        let path = multi(&[(0, 1), (1, 2)]);
        let parts = enumerate_partitions(2).unwrap();
        assert_eq!(f_pi(&path, &parts[0]).canonical_code(), path.canonical_code());
        let split = f_pi(&path, &parts[1]);
        assert_eq!(split.vertex_count(), 4);
        assert_eq!(split.canonical_code(), multi(&[(0, 1), (2, 3)]).canonical_code());

        let tri = multi(&[(0, 1), (1, 2), (2, 0)]);
        let p3 = enumerate_partitions(3).unwrap();
        let pi = p3.iter().find(|p| p.blocks() == [vec![0, 1], vec![2]]).unwrap();
        let g = f_pi(&tri, pi);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn kappa_fj_examples() {
        let edge = multi(&[(0, 1)]);
        assert_eq!(kappa_fj(&edge, &[(0, 1)], 2).unwrap(), rational(1, 2));
        let two = multi(&[(0, 1), (2, 3)]);
        assert_eq!(kappa_fj(&two, &[(0, 1), (1, 1)], 2).unwrap(), int(0));
        let par = multi(&[(0, 1), (0, 1)]);
        assert_eq!(kappa_fj(&par, &[(0, 1), (0, 1)], 2).unwrap(), rational(1, 4));
    }

    #[test]
    fn pairs_and_embedding() {
        let j = ColorPattern::from_pairs(&[(0, 0), (0, 1)]);
        assert_eq!(j.pairs(), vec![(0, 0), (0, 1)]);
        assert!(!j.pattern().has_isolated_vertices());

        let e = embed_pattern(&multi(&[(0, 1)]), 2).unwrap();
        assert_eq!(e.pairs(), vec![(0, 1)]);
        let p = embed_pattern(&multi(&[(4, 2), (2, 0)]), 4).unwrap();
        assert_eq!(p.pairs(), vec![(0, 1), (1, 2)]);
        let par = embed_pattern(&multi(&[(1, 0), (0, 1)]), 4).unwrap();
        assert_eq!(par.pairs(), vec![(0, 1), (0, 1)]);
        assert!(embed_pattern(&multi(&[(0, 1), (2, 3)]), 3).is_err());
    }
}
