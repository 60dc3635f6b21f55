use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{EdgeLabeledMultigraph, SimpleGraph};
use crate::linalg::bareiss_determinant;

/// Number of spanning trees by the matrix-tree theorem: the determinant of
/// the Laplacian with the last row and column removed. Parallel edges count
/// as distinct edges. A single vertex has one spanning tree; the empty graph
/// has none.
pub fn spanning_tree_count(n: usize, edges: &[(usize, usize)]) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    if n == 1 {
        return BigUint::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n - 1]; n - 1];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        for (a, b) in [(u, v), (v, u)] {
            if a < n - 1 {
                lap[a][a] += 1;
                if b < n - 1 {
                    lap[a][b] -= 1;
                }
            }
        }
    }
    bareiss_determinant(lap)
        .to_biguint()
        .expect("reduced Laplacian determinant is nonnegative")
}

impl SimpleGraph {
    pub fn spanning_tree_count(&self) -> BigUint {
        spanning_tree_count(self.vertex_count(), self.edges())
    }
}

impl EdgeLabeledMultigraph {
    pub fn spanning_tree_count(&self) -> BigUint {
        spanning_tree_count(self.vertex_count(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    /// Counts (n-1)-edge subsets that connect all vertices.
    fn brute_force(n: usize, edges: &[(usize, usize)]) -> u64 {
        let m = edges.len();
        let mut count = 0;
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize + 1 != n {
                continue;
            }
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut acyclic = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a == b {
                        acyclic = false;
                        break;
                    }
                    parent[a] = b;
                }
            }
            count += u64::from(acyclic);
        }
        count
    }

    #[test]
    fn small_cases() {
        assert_eq!(spanning_tree_count(3, &[(0, 1), (1, 2), (0, 2)]), BigUint::from(3u32));
        assert_eq!(spanning_tree_count(4, &[(0, 1), (2, 3)]), BigUint::zero());
        let c4 = generate(&Family::Cycle(4)).unwrap();
        assert_eq!(c4.spanning_tree_count(), BigUint::from(4u32));
        assert_eq!(spanning_tree_count(1, &[]), BigUint::one());
        let k5 = generate(&Family::Complete(5)).unwrap();
        assert_eq!(k5.spanning_tree_count(), BigUint::from(125u32));
    }

    #[test]
    fn parallel_edges_counted() {
        let par = EdgeLabeledMultigraph::from_edges(vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(par.spanning_tree_count(), BigUint::from(2u32));
    }

    #[test]
    fn agrees_with_enumeration() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)]),
            (5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]),
            (3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]),
            (2, vec![(0, 1), (0, 1), (0, 1)]),
        ];
        for (n, edges) in cases {
            assert_eq!(
                spanning_tree_count(n, &edges),
                BigUint::from(brute_force(n, &edges)),
                "n={n} edges={edges:?}"
            );
        }
    }
}
