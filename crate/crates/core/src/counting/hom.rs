use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Edge-preserving maps.
    Hom,
    /// Injective edge-preserving maps.
    Inj,
    /// Injective maps onto an induced copy.
    Ind,
}

/// Number of edge-preserving maps `V(g) -> V(h)`. The empty graph has one.
pub fn hom_count(g: &SimpleGraph, h: &SimpleGraph) -> BigUint {
    count_maps(g, h, MapKind::Hom)
}

pub fn inj_count(g: &SimpleGraph, h: &SimpleGraph) -> BigUint {
    count_maps(g, h, MapKind::Inj)
}

pub fn ind_count(g: &SimpleGraph, h: &SimpleGraph) -> BigUint {
    count_maps(g, h, MapKind::Ind)
}

/// Backtracking over vertex maps with adjacency pruning. Homomorphism counts
/// factor over the components of `g`; injective counts do not, so those run
/// over the whole vertex order.
pub fn count_maps(g: &SimpleGraph, h: &SimpleGraph, kind: MapKind) -> BigUint {
    let comps = g.components_bfs();
    if kind == MapKind::Hom {
        return comps
            .iter()
            .map(|c| Search::new(g, h, kind, c.clone()).run())
            .fold(BigUint::one(), |acc, x| acc * x);
    }
    if g.vertex_count() > h.vertex_count() {
        return BigUint::zero();
    }
    Search::new(g, h, kind, comps.concat()).run()
}

struct Search<'a> {
    g: &'a SimpleGraph,
    h: &'a SimpleGraph,
    kind: MapKind,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    total: BigUint,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph, h: &'a SimpleGraph, kind: MapKind, order: Vec<usize>) -> Self {
        Search {
            g,
            h,
            kind,
            order,
            image: vec![usize::MAX; g.vertex_count()],
            used: vec![false; h.vertex_count()],
            total: BigUint::zero(),
        }
    }

    fn run(mut self) -> BigUint {
        if self.order.is_empty() {
            return BigUint::one();
        }
        self.extend(0);
        self.total
    }

    fn admissible(&self, v: usize, x: usize) -> bool {
        if self.kind != MapKind::Hom && self.used[x] {
            return false;
        }
        for &u in self.g.neighbors(v) {
            let y = self.image[u];
            if y != usize::MAX && !self.h.has_edge(x, y) {
                return false;
            }
        }
        if self.kind == MapKind::Ind {
            for (u, &y) in self.image.iter().enumerate() {
                if y != usize::MAX && u != v && !self.g.has_edge(u, v) && self.h.has_edge(x, y) {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, depth: usize) {
        let v = self.order[depth];
        let anchor = self
            .g
            .neighbors(v)
            .iter()
            .map(|&u| self.image[u])
            .find(|&y| y != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(y) => self.h.neighbors(y).to_vec(),
            None => (0..self.h.vertex_count()).collect(),
        };
        let last = depth + 1 == self.order.len();
        let mut leaves = 0u64;
        for x in candidates {
            if !self.admissible(v, x) {
                continue;
            }
            if last {
                leaves += 1;
                continue;
            }
            self.image[v] = x;
            self.used[x] = true;
            self.extend(depth + 1);
            self.used[x] = false;
            self.image[v] = usize::MAX;
        }
        if leaves > 0 {
            self.total += leaves;
        }
    }
}
