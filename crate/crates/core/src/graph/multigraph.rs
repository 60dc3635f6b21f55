use std::fmt;

use serde::Serialize;

use super::{CanonicalCode, SimpleGraph};
use crate::error::{Error, Result};

/// Loop-free multigraph whose edges carry the labels `0..l` (edge `p` is
/// `edges()[p]`). Parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeLabeledMultigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeLabeledMultigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (p, (u, v)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(Error::InvalidGraph(format!("edge label {p} is a loop at {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge label {p} = ({u}, {v}) leaves 0..{vertex_count}"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(EdgeLabeledMultigraph {
            vertex_count,
            edges: normalized,
        })
    }

    /// Vertex count taken as one past the largest endpoint.
    pub fn from_edges(edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn touched(&self) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        for &(u, v) in &self.edges {
            seen[u] = true;
            seen[v] = true;
        }
        seen
    }

    pub fn non_isolated_count(&self) -> usize {
        self.touched().into_iter().filter(|&b| b).count()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.non_isolated_count() < self.vertex_count
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).any(|w| w[0] == w[1])
    }

    /// Edge-label sets of the connected components (isolated vertices ignored).
    pub fn edge_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (p, &(u, _)) in self.edges.iter().enumerate() {
            let root = find(&mut parent, u);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => g.push(p),
                None => groups.push((root, vec![p])),
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }

    /// Connected in the sense of the edge set: at most one edge component and
    /// no isolated vertices.
    pub fn is_connected(&self) -> bool {
        !self.has_isolated_vertices() && self.edge_components().len() <= 1
    }

    /// Subgraph formed by the edges with the given labels, keeping only their
    /// endpoints. Vertices are renumbered in order of first appearance and the
    /// selected edges are relabeled `0..labels.len()` in the given order.
    pub fn edge_subgraph(&self, labels: &[usize]) -> EdgeLabeledMultigraph {
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut edges = Vec::with_capacity(labels.len());
        for &p in labels {
            let (u, v) = self.edges[p];
            for x in [u, v] {
                if map[x] == usize::MAX {
                    map[x] = next;
                    next += 1;
                }
            }
            edges.push((map[u], map[v]));
        }
        EdgeLabeledMultigraph::new(next, edges).unwrap()
    }

    /// Graph with the same vertices and one edge per adjacent pair.
    pub fn simple_reduction(&self) -> SimpleGraph {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.dedup();
        SimpleGraph::new(self.vertex_count, e).unwrap()
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> EdgeLabeledMultigraph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        EdgeLabeledMultigraph::new(self.vertex_count, edges).unwrap()
    }

    /// The canonical representative: the isomorphic copy with the
    /// lexicographically largest edge sequence among all labelings that number
    /// vertices in order of first appearance along the edge labels. Isolated
    /// vertices take the highest indices.
    pub fn canonical(&self) -> EdgeLabeledMultigraph {
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut best: Option<(Vec<(usize, usize)>, Vec<usize>)> = None;
        let mut current = Vec::with_capacity(self.edges.len());
        self.canon_search(0, 0, &mut map, &mut current, &mut best);
        let (edges, _) = best.expect("search always reaches a leaf");
        EdgeLabeledMultigraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    fn canon_search(
        &self,
        p: usize,
        next: usize,
        map: &mut Vec<usize>,
        current: &mut Vec<(usize, usize)>,
        best: &mut Option<(Vec<(usize, usize)>, Vec<usize>)>,
    ) {
        if let Some((b, _)) = best {
            // Prune branches whose prefix is already smaller than the best.
            if current[..] < b[..current.len()] {
                return;
            }
        }
        if p == self.edges.len() {
            if best.as_ref().is_none_or(|(b, _)| current[..] > b[..]) {
                *best = Some((current.clone(), map.clone()));
            }
            return;
        }
        let (u, v) = self.edges[p];
        match (map[u] != usize::MAX, map[v] != usize::MAX) {
            (true, true) => {
                current.push(ordered(map[u], map[v]));
                self.canon_search(p + 1, next, map, current, best);
                current.pop();
            }
            (true, false) | (false, true) => {
                let fresh = if map[u] == usize::MAX { u } else { v };
                map[fresh] = next;
                current.push(ordered(map[u], map[v]));
                self.canon_search(p + 1, next + 1, map, current, best);
                current.pop();
                map[fresh] = usize::MAX;
            }
            (false, false) => {
                for (a, b) in [(u, v), (v, u)] {
                    map[a] = next;
                    map[b] = next + 1;
                    current.push((next, next + 1));
                    self.canon_search(p + 1, next + 2, map, current, best);
                    current.pop();
                    map[a] = usize::MAX;
                    map[b] = usize::MAX;
                }
            }
        }
    }

    /// Code equal for two multigraphs exactly when some vertex bijection maps
    /// edge `p` of one onto edge `p` of the other for every label `p`.
    pub fn canonical_code(&self) -> CanonicalCode {
        let c = self.canonical();
        let words = [c.vertex_count, c.edges.len()]
            .into_iter()
            .chain(c.edges.iter().flat_map(|&(u, v)| [u, v]));
        CanonicalCode::from_words(words)
    }

    /// Disjoint union; `other`'s vertices are shifted past ours and its edge
    /// labels follow ours.
    pub fn disjoint_union(&self, other: &EdgeLabeledMultigraph) -> EdgeLabeledMultigraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        EdgeLabeledMultigraph {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl fmt::Display for EdgeLabeledMultigraph {
    /// Compact notation such as `3:0-1,1-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.vertex_count)?;
        for (p, (u, v)) in self.edges.iter().enumerate() {
            if p > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

/// The labeled multigraph induced by an ordered tuple of edge indices of `g`.
/// Repeated indices give parallel edges.
pub fn induced_pattern(g: &SimpleGraph, tuple: &[usize]) -> Result<EdgeLabeledMultigraph> {
    let m = g.edge_count();
    let mut map: Vec<(usize, usize)> = Vec::with_capacity(2 * tuple.len());
    let mut edges = Vec::with_capacity(tuple.len());
    let lookup = |x: usize, map: &mut Vec<(usize, usize)>| match map.iter().find(|(v, _)| *v == x) {
        Some(&(_, i)) => i,
        None => {
            let i = map.len();
            map.push((x, i));
            i
        }
    };
    for &idx in tuple {
        if idx >= m {
            return Err(Error::IndexOutOfRange { index: idx, len: m });
        }
        let (u, v) = g.edges()[idx];
        let a = lookup(u, &mut map);
        let b = lookup(v, &mut map);
        edges.push((a, b));
    }
    EdgeLabeledMultigraph::new(map.len(), edges)
}
