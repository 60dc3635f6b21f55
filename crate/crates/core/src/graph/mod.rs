//! Graph and pattern representations shared by every other module.

mod canon;
mod generate;
mod io;
mod multigraph;
mod rooted;
mod spanning;

pub use canon::{canonical_colored, CanonicalCode};
pub use generate::{generate, Family, FamilyKind, MAX_REGULAR_RETRIES};
pub use io::{parse_graph, serialize_graph};
pub use multigraph::{induced_pattern, EdgeLabeledMultigraph};
pub use rooted::RootedBall;
pub use spanning::spanning_tree_count;

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Finite undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted as pairs `(u, v)` with `u < v`; the position of an
/// edge in [`SimpleGraph::edges`] is its edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degree_bound: Option<usize>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges: list,
            degree_bound: None,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: Vec::new(),
            degree_bound: None,
            adj: vec![Vec::new(); n],
        }
    }

    /// Declares a maximum-degree bound `D`, checking it against every vertex.
    pub fn with_degree_bound(mut self, bound: usize) -> Result<Self> {
        if bound == 0 && !self.edges.is_empty() {
            return Err(Error::InvalidGraph("degree bound must be positive".into()));
        }
        if let Some(v) = (0..self.n).find(|&v| self.degree(v) > bound) {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} has degree {} > declared bound {bound}",
                self.degree(v)
            )));
        }
        self.degree_bound = Some(bound);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.degree_bound
    }

    /// The declared bound if any, otherwise the observed maximum degree.
    pub fn effective_degree_bound(&self) -> usize {
        self.degree_bound.unwrap_or_else(|| self.max_degree())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// BFS distances from `root`; `None` for unreachable vertices.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each listed in BFS order from its smallest vertex.
    pub fn components_bfs(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut order = vec![s];
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
            comps.push(order);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        SimpleGraph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Canonical code up to (unlabeled) isomorphism.
    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_colored(&self.adj, &vec![0; self.n])
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }
}
