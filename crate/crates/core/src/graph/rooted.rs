use super::{canonical_colored, CanonicalCode, SimpleGraph};
use crate::error::{Error, Result};

/// The radius-`r` neighborhood of a root: the subgraph induced by all
/// vertices at distance at most `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    graph: SimpleGraph,
    root: usize,
    radius: usize,
}

impl RootedBall {
    pub fn new(graph: SimpleGraph, root: usize, radius: usize) -> Result<Self> {
        if root >= graph.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: root,
                len: graph.vertex_count(),
            });
        }
        let dist = graph.distances_from(root);
        if let Some(v) = dist.iter().position(|d| d.is_none_or(|d| d > radius)) {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} lies farther than radius {radius} from root {root}"
            )));
        }
        Ok(RootedBall { graph, root, radius })
    }

    /// Ball of radius `radius` around `root` in `g`. The root becomes vertex 0
    /// and the other vertices follow in BFS order.
    pub fn around(g: &SimpleGraph, root: usize, radius: usize) -> RootedBall {
        let dist = g.distances_from(root);
        let mut order: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| dist[v].is_some_and(|d| d <= radius))
            .collect();
        order.sort_by_key(|&v| (dist[v], v));
        RootedBall {
            graph: g.induced_subgraph(&order),
            root: 0,
            radius,
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Code equal exactly when a root-preserving isomorphism exists.
    pub fn canonical_code(&self) -> CanonicalCode {
        let dist = self.graph.distances_from(self.root);
        let colors: Vec<usize> = dist.into_iter().map(|d| d.unwrap()).collect();
        canonical_colored(self.graph.adjacency(), &colors)
    }
}
