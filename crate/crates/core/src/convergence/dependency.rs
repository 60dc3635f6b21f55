use serde::Serialize;

use crate::graph::SimpleGraph;

/// A node of the dependency graph `L` on `V(G) ⊔ E(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Node {
    Vertex(usize),
    Edge(usize),
}

/// `L`: each vertex is joined to its incident edges, each edge to its two
/// endpoints and to every edge sharing an endpoint.
#[derive(Debug, Clone, Serialize)]
pub struct DependencyGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    max_degree: usize,
}

impl DependencyGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn node(&self, id: usize) -> Node {
        if id < self.vertex_count {
            Node::Vertex(id)
        } else {
            Node::Edge(id - self.vertex_count)
        }
    }

    pub fn id(&self, node: Node) -> usize {
        match node {
            Node::Vertex(v) => v,
            Node::Edge(e) => self.vertex_count + e,
        }
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency[id].len()
    }

    /// `Delta`.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The vertices of `G` whose colors determine the variable at `id`.
    pub fn support(&self, id: usize) -> Vec<usize> {
        match self.node(id) {
            Node::Vertex(v) => vec![v],
            Node::Edge(e) => {
                let (u, v) = self.edges[e];
                vec![u, v]
            }
        }
    }

    /// True when `a` and `b` are disjoint with no `L`-edge between them.
    pub fn separated(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|x| !b.contains(x) && self.adjacency[*x].iter().all(|y| !b.contains(y)))
    }
}

pub fn dependency_graph(g: &SimpleGraph) -> DependencyGraph {
    let n = g.vertex_count();
    let edges = g.edges().to_vec();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n + edges.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    for (v, inc) in incident.iter().enumerate() {
        for &e in inc {
            adjacency[v].push(n + e);
        }
    }
    for (e, &(u, v)) in edges.iter().enumerate() {
        let node = &mut adjacency[n + e];
        node.push(u);
        node.push(v);
        for &f in incident[u].iter().chain(&incident[v]) {
            if f != e {
                node.push(n + f);
            }
        }
        node.sort_unstable();
        node.dedup();
    }
    let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
    DependencyGraph { vertex_count: n, edges, adjacency, max_degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn examples() {
        let k2 = generate(&Family::Complete(2)).unwrap();
        let l = dependency_graph(&k2);
        assert_eq!(l.node_count(), 3);
        assert_eq!(l.neighbors(2), &[0, 1]);
        assert_eq!(l.max_degree(), 2);

        let c4 = generate(&Family::Cycle(4)).unwrap();
        assert_eq!(dependency_graph(&c4).max_degree(), 4);

        let star = SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = dependency_graph(&star);
        for e in 0..3 {
            assert_eq!(l.degree(l.id(Node::Edge(e))), 4);
        }
        assert!(l.max_degree() <= 6);
    }

    #[test]
    fn degree_bound_holds() {
        for f in [
            Family::Cycle(7),
            Family::Path(6),
            Family::Torus(3, 4),
            Family::Complete(5),
            Family::RandomRegular { n: 10, d: 3, seed: 4 },
        ] {
            let g = generate(&f).unwrap();
            let l = dependency_graph(&g);
            assert!(l.max_degree() <= 2 * g.max_degree(), "{f}");
            for id in 0..l.node_count() {
                for &j in l.neighbors(id) {
                    assert!(l.neighbors(j).contains(&id));
                }
            }
        }
    }

    /// Events carried by separated node sets are independent.
    #[test]
    fn separation_gives_independence() {
        let g = generate(&Family::Path(5)).unwrap();
        let l = dependency_graph(&g);
        let a = [l.id(Node::Edge(0))];
        let b = [l.id(Node::Edge(2)), l.id(Node::Vertex(4))];
        assert!(l.separated(&a, &b));
        assert!(!l.separated(&a, &[l.id(Node::Edge(1))]));

        let k: usize = 2;
        let n = g.vertex_count();
        let total = k.pow(n as u32);
        // Event A: edge 0 monochromatic in color 0. Event B: edge 2 cross-colored and vertex 4 has color 1.
        let (mut pa, mut pb, mut pab) = (0, 0, 0);
        for code in 0..total {
            let c: Vec<usize> = (0..n).map(|v| code >> v & 1).collect();
            let ea = c[0] == 0 && c[1] == 0;
            let eb = c[2] != c[3] && c[4] == 1;
            pa += ea as usize;
            pb += eb as usize;
            pab += (ea && eb) as usize;
        }
        assert_eq!(pab * total, pa * pb);
    }
}
