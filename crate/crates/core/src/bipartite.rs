//! Simple bipartite graphs `G[X, Y]` and their subgraphs.
//!
//! In the incidence graph of a hypergraph the X side holds one node per
//! edge and the Y side one node per vertex. Everything downstream (parity
//! factors, spanning trees, walks) works on this representation.

use std::fmt;

use crate::error::{Error, Result};

/// A node of a bipartite graph, tagged with its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    X(usize),
    Y(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::X(i) => write!(f, "x{i}"),
            Node::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// Simple bipartite graph with sorted adjacency lists on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_adj: Vec<Vec<usize>>,
    y_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from `(x, y)` pairs. Parallel pairs and out-of-range
    /// nodes are rejected.
    pub fn new(x_count: usize, y_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut x_adj = vec![Vec::new(); x_count];
        let mut y_adj = vec![Vec::new(); y_count];
        for &(x, y) in edges {
            if x >= x_count || y >= y_count {
                return Err(Error::OutOfRange {
                    what: "bipartite edge",
                    detail: format!("({x}, {y}) with |X| = {x_count}, |Y| = {y_count}"),
                });
            }
            x_adj[x].push(y);
            y_adj[y].push(x);
        }
        for (x, adj) in x_adj.iter_mut().enumerate() {
            adj.sort_unstable();
            if let Some(w) = adj.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::OutOfRange {
                    what: "bipartite edge",
                    detail: format!("parallel pair ({x}, {})", w[0]),
                });
            }
        }
        for adj in &mut y_adj {
            adj.sort_unstable();
        }
        Ok(Self { x_adj, y_adj })
    }

    pub fn x_count(&self) -> usize {
        self.x_adj.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_adj.len()
    }

    pub fn node_count(&self) -> usize {
        self.x_count() + self.y_count()
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(Vec::len).sum()
    }

    /// Y-neighbours of X-node `x`, ascending.
    pub fn x_neighbors(&self, x: usize) -> &[usize] {
        &self.x_adj[x]
    }

    /// X-neighbours of Y-node `y`, ascending.
    pub fn y_neighbors(&self, y: usize) -> &[usize] {
        &self.y_adj[y]
    }

    pub fn degree(&self, node: Node) -> usize {
        match node {
            Node::X(x) => self.x_adj[x].len(),
            Node::Y(y) => self.y_adj[y].len(),
        }
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.x_count() && self.x_adj[x].binary_search(&y).is_ok()
    }

    /// All edges as `(x, y)` pairs, ordered by `x` then `y`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// Dense index of a node: X-nodes first, then Y-nodes.
    pub fn index(&self, node: Node) -> usize {
        match node {
            Node::X(x) => x,
            Node::Y(y) => self.x_count() + y,
        }
    }

    pub fn node_at(&self, index: usize) -> Node {
        if index < self.x_count() {
            Node::X(index)
        } else {
            Node::Y(index - self.x_count())
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.node_count());
        for (x, y) in self.edges() {
            dsu.union(x, self.x_count() + y);
        }
        dsu.count() <= 1
    }
}

/// A subgraph given by a set of `(x, y)` edges of some host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subgraph {
    edges: Vec<(usize, usize)>,
}

impl Subgraph {
    /// Edges are sorted and deduplicated.
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn x_degrees(&self, x_count: usize) -> Vec<usize> {
        let mut deg = vec![0; x_count];
        for &(x, _) in &self.edges {
            deg[x] += 1;
        }
        deg
    }

    pub fn y_degrees(&self, y_count: usize) -> Vec<usize> {
        let mut deg = vec![0; y_count];
        for &(_, y) in &self.edges {
            deg[y] += 1;
        }
        deg
    }

    /// Checks that every X-node has degree exactly 2 and every Y-node even
    /// degree, and that every edge exists in `host`.
    pub fn check_even_x2(&self, host: &BipartiteGraph) -> Result<()> {
        for &(x, y) in &self.edges {
            if !host.has_edge(x, y) {
                return Err(Error::DegreeSpec(format!(
                    "({x}, {y}) is not an edge of the host"
                )));
            }
        }
        if let Some((x, d)) = self
            .x_degrees(host.x_count())
            .into_iter()
            .enumerate()
            .find(|&(_, d)| d != 2)
        {
            return Err(Error::DegreeSpec(format!(
                "x{x} has degree {d}, expected 2"
            )));
        }
        if let Some((y, d)) = self
            .y_degrees(host.y_count())
            .into_iter()
            .enumerate()
            .find(|&(_, d)| d % 2 == 1)
        {
            return Err(Error::DegreeSpec(format!("y{y} has odd degree {d}")));
        }
        Ok(())
    }

    /// Whether the subgraph, viewed on all `x_count + y_count` nodes, is
    /// connected (isolated nodes count as separate components).
    pub fn spans_connected(&self, x_count: usize, y_count: usize) -> bool {
        let mut dsu = Dsu::new(x_count + y_count);
        for &(x, y) in &self.edges {
            dsu.union(x, x_count + y);
        }
        dsu.count() <= 1
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}
