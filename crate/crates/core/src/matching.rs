//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm).

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph on nodes `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list; duplicate edges collapse, loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::OutOfRange {
                    what: "graph edge",
                    detail: format!("({u}, {v}) with n = {n}"),
                });
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        g.normalize();
        Ok(g)
    }

    /// Adds an edge without normalising; call [`SimpleGraph::normalize`]
    /// once all edges are in.
    pub(crate) fn push_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub(crate) fn normalize(&mut self) {
        for a in &mut self.adj {
            a.sort_unstable();
            a.dedup();
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// A matching stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn mate(&self, u: usize) -> Option<usize> {
        self.mate[u]
    }

    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    /// Matched pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }
}

/// Maximum-cardinality matching. Deterministic: nodes and neighbours are
/// scanned in ascending order.
pub fn max_matching(g: &SimpleGraph) -> Matching {
    let n = g.node_count();
    let mut search = Search {
        g,
        mate: vec![None; n],
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // Greedy start; the blossom search only has to repair what is left.
    for u in 0..n {
        if search.mate[u].is_none() {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| search.mate[v].is_none()) {
                search.mate[u] = Some(v);
                search.mate[v] = Some(u);
            }
        }
    }
    for root in 0..n {
        if search.mate[root].is_none() {
            if let Some(end) = search.find_augmenting_path(root) {
                search.augment(end);
            }
        }
    }
    Matching { mate: search.mate }
}

struct Search<'a> {
    g: &'a SimpleGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search<'_> {
    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.node_count();
        self.used.fill(false);
        self.parent.fill(None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur_base = self.lca(v, to);
                    self.blossom.fill(false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(next) => {
                            self.used[next] = true;
                            self.queue.push_back(next);
                        }
                    }
                }
            }
        }
        None
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.node_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("outer node has a tree parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path to lca passes matched nodes");
            b = self.parent[m].expect("outer node has a tree parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("inner blossom node is matched");
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("outer node has a tree parent");
        }
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path is rooted");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(u) => v = u,
                None => break,
            }
        }
    }
}
