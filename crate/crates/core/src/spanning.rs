//! Spanning structures behind the spanning Euler tour construction.
//!
//! Starting from a spanning tree `F` of the incidence graph in which every
//! X-node has degree at most 2, the X-nodes of degree 2 (the set `A`) form a
//! tree `F*` through all of Y. Its odd-degree Y-nodes `O` are paired up by
//! new degree-2 X-nodes `W`, and the X-nodes outside `A` together with `W`
//! form an auxiliary graph `G*`. An even `(X*, 2)`-regular subgraph `Q` of
//! `G*`, with `W` dropped, fixes the parity at `O`, so `F* ∪ Q*` is a
//! connected even `(X, 2)`-regular subgraph of the incidence graph.

use crate::bipartite::{BipartiteGraph, Dsu, Node, Subgraph};
use crate::error::{Error, Result};

/// Spanning tree of a bipartite graph with every X-node of tree-degree at
/// most 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTree {
    /// Tree edges `(x, y)`, ascending.
    pub edges: Vec<(usize, usize)>,
    /// X-nodes of tree-degree 2, ascending.
    pub a: Vec<usize>,
}

impl NiceTree {
    pub fn x_degrees(&self, x_count: usize) -> Vec<usize> {
        let mut deg = vec![0; x_count];
        for &(x, _) in &self.edges {
            deg[x] += 1;
        }
        deg
    }

    /// Parent of every node when the tree is rooted at `root`; the root maps
    /// to `None`.
    pub fn parents(&self, g: &BipartiteGraph, root: Node) -> Vec<Option<Node>> {
        let xc = g.x_count();
        let mut adj = vec![Vec::new(); g.node_count()];
        for &(x, y) in &self.edges {
            adj[x].push(xc + y);
            adj[xc + y].push(x);
        }
        let mut parent = vec![None; g.node_count()];
        let mut seen = vec![false; g.node_count()];
        let start = g.index(root);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(g.node_at(u));
                    stack.push(v);
                }
            }
        }
        parent
    }

    /// Checks that the edges form a spanning tree of `g` with X-degrees at
    /// most 2 and that `a` lists exactly the X-nodes of degree 2.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        if self.edges.len() + 1 != g.node_count() {
            return Err(Error::Internal(format!(
                "tree has {} edges on {} nodes",
                self.edges.len(),
                g.node_count()
            )));
        }
        let tree = Subgraph::new(self.edges.clone());
        if tree.len() != self.edges.len() || self.edges.iter().any(|&(x, y)| !g.has_edge(x, y)) {
            return Err(Error::Internal(
                "tree edges are not distinct edges of G".into(),
            ));
        }
        if !tree.spans_connected(g.x_count(), g.y_count()) {
            return Err(Error::Internal("tree is not spanning".into()));
        }
        let deg = self.x_degrees(g.x_count());
        if let Some(x) = deg.iter().position(|&d| d > 2) {
            return Err(Error::Internal(format!("x{x} has tree-degree {}", deg[x])));
        }
        let a: Vec<usize> = (0..g.x_count()).filter(|&x| deg[x] == 2).collect();
        if a != self.a {
            return Err(Error::Internal("A does not match tree-degrees".into()));
        }
        Ok(())
    }
}

/// Outcome of the nice spanning tree search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSearch {
    Found(NiceTree),
    /// Exhaustive search proved that no nice spanning tree exists.
    NoneExists,
    /// Greedy growth failed and the graph is too large for the exhaustive
    /// fallback; existence is undecided.
    GreedyFailed,
}

/// Largest `|X| + |Y|` for which a failed greedy search falls back to
/// exhaustive search.
pub const EXHAUSTIVE_TREE_CAP: usize = 24;

/// Searches for a spanning tree with X-degrees at most 2.
///
/// Greedy growth from each seed X-node (ascending) with at least two
/// neighbours: the seed joins its two smallest neighbours, then an X-node
/// that touches both the tree and an uncovered Y-node is attached, picking
/// the one with the most uncovered neighbours and the smallest index on ties.
/// Once all of Y is covered, the remaining X-nodes hang off as leaves. When
/// every seed gets stuck, graphs with `|X| + |Y| <= EXHAUSTIVE_TREE_CAP` are
/// searched exhaustively.
pub fn find_nice_spanning_tree(g: &BipartiteGraph) -> Result<TreeSearch> {
    if g.y_count() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.y_count() == 1 {
        return Ok(TreeSearch::Found(finish_tree(g, &[])));
    }
    for seed in 0..g.x_count() {
        if g.x_neighbors(seed).len() < 2 {
            continue;
        }
        if let Some(connectors) = grow_from(g, seed) {
            return Ok(TreeSearch::Found(finish_tree(g, &connectors)));
        }
    }
    if g.node_count() > EXHAUSTIVE_TREE_CAP {
        return Ok(TreeSearch::GreedyFailed);
    }
    let mut chosen = Vec::new();
    let dsu = Dsu::new(g.y_count());
    if exhaustive(g, 0, dsu, &mut chosen) {
        Ok(TreeSearch::Found(finish_tree(g, &chosen)))
    } else {
        Ok(TreeSearch::NoneExists)
    }
}

/// A degree-2 tree node `x` joined to `ys.0` and `ys.1`.
type Connector = (usize, (usize, usize));

fn grow_from(g: &BipartiteGraph, seed: usize) -> Option<Vec<Connector>> {
    let mut covered = vec![false; g.y_count()];
    let mut used = vec![false; g.x_count()];
    let n0 = g.x_neighbors(seed);
    covered[n0[0]] = true;
    covered[n0[1]] = true;
    used[seed] = true;
    let mut connectors = vec![(seed, (n0[0], n0[1]))];
    let mut remaining = g.y_count() - 2;
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for x in (0..g.x_count()).filter(|&x| !used[x]) {
            let ys = g.x_neighbors(x);
            let fresh = ys.iter().filter(|&&y| !covered[y]).count();
            if fresh == 0 || fresh == ys.len() {
                continue;
            }
            if best.is_none_or(|(_, f)| fresh > f) {
                best = Some((x, fresh));
            }
        }
        let (x, _) = best?;
        let ys = g.x_neighbors(x);
        let anchor = *ys.iter().find(|&&y| covered[y]).expect("touches the tree");
        let new = *ys
            .iter()
            .find(|&&y| !covered[y])
            .expect("touches uncovered Y");
        covered[new] = true;
        used[x] = true;
        connectors.push((x, (anchor.min(new), anchor.max(new))));
        remaining -= 1;
    }
    Some(connectors)
}

fn exhaustive(g: &BipartiteGraph, x: usize, dsu: Dsu, chosen: &mut Vec<Connector>) -> bool {
    if dsu.count() == 1 {
        return true;
    }
    if x == g.x_count() || g.x_count() - x < dsu.count() - 1 {
        return false;
    }
    let ys = g.x_neighbors(x);
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            let mut next = dsu.clone();
            if next.union(ys[i], ys[j]) {
                chosen.push((x, (ys[i], ys[j])));
                if exhaustive(g, x + 1, next, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
    }
    exhaustive(g, x + 1, dsu, chosen)
}

/// Degree-2 connectors plus every other X-node as a leaf on its smallest
/// neighbour.
fn finish_tree(g: &BipartiteGraph, connectors: &[Connector]) -> NiceTree {
    let mut in_a = vec![false; g.x_count()];
    let mut edges = Vec::with_capacity(g.node_count().saturating_sub(1));
    for &(x, (y1, y2)) in connectors {
        in_a[x] = true;
        edges.push((x, y1));
        edges.push((x, y2));
    }
    for (x, _) in in_a.iter().enumerate().filter(|(_, &a)| !a) {
        edges.push((x, g.x_neighbors(x)[0]));
    }
    edges.sort_unstable();
    NiceTree {
        edges,
        a: (0..g.x_count()).filter(|&x| in_a[x]).collect(),
    }
}

/// The tree `F* = F - (X \ A)` and its odd-degree Y-nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTree {
    /// Edges of `F*`, ascending.
    pub edges: Vec<(usize, usize)>,
    /// X-nodes of `F*` (the set `A`), ascending.
    pub a: Vec<usize>,
    /// Y-nodes of odd degree in `F*` (the set `O`), ascending.
    pub odd: Vec<usize>,
}

/// Drops the leaves `X \ A` from a nice tree. `O` is always even-sized and,
/// for `|Y| >= 2`, nonempty; a violation is reported as an internal error.
pub fn reduce_tree(g: &BipartiteGraph, tree: &NiceTree) -> Result<ReducedTree> {
    let mut in_a = vec![false; g.x_count()];
    for &x in &tree.a {
        in_a[x] = true;
    }
    let edges: Vec<(usize, usize)> = tree
        .edges
        .iter()
        .copied()
        .filter(|&(x, _)| in_a[x])
        .collect();
    let mut y_deg = vec![0usize; g.y_count()];
    for &(_, y) in &edges {
        y_deg[y] += 1;
    }
    let odd: Vec<usize> = (0..g.y_count()).filter(|&y| y_deg[y] % 2 == 1).collect();

    if tree.a.len() + 1 != g.y_count() {
        return Err(Error::Internal(format!(
            "|A| = {} but |Y| - 1 = {}",
            tree.a.len(),
            g.y_count() as isize - 1
        )));
    }
    let mut dsu = Dsu::new(g.node_count());
    for &(x, y) in &edges {
        dsu.union(x, g.x_count() + y);
    }
    // Components of F* plus one singleton per node outside A ∪ Y.
    if dsu.count() != 1 + g.x_count() - tree.a.len() {
        return Err(Error::Internal("F* is not a tree through all of Y".into()));
    }
    if odd.len() % 2 == 1 || (odd.is_empty() && g.y_count() >= 2) {
        return Err(Error::Internal(format!("|O| = {} in F*", odd.len())));
    }
    Ok(ReducedTree {
        edges,
        a: tree.a.clone(),
        odd,
    })
}

/// X-node of the auxiliary graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxNode {
    /// An original X-node outside `A`.
    Original(usize),
    /// New node `w_j` joined to the `j`-th pair of `O`.
    Pairing(usize),
}

/// `G* = G - A + R` with `X* = (X \ A) ∪ W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    pub graph: BipartiteGraph,
    /// Origin of each X*-node: originals first (ascending), then `W`.
    pub x_origin: Vec<AuxNode>,
    /// `(y_j, z_j)`: consecutive elements of the sorted set `O`.
    pub pairs: Vec<(usize, usize)>,
}

impl AuxGraph {
    pub fn w_count(&self) -> usize {
        self.pairs.len()
    }
}

/// Builds `G*`: removes `A`, pairs `O` in sorted order and joins each pair
/// through a new X-node.
pub fn build_aux_graph(g: &BipartiteGraph, reduced: &ReducedTree) -> Result<AuxGraph> {
    let mut in_a = vec![false; g.x_count()];
    for &x in &reduced.a {
        in_a[x] = true;
    }
    let mut x_origin = Vec::new();
    let mut edges = Vec::new();
    for x in (0..g.x_count()).filter(|&x| !in_a[x]) {
        let ys = g.x_neighbors(x);
        if ys.len() < 2 {
            return Err(Error::HypothesesViolated(format!(
                "x{x} outside A has degree {} < 2 in G*",
                ys.len()
            )));
        }
        let idx = x_origin.len();
        x_origin.push(AuxNode::Original(x));
        edges.extend(ys.iter().map(|&y| (idx, y)));
    }
    if reduced.odd.len() % 2 == 1 {
        return Err(Error::Internal("odd set has odd size".into()));
    }
    let pairs: Vec<(usize, usize)> = reduced.odd.chunks(2).map(|p| (p[0], p[1])).collect();
    for (j, &(y, z)) in pairs.iter().enumerate() {
        let idx = x_origin.len();
        x_origin.push(AuxNode::Pairing(j));
        edges.push((idx, y));
        edges.push((idx, z));
    }
    let graph = BipartiteGraph::new(x_origin.len(), g.y_count(), &edges)?;
    Ok(AuxGraph {
        graph,
        x_origin,
        pairs,
    })
}

/// Combines `F*` with `Q* = Q - W` into a connected even `(X, 2)`-regular
/// subgraph of `g` that touches every node.
pub fn assemble(
    g: &BipartiteGraph,
    reduced: &ReducedTree,
    aux: &AuxGraph,
    q: &Subgraph,
) -> Result<Subgraph> {
    q.check_even_x2(&aux.graph)?;
    let mut edges = reduced.edges.clone();
    for &(xs, y) in q.edges() {
        if let AuxNode::Original(x) = aux.x_origin[xs] {
            edges.push((x, y));
        }
    }
    let union = Subgraph::new(edges);
    if union.len() != 2 * g.x_count() {
        return Err(Error::Internal("F* and Q* overlap".into()));
    }
    union
        .check_even_x2(g)
        .map_err(|e| Error::Internal(format!("assembled subgraph: {e}")))?;
    if !union.spans_connected(g.x_count(), g.y_count()) {
        return Err(Error::Internal(
            "assembled subgraph is not connected".into(),
        ));
    }
    Ok(union)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::find_even_x2_subgraph;

    fn incidence(n: usize, blocks: &[&[usize]]) -> BipartiteGraph {
        let pairs: Vec<_> = blocks
            .iter()
            .enumerate()
            .flat_map(|(x, b)| b.iter().map(move |&y| (x, y)))
            .collect();
        BipartiteGraph::new(blocks.len(), n, &pairs).unwrap()
    }

    fn fano() -> BipartiteGraph {
        incidence(
            7,
            &[
                &[0, 1, 3],
                &[1, 2, 4],
                &[2, 3, 5],
                &[3, 4, 6],
                &[4, 5, 0],
                &[5, 6, 1],
                &[6, 0, 2],
            ],
        )
    }

    fn found(t: TreeSearch) -> NiceTree {
        match t {
            TreeSearch::Found(t) => t,
            other => panic!("expected a tree, got {other:?}"),
        }
    }

    #[test]
    fn star_has_no_nice_tree() {
        let g = incidence(3, &[&[0, 1, 2]]);
        assert_eq!(find_nice_spanning_tree(&g).unwrap(), TreeSearch::NoneExists);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = incidence(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(find_nice_spanning_tree(&g), Err(Error::Disconnected));
    }

    #[test]
    fn fano_tree() {
        let g = fano();
        let tree = found(find_nice_spanning_tree(&g).unwrap());
        tree.validate(&g).unwrap();
        assert_eq!(tree.a.len(), 6);
        assert_eq!(tree.edges.len(), 13);
        let parents = tree.parents(&g, Node::Y(0));
        assert_eq!(parents.iter().filter(|p| p.is_none()).count(), 1);

        let reduced = reduce_tree(&g, &tree).unwrap();
        assert!([2, 4, 6].contains(&reduced.odd.len()));
        let aux = build_aux_graph(&g, &reduced).unwrap();
        assert_eq!(aux.x_origin.len(), 1 + reduced.odd.len() / 2);
        for j in 0..aux.w_count() {
            let idx = aux
                .x_origin
                .iter()
                .position(|&o| o == AuxNode::Pairing(j))
                .unwrap();
            assert_eq!(aux.graph.degree(Node::X(idx)), 2);
        }
    }

    #[test]
    fn path_reduces_to_itself() {
        let g = incidence(2, &[&[0, 1]]);
        let tree = found(find_nice_spanning_tree(&g).unwrap());
        let reduced = reduce_tree(&g, &tree).unwrap();
        assert_eq!(reduced.edges, tree.edges);
        assert_eq!(reduced.odd, vec![0, 1]);
        let aux = build_aux_graph(&g, &reduced).unwrap();
        assert_eq!(aux.pairs, vec![(0, 1)]);
        assert_eq!(aux.graph.x_neighbors(0), &[0, 1]);
    }

    #[test]
    fn all_of_x_in_a_fails_at_the_factor() {
        // Blocks {0,1}, {1,2}: both end up in A, F* = F is a path with O = {0, 2}.
        let g = incidence(3, &[&[0, 1], &[1, 2]]);
        let tree = found(find_nice_spanning_tree(&g).unwrap());
        let reduced = reduce_tree(&g, &tree).unwrap();
        assert_eq!(reduced.a, vec![0, 1]);
        assert_eq!(reduced.edges, tree.edges);
        let aux = build_aux_graph(&g, &reduced).unwrap();
        assert_eq!(aux.x_origin, vec![AuxNode::Pairing(0)]);
        // The only (X*,2)-regular choice leaves y0 and y2 at odd degree.
        assert_eq!(find_even_x2_subgraph(&aux.graph), None);
        let q = Subgraph::new(vec![(0, 0), (0, 2)]);
        assert!(matches!(
            assemble(&g, &reduced, &aux, &q),
            Err(Error::DegreeSpec(_))
        ));
    }

    #[test]
    fn greedy_failure_falls_back_to_exhaustive() {
        // y3 is only reachable through x0, and every greedy seed spends x0
        // on a pair without y3. The exhaustive search pairs x0 with (0, 3).
        let g = incidence(4, &[&[0, 1, 2, 3], &[0, 2], &[1, 2]]);
        let tree = found(find_nice_spanning_tree(&g).unwrap());
        tree.validate(&g).unwrap();
        assert_eq!(tree.a.len(), 3);
    }

    #[test]
    fn assemble_fano() {
        let g = fano();
        let tree = found(find_nice_spanning_tree(&g).unwrap());
        let reduced = reduce_tree(&g, &tree).unwrap();
        let aux = build_aux_graph(&g, &reduced).unwrap();
        if let Some(q) = find_even_x2_subgraph(&aux.graph) {
            let sub = assemble(&g, &reduced, &aux, &q).unwrap();
            assert_eq!(sub.len(), 14);
        }
    }
}
