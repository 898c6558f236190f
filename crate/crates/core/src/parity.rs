//! Even `(X, 2)`-regular subgraphs of bipartite graphs and the barriers
//! that obstruct them.
//!
//! A subgraph with degree exactly 2 at every X-node and even degree at every
//! Y-node is found by reducing the degree constraints to a perfect matching
//! in a gadget graph. Non-existence is certified, on small inputs only, by
//! an exhaustive search for a pair `(S, T)` with `δ(S, T) < 0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::bipartite::{BipartiteGraph, Dsu, Node, Subgraph};
use crate::error::{Error, Result};
use crate::matching::{max_matching, SimpleGraph};

/// Degree requirement for one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeConstraint {
    Exactly(usize),
    Even,
}

/// Per-node degree requirements for a subgraph of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpec {
    pub x: Vec<DegreeConstraint>,
    pub y: Vec<DegreeConstraint>,
}

impl DegreeSpec {
    /// Degree exactly 2 on X, even (possibly 0) on Y.
    pub fn even_x2(g: &BipartiteGraph) -> Self {
        Self {
            x: vec![DegreeConstraint::Exactly(2); g.x_count()],
            y: vec![DegreeConstraint::Even; g.y_count()],
        }
    }

    fn constraint(&self, node: Node) -> DegreeConstraint {
        match node {
            Node::X(x) => self.x[x],
            Node::Y(y) => self.y[y],
        }
    }

    /// Whether `sub` meets every requirement.
    pub fn is_met_by(&self, sub: &Subgraph) -> bool {
        let xs = sub.x_degrees(self.x.len());
        let ys = sub.y_degrees(self.y.len());
        let ok = |c: &DegreeConstraint, d: usize| match *c {
            DegreeConstraint::Exactly(r) => d == r,
            DegreeConstraint::Even => d.is_multiple_of(2),
        };
        self.x.iter().zip(xs).all(|(c, d)| ok(c, d)) && self.y.iter().zip(ys).all(|(c, d)| ok(c, d))
    }
}

/// Where a gadget node comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetNode {
    /// Endpoint of the real edge standing for original edge `edge`, on the
    /// side of `owner`.
    External { edge: usize, owner: Node },
    /// Internal node of the gadget attached to `owner`.
    Internal { owner: Node },
}

/// General graph whose perfect matchings correspond to subgraphs meeting a
/// [`DegreeSpec`].
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: SimpleGraph,
    pub provenance: Vec<GadgetNode>,
    /// Original edges, indexed like the real gadget edges: original edge `i`
    /// is the gadget edge `(2i, 2i + 1)`.
    pub original_edges: Vec<(usize, usize)>,
}

impl GadgetGraph {
    /// Gadget nodes owned by `owner` that are internal.
    pub fn internal_count(&self, owner: Node) -> usize {
        self.provenance
            .iter()
            .filter(|p| matches!(p, GadgetNode::Internal { owner: o } if *o == owner))
            .count()
    }

    pub fn external_count(&self, owner: Node) -> usize {
        self.provenance
            .iter()
            .filter(|p| matches!(p, GadgetNode::External { owner: o, .. } if *o == owner))
            .count()
    }

    /// Gadget edges with both endpoints internal to `owner`'s gadget.
    pub fn internal_edge_count(&self, owner: Node) -> usize {
        self.graph
            .edges()
            .filter(|&(u, v)| {
                [u, v]
                    .iter()
                    .all(|&w| matches!(self.provenance[w], GadgetNode::Internal { owner: o } if o == owner))
            })
            .count()
    }
}

/// Builds the matching gadget for `g` under `spec`.
///
/// Each original edge becomes two external nodes joined by a real edge. A
/// node of degree `d` required to have degree exactly `r` gets `d - r`
/// internal nodes adjacent to all of its external nodes. A node required to
/// have even degree gets `d` internal nodes adjacent to all of its external
/// nodes plus pairing edges between internal nodes `2j` and `2j + 1`.
pub fn build_gadget(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<GadgetGraph> {
    if spec.x.len() != g.x_count() || spec.y.len() != g.y_count() {
        return Err(Error::DegreeSpec("spec size does not match graph".into()));
    }
    let original_edges: Vec<(usize, usize)> = g.edges().collect();
    let mut provenance = Vec::with_capacity(2 * original_edges.len());
    let mut x_ext = vec![Vec::new(); g.x_count()];
    let mut y_ext = vec![Vec::new(); g.y_count()];
    for (i, &(x, y)) in original_edges.iter().enumerate() {
        provenance.push(GadgetNode::External {
            edge: i,
            owner: Node::X(x),
        });
        provenance.push(GadgetNode::External {
            edge: i,
            owner: Node::Y(y),
        });
        x_ext[x].push(2 * i);
        y_ext[y].push(2 * i + 1);
    }

    let mut internal_edges = Vec::new();
    let owners = (0..g.x_count())
        .map(|x| (Node::X(x), &x_ext[x]))
        .chain((0..g.y_count()).map(|y| (Node::Y(y), &y_ext[y])));
    for (owner, externals) in owners {
        let degree = externals.len();
        let (count, pairing) = match spec.constraint(owner) {
            DegreeConstraint::Exactly(r) if r > degree => {
                return Err(Error::InfeasibleDegree {
                    node: owner.to_string(),
                    degree,
                    required: r,
                })
            }
            DegreeConstraint::Exactly(r) => (degree - r, false),
            DegreeConstraint::Even => (degree, true),
        };
        let first = provenance.len();
        provenance.extend(std::iter::repeat_n(GadgetNode::Internal { owner }, count));
        for internal in first..first + count {
            for &ext in externals {
                internal_edges.push((internal, ext));
            }
        }
        if pairing {
            for j in 0..count / 2 {
                internal_edges.push((first + 2 * j, first + 2 * j + 1));
            }
        }
    }

    let mut graph = SimpleGraph::new(provenance.len());
    for i in 0..original_edges.len() {
        graph.push_edge(2 * i, 2 * i + 1);
    }
    for (u, v) in internal_edges {
        graph.push_edge(u, v);
    }
    graph.normalize();
    Ok(GadgetGraph {
        graph,
        provenance,
        original_edges,
    })
}

/// Finds a subgraph of `g` meeting `spec`, or `None` if none exists.
pub fn find_factor(g: &BipartiteGraph, spec: &DegreeSpec) -> Result<Option<Subgraph>> {
    let gadget = match build_gadget(g, spec) {
        Ok(gadget) => gadget,
        Err(Error::InfeasibleDegree { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let matching = max_matching(&gadget.graph);
    if !matching.is_perfect() {
        return Ok(None);
    }
    let kept: Vec<(usize, usize)> = gadget
        .original_edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| matching.mate(2 * i) == Some(2 * i + 1))
        .map(|(_, &e)| e)
        .collect();
    let sub = Subgraph::new(kept);
    if !spec.is_met_by(&sub) {
        return Err(Error::Internal(
            "perfect gadget matching produced a subgraph violating its degree spec".into(),
        ));
    }
    Ok(Some(sub))
}

/// Even `(X, 2)`-regular subgraph of `g`, or `None` if none exists.
pub fn find_even_x2_subgraph(g: &BipartiteGraph) -> Option<Subgraph> {
    if (0..g.x_count()).any(|x| g.degree(Node::X(x)) < 2) {
        return None;
    }
    find_factor(g, &DegreeSpec::even_x2(g)).expect("even (X,2) spec always matches the graph")
}

/// A component of `G - (S ∪ T)` together with its edges to `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualComponent {
    pub nodes: Vec<Node>,
    /// Edges between `T` and the component, per node of `T` (only nonzero
    /// entries, sorted by node).
    pub t_edges: Vec<(Node, usize)>,
}

impl ResidualComponent {
    /// `ε(T, C)`.
    pub fn edges_to_t(&self) -> usize {
        self.t_edges.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_t_odd(&self) -> bool {
        self.edges_to_t() % 2 == 1
    }
}

struct Sets {
    in_s: Vec<bool>,
    in_t: Vec<bool>,
}

fn index_sets(g: &BipartiteGraph, s: &[usize], t: &[Node]) -> Result<Sets> {
    let mut in_s = vec![false; g.node_count()];
    let mut in_t = vec![false; g.node_count()];
    for &x in s {
        if x >= g.x_count() {
            return Err(Error::OutOfRange {
                what: "S",
                detail: format!("x{x} with |X| = {}", g.x_count()),
            });
        }
        in_s[x] = true;
    }
    for &node in t {
        let in_range = match node {
            Node::X(x) => x < g.x_count(),
            Node::Y(y) => y < g.y_count(),
        };
        if !in_range {
            return Err(Error::OutOfRange {
                what: "T",
                detail: node.to_string(),
            });
        }
        let i = g.index(node);
        if in_s[i] {
            return Err(Error::OverlappingSets(node.to_string()));
        }
        in_t[i] = true;
    }
    Ok(Sets { in_s, in_t })
}

/// Components of `G - (S ∪ T)` in order of their smallest node.
pub fn residual_components(
    g: &BipartiteGraph,
    s: &[usize],
    t: &[Node],
) -> Result<Vec<ResidualComponent>> {
    let sets = index_sets(g, s, t)?;
    Ok(components_of(g, &sets))
}

fn components_of(g: &BipartiteGraph, sets: &Sets) -> Vec<ResidualComponent> {
    let removed = |i: usize| sets.in_s[i] || sets.in_t[i];
    let mut dsu = Dsu::new(g.node_count());
    let xc = g.x_count();
    for (x, y) in g.edges() {
        if !removed(x) && !removed(xc + y) {
            dsu.union(x, xc + y);
        }
    }
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<ResidualComponent> = Vec::new();
    let mut comp_of = vec![usize::MAX; g.node_count()];
    #[allow(clippy::needless_range_loop)]
    for i in 0..g.node_count() {
        if removed(i) {
            continue;
        }
        let root = dsu.find(i);
        let c = *by_root.entry(root).or_insert_with(|| {
            comps.push(ResidualComponent {
                nodes: Vec::new(),
                t_edges: Vec::new(),
            });
            comps.len() - 1
        });
        comps[c].nodes.push(g.node_at(i));
        comp_of[i] = c;
    }
    let mut counts: Vec<BTreeMap<Node, usize>> = vec![BTreeMap::new(); comps.len()];
    for (x, y) in g.edges() {
        let (a, b) = (x, xc + y);
        for (t_end, other) in [(a, b), (b, a)] {
            if sets.in_t[t_end] && !removed(other) {
                *counts[comp_of[other]].entry(g.node_at(t_end)).or_default() += 1;
            }
        }
    }
    for (comp, count) in comps.iter_mut().zip(counts) {
        comp.t_edges = count.into_iter().collect();
    }
    comps
}

/// `δ(S, T) = 2|S| + Σ_{v∈T} deg_{G-S}(v) - 2|T ∩ X| - q(S, T)`, where
/// `q(S, T)` counts the components `C` of `G - (S ∪ T)` with `ε(T, C)` odd.
pub fn delta(g: &BipartiteGraph, s: &[usize], t: &[Node]) -> Result<i64> {
    let sets = index_sets(g, s, t)?;
    Ok(delta_of(g, &sets))
}

fn delta_of(g: &BipartiteGraph, sets: &Sets) -> i64 {
    let xc = g.x_count();
    let s_size = sets.in_s.iter().filter(|&&b| b).count() as i64;
    let t_x = sets.in_t[..xc].iter().filter(|&&b| b).count() as i64;
    let mut t_degree = 0i64;
    for (x, y) in g.edges() {
        if sets.in_s[x] {
            continue;
        }
        t_degree += i64::from(sets.in_t[x]) + i64::from(sets.in_t[xc + y]);
    }
    let q = components_of(g, sets)
        .iter()
        .filter(|c| c.is_t_odd())
        .count() as i64;
    2 * s_size + t_degree - 2 * t_x - q
}

/// A pair `(S, T)` with `δ(S, T) < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barrier {
    /// X-nodes, ascending.
    pub s: Vec<usize>,
    /// Nodes of either side, ascending (X before Y).
    pub t: Vec<Node>,
    pub delta: i64,
}

impl Barrier {
    pub fn size(&self) -> usize {
        self.s.len() + self.t.len()
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        (self.size(), &self.s, &self.t).cmp(&(other.size(), &other.s, &other.t))
    }

    /// Checks the structure every minimum barrier has: `T ⊆ X`; no edges
    /// from `T` to `T`-even components; at most one edge from each node of
    /// `T` to each `T`-odd component; and
    /// `2(|T| - |S|) > Σ_i (ε(T, O_i) - 1)` over the `T`-odd components.
    /// Returns a description of each property that fails.
    pub fn minimum_structure_violations(&self, g: &BipartiteGraph) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if let Some(y) = self.t.iter().find(|n| matches!(n, Node::Y(_))) {
            out.push(format!("T contains Y-node {y}"));
        }
        let comps = residual_components(g, &self.s, &self.t)?;
        let mut excess = 0i64;
        for comp in &comps {
            if comp.is_t_odd() {
                excess += comp.edges_to_t() as i64 - 1;
                if let Some(&(u, c)) = comp.t_edges.iter().find(|&&(_, c)| c > 1) {
                    out.push(format!(
                        "{u} has {c} edges to the T-odd component containing {}",
                        comp.nodes[0]
                    ));
                }
            } else if comp.edges_to_t() != 0 {
                out.push(format!(
                    "T-even component containing {} receives {} edges from T",
                    comp.nodes[0],
                    comp.edges_to_t()
                ));
            }
        }
        let slack = 2 * (self.t.len() as i64 - self.s.len() as i64);
        if slack <= excess {
            out.push(format!("2(|T| - |S|) = {slack} <= {excess}"));
        }
        Ok(out)
    }
}

/// Default cap on the number of `(S, T)` assignments examined.
pub const BARRIER_STATE_CAP: u64 = 20_000_000;

/// Minimum barrier of `g` by exhaustive search over disjoint `S, T ⊆ X`, or
/// `None` if no barrier exists.
///
/// Restricting `T` to X-nodes loses nothing: every minimum barrier has
/// `T ⊆ X`. Ties are broken by `(|S ∪ T|, S, T)` lexicographically.
pub fn find_barrier_brute_force(g: &BipartiteGraph, cap: u64) -> Result<Option<Barrier>> {
    let states = checked_states(g.x_count(), 0, cap)?;
    Ok(search_barriers(g, states, false))
}

/// Minimum barrier over all disjoint `S ⊆ X`, `T ⊆ X ∪ Y`. Exponential in
/// `|X| + |Y|`; used to confirm that minimum barriers avoid Y.
pub fn find_barrier_unrestricted(g: &BipartiteGraph, cap: u64) -> Result<Option<Barrier>> {
    let states = checked_states(g.x_count(), g.y_count(), cap)?;
    Ok(search_barriers(g, states, true))
}

fn checked_states(x: usize, y: usize, cap: u64) -> Result<u64> {
    let states = 3u64
        .checked_pow(x as u32)
        .and_then(|s| s.checked_mul(1u64.checked_shl(y as u32)?))
        .filter(|&s| s <= cap);
    states.ok_or_else(|| {
        Error::CapExceeded(format!(
            "barrier search over 3^{x} * 2^{y} states exceeds cap {cap}"
        ))
    })
}

fn search_barriers(g: &BipartiteGraph, states: u64, with_y: bool) -> Option<Barrier> {
    let xc = g.x_count();
    let yc = g.y_count();
    let mut sets = Sets {
        in_s: vec![false; g.node_count()],
        in_t: vec![false; g.node_count()],
    };
    let mut best: Option<Barrier> = None;
    for state in 0..states {
        let mut code = state;
        for x in 0..xc {
            let digit = code % 3;
            code /= 3;
            sets.in_s[x] = digit == 1;
            sets.in_t[x] = digit == 2;
        }
        if with_y {
            for y in 0..yc {
                sets.in_t[xc + y] = code & 1 == 1;
                code >>= 1;
            }
        }
        let size = sets.in_s.iter().chain(&sets.in_t).filter(|&&b| b).count();
        if best.as_ref().is_some_and(|b| size > b.size()) {
            continue;
        }
        let d = delta_of(g, &sets);
        if d >= 0 {
            continue;
        }
        let candidate = Barrier {
            s: (0..xc).filter(|&x| sets.in_s[x]).collect(),
            t: (0..g.node_count())
                .filter(|&i| sets.in_t[i])
                .map(|i| g.node_at(i))
                .collect(),
            delta: d,
        };
        if best
            .as_ref()
            .is_none_or(|b| candidate.key_cmp(b) == Ordering::Less)
        {
            best = Some(candidate);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> BipartiteGraph {
        BipartiteGraph::new(1, 3, &[(0, 0), (0, 1), (0, 2)]).unwrap()
    }

    fn two_edges() -> BipartiteGraph {
        BipartiteGraph::new(2, 4, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 3)]).unwrap()
    }

    fn fano() -> BipartiteGraph {
        let blocks = [
            [0, 1, 3],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 0],
            [5, 6, 1],
            [6, 0, 2],
        ];
        let pairs: Vec<_> = blocks
            .iter()
            .enumerate()
            .flat_map(|(x, b)| b.iter().map(move |&y| (x, y)))
            .collect();
        BipartiteGraph::new(7, 7, &pairs).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&fano(), &[], &[]).unwrap(), 0);
        assert_eq!(delta(&star(), &[], &[Node::X(0)]).unwrap(), -2);
        assert_eq!(
            delta(&two_edges(), &[], &[Node::X(0), Node::X(1)]).unwrap(),
            0
        );
        assert!(matches!(
            delta(&star(), &[0], &[Node::X(0)]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn barrier_examples() {
        let b = find_barrier_brute_force(&star(), BARRIER_STATE_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(b.s, Vec::<usize>::new());
        assert_eq!(b.t, vec![Node::X(0)]);
        assert_eq!(b.delta, -2);
        assert!(b.minimum_structure_violations(&star()).unwrap().is_empty());
        assert!(find_barrier_brute_force(&fano(), BARRIER_STATE_CAP)
            .unwrap()
            .is_none());
        assert!(find_barrier_brute_force(&two_edges(), BARRIER_STATE_CAP)
            .unwrap()
            .is_none());
        assert!(matches!(
            find_barrier_brute_force(&fano(), 100),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn unrestricted_agrees_on_star() {
        let b = find_barrier_unrestricted(&star(), BARRIER_STATE_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(b.t, vec![Node::X(0)]);
    }

    #[test]
    fn gadget_sizes() {
        let g = star();
        let gadget = build_gadget(&g, &DegreeSpec::even_x2(&g)).unwrap();
        assert_eq!(gadget.external_count(Node::X(0)), 3);
        assert_eq!(gadget.internal_count(Node::X(0)), 1);
        assert_eq!(gadget.internal_count(Node::Y(0)), 1);
        assert_eq!(gadget.internal_edge_count(Node::Y(0)), 0);

        let g = BipartiteGraph::new(2, 3, &[(0, 0), (0, 1), (1, 0), (1, 2)]).unwrap();
        let gadget = build_gadget(&g, &DegreeSpec::even_x2(&g)).unwrap();
        assert_eq!(gadget.external_count(Node::Y(0)), 2);
        assert_eq!(gadget.internal_count(Node::Y(0)), 2);
        assert_eq!(gadget.internal_edge_count(Node::Y(0)), 1);

        let g = BipartiteGraph::new(1, 4, &[(0, 0), (0, 1)]).unwrap();
        let gadget = build_gadget(&g, &DegreeSpec::even_x2(&g)).unwrap();
        assert_eq!(gadget.external_count(Node::Y(3)), 0);
        assert_eq!(gadget.internal_count(Node::Y(3)), 0);
    }

    #[test]
    fn gadget_rejects_low_degree() {
        let g = BipartiteGraph::new(1, 2, &[(0, 0)]).unwrap();
        assert!(matches!(
            build_gadget(&g, &DegreeSpec::even_x2(&g)),
            Err(Error::InfeasibleDegree { .. })
        ));
        assert_eq!(find_even_x2_subgraph(&g), None);
    }

    #[test]
    fn subgraph_examples() {
        assert_eq!(find_even_x2_subgraph(&star()), None);
        let sub = find_even_x2_subgraph(&two_edges()).unwrap();
        assert_eq!(sub.edges(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let g = fano();
        let sub = find_even_x2_subgraph(&g).unwrap();
        sub.check_even_x2(&g).unwrap();
    }

    #[test]
    fn exact_degree_spec() {
        // Degree exactly 1 at every node of a 4-cycle is a perfect matching.
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let spec = DegreeSpec {
            x: vec![DegreeConstraint::Exactly(1); 2],
            y: vec![DegreeConstraint::Exactly(1); 2],
        };
        let sub = find_factor(&g, &spec).unwrap().unwrap();
        assert_eq!(sub.len(), 2);
        assert!(spec.is_met_by(&sub));
    }
}
