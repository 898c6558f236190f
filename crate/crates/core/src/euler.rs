//! Closed walks, Euler families and spanning Euler tours.
//!
//! An even `(X, 2)`-regular subgraph of the incidence graph is read off as
//! one closed walk per component: each edge-node has degree 2 and so appears
//! exactly once, between the two vertices it joins in the walk.

use std::fmt;

use itertools::Itertools;

use crate::bipartite::{BipartiteGraph, Subgraph};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::parity::find_even_x2_subgraph;
use crate::spanning::{
    assemble, build_aux_graph, find_nice_spanning_tree, reduce_tree, TreeSearch,
};

/// Cyclic alternating sequence `v_1, e_1, v_2, e_2, ..., v_t, e_t`, stored
/// as the pairs `(v_i, e_i)`. Edge `e_i` joins `v_i` and `v_{i+1}`, indices
/// modulo `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    steps: Vec<(usize, usize)>,
}

impl ClosedWalk {
    pub fn new(steps: Vec<(usize, usize)>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|&(v, _)| v)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|&(_, e)| e)
    }

    /// Parses `v1 e1 v2 e2 ... vt et`.
    pub fn parse(line: &str) -> Result<Self> {
        let tokens = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidWalk(format!("bad token {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if tokens.len() % 2 == 1 {
            return Err(Error::InvalidWalk(format!(
                "odd number of tokens ({}) in walk",
                tokens.len()
            )));
        }
        Ok(Self::new(tokens.chunks(2).map(|c| (c[0], c[1])).collect()))
    }
}

impl fmt::Display for ClosedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self.steps.iter().map(|(v, e)| format!("{v} {e}")).join(" ");
        f.write_str(&line)
    }
}

/// Which routine produced a set of walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FamilySolver,
    SpanningTourSolver,
    Input,
}

/// Closed walks that should jointly traverse every edge exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFamily {
    pub walks: Vec<ClosedWalk>,
    pub provenance: Provenance,
}

impl EulerFamily {
    pub fn new(walks: Vec<ClosedWalk>, provenance: Provenance) -> Self {
        Self { walks, provenance }
    }

    pub fn single(walk: ClosedWalk, provenance: Provenance) -> Self {
        Self::new(vec![walk], provenance)
    }

    /// Parses one walk per non-empty line; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let walks = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(ClosedWalk::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(walks, Provenance::Input))
    }

    /// One walk per line.
    pub fn to_text(&self) -> String {
        self.walks.iter().map(|w| format!("{w}\n")).collect()
    }
}

/// Reads an even `(X, 2)`-regular subgraph of `h`'s incidence graph as an
/// Euler family, one walk per nontrivial component.
///
/// Components are visited in order of their smallest edge index. Each
/// circuit starts at that edge and follows lowest-indexed neighbours first.
pub fn extract_family(h: &Hypergraph, sub: &Subgraph) -> Result<EulerFamily> {
    let g = h.incidence();
    sub.check_even_x2(&g)?;
    let walks = circuits(&g, sub)
        .into_iter()
        .map(|c| walk_from_circuit(&g, &c))
        .collect();
    Ok(EulerFamily::new(walks, Provenance::FamilySolver))
}

/// Hierholzer traversal of every component with an edge. Each circuit is a
/// closed node sequence (dense indices) starting and ending at its X-node of
/// smallest index, in reverse traversal order.
fn circuits(g: &BipartiteGraph, sub: &Subgraph) -> Vec<Vec<usize>> {
    let xc = g.x_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.node_count()];
    for (id, &(x, y)) in sub.edges().iter().enumerate() {
        adj[x].push((xc + y, id));
        adj[xc + y].push((x, id));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut used = vec![false; sub.len()];
    let mut next = vec![0usize; g.node_count()];
    let mut out = Vec::new();
    for start in 0..xc {
        if adj[start].iter().all(|&(_, id)| used[id]) {
            continue;
        }
        let mut stack = vec![start];
        let mut circuit = Vec::new();
        while let Some(&u) = stack.last() {
            while next[u] < adj[u].len() && used[adj[u][next[u]].1] {
                next[u] += 1;
            }
            if let Some(&(v, id)) = adj[u].get(next[u]) {
                used[id] = true;
                stack.push(v);
            } else {
                circuit.push(u);
                stack.pop();
            }
        }
        out.push(circuit);
    }
    out
}

/// For circuit `[x_0, c_1, c_2, ..., c_{2t-1}, x_0]` the walk is
/// `(c_{2t-1}, x_0), (c_1, c_2), (c_3, c_4), ...`: every X-node sits
/// between the two Y-nodes next to it on the circuit.
fn walk_from_circuit(g: &BipartiteGraph, circuit: &[usize]) -> ClosedWalk {
    let xc = g.x_count();
    let t = (circuit.len() - 1) / 2;
    let mut steps = Vec::with_capacity(t);
    steps.push((circuit[2 * t - 1] - xc, circuit[0]));
    for j in 1..t {
        steps.push((circuit[2 * j - 1] - xc, circuit[2 * j]));
    }
    ClosedWalk::new(steps)
}

/// A verified Euler family of `h`, or `None` when `h` has none.
pub fn euler_family(h: &Hypergraph) -> Result<Option<EulerFamily>> {
    let g = h.incidence();
    let Some(sub) = find_even_x2_subgraph(&g) else {
        return Ok(None);
    };
    let family = extract_family(h, &sub)?;
    let report = verify(h, &family, false, false);
    if !report.violations.is_empty() {
        return Err(Error::Internal(format!(
            "family solver produced an invalid family: {}",
            report.violations.iter().join("; ")
        )));
    }
    Ok(Some(family))
}

/// Where the spanning tour construction stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    NoEdges,
    /// The incidence graph is disconnected (including isolated vertices).
    Disconnected,
    /// No spanning tree with edge-node degrees at most 2 exists.
    NoNiceTree,
    /// Greedy search found no nice tree and the graph is too large to
    /// settle the question exhaustively.
    NiceTreeUndecided,
    /// An edge outside the tree's degree-2 set has fewer than 2 vertices.
    AuxDegree,
    /// The auxiliary graph has no even `(X*, 2)`-regular subgraph.
    AuxFactor,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::NoEdges => "hypergraph has no edges",
            Stage::Disconnected => "incidence graph is disconnected",
            Stage::NoNiceTree => "no spanning tree with edge-degrees at most 2 exists",
            Stage::NiceTreeUndecided => {
                "greedy nice-tree search failed (instance above exhaustive cap)"
            }
            Stage::AuxDegree => "an edge outside the tree has fewer than 2 vertices",
            Stage::AuxFactor => "auxiliary graph has no even (X*,2)-regular subgraph",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanningOutcome {
    Found(ClosedWalk),
    Failed(Stage),
}

impl SpanningOutcome {
    pub fn tour(self) -> Option<ClosedWalk> {
        match self {
            SpanningOutcome::Found(w) => Some(w),
            SpanningOutcome::Failed(_) => None,
        }
    }
}

/// Spanning Euler tour of `h` via a nice spanning tree of the incidence
/// graph and a parity correction on the auxiliary graph.
pub fn spanning_euler_tour(h: &Hypergraph) -> Result<SpanningOutcome> {
    use SpanningOutcome::Failed;
    if h.edge_count() == 0 {
        return Ok(Failed(Stage::NoEdges));
    }
    let g = h.incidence();
    let tree = match find_nice_spanning_tree(&g) {
        Ok(TreeSearch::Found(t)) => t,
        Ok(TreeSearch::NoneExists) => return Ok(Failed(Stage::NoNiceTree)),
        Ok(TreeSearch::GreedyFailed) => return Ok(Failed(Stage::NiceTreeUndecided)),
        Err(Error::Disconnected) => return Ok(Failed(Stage::Disconnected)),
        Err(e) => return Err(e),
    };
    let reduced = reduce_tree(&g, &tree)?;
    let aux = match build_aux_graph(&g, &reduced) {
        Ok(aux) => aux,
        Err(Error::HypothesesViolated(_)) => return Ok(Failed(Stage::AuxDegree)),
        Err(e) => return Err(e),
    };
    let Some(q) = find_even_x2_subgraph(&aux.graph) else {
        return Ok(Failed(Stage::AuxFactor));
    };
    let sub = assemble(&g, &reduced, &aux, &q)?;
    let family = extract_family(h, &sub)?;
    let [walk]: [ClosedWalk; 1] = family
        .walks
        .try_into()
        .map_err(|_| Error::Internal("assembled subgraph gave more than one walk".into()))?;
    let family = EulerFamily::single(walk, Provenance::SpanningTourSolver);
    let report = verify(h, &family, true, true);
    if !report.violations.is_empty() {
        return Err(Error::Internal(format!(
            "spanning tour failed verification: {}",
            report.violations.iter().join("; ")
        )));
    }
    let walk = family.walks.into_iter().next().expect("one walk");
    Ok(SpanningOutcome::Found(walk))
}

/// A defect found by [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyWalk {
        walk: usize,
    },
    VertexOutOfRange {
        walk: usize,
        pos: usize,
        vertex: usize,
    },
    EdgeOutOfRange {
        walk: usize,
        pos: usize,
        edge: usize,
    },
    /// `{v_i, v_{i+1}}` is not contained in `e_i`.
    NotContained {
        walk: usize,
        pos: usize,
    },
    /// `v_i = v_{i+1}`.
    RepeatedVertex {
        walk: usize,
        pos: usize,
    },
    EdgeMissing {
        edge: usize,
    },
    EdgeRepeated {
        edge: usize,
        count: usize,
    },
    VertexNotVisited {
        vertex: usize,
    },
    NotSingleWalk {
        walks: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyWalk { walk } => write!(f, "walk {walk} is empty"),
            Violation::VertexOutOfRange { walk, pos, vertex } => {
                write!(f, "walk {walk} step {pos}: vertex {vertex} out of range")
            }
            Violation::EdgeOutOfRange { walk, pos, edge } => {
                write!(f, "walk {walk} step {pos}: edge {edge} out of range")
            }
            Violation::NotContained { walk, pos } => {
                write!(
                    f,
                    "walk {walk} step {pos}: consecutive vertices not both in the edge"
                )
            }
            Violation::RepeatedVertex { walk, pos } => {
                write!(f, "walk {walk} step {pos}: consecutive vertices coincide")
            }
            Violation::EdgeMissing { edge } => write!(f, "edge {edge} not traversed"),
            Violation::EdgeRepeated { edge, count } => {
                write!(f, "edge {edge} traversed {count} times")
            }
            Violation::VertexNotVisited { vertex } => write!(f, "vertex {vertex} not visited"),
            Violation::NotSingleWalk { walks } => write!(f, "{walks} walks, expected one"),
        }
    }
}

/// Result of checking walks against a hypergraph. Flags are recomputed
/// from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourReport {
    pub walks: Vec<ClosedWalk>,
    pub provenance: Provenance,
    /// Valid walks jointly covering each edge exactly once.
    pub is_family: bool,
    /// `is_family` with exactly one walk.
    pub is_tour: bool,
    /// `is_tour` and every vertex visited.
    pub is_spanning: bool,
    pub violations: Vec<Violation>,
}

impl TourReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every walk step, exact-once edge coverage, and optionally that
/// there is a single walk and that it visits every vertex.
pub fn verify(
    h: &Hypergraph,
    family: &EulerFamily,
    require_spanning: bool,
    require_tour: bool,
) -> TourReport {
    let mut violations = Vec::new();
    let mut edge_uses = vec![0usize; h.edge_count()];
    let mut visited = vec![false; h.vertex_count()];
    for (w, walk) in family.walks.iter().enumerate() {
        let steps = walk.steps();
        if steps.is_empty() {
            violations.push(Violation::EmptyWalk { walk: w });
            continue;
        }
        for (pos, &(v, e)) in steps.iter().enumerate() {
            let next = steps[(pos + 1) % steps.len()].0;
            let mut in_range = true;
            if v >= h.vertex_count() {
                violations.push(Violation::VertexOutOfRange {
                    walk: w,
                    pos,
                    vertex: v,
                });
                in_range = false;
            } else {
                visited[v] = true;
            }
            if e >= h.edge_count() {
                violations.push(Violation::EdgeOutOfRange {
                    walk: w,
                    pos,
                    edge: e,
                });
                in_range = false;
            } else {
                edge_uses[e] += 1;
            }
            if v == next {
                violations.push(Violation::RepeatedVertex { walk: w, pos });
            }
            if in_range && !(h.contains(e, v) && h.contains(e, next)) {
                violations.push(Violation::NotContained { walk: w, pos });
            }
        }
    }
    for (edge, &count) in edge_uses.iter().enumerate() {
        match count {
            0 => violations.push(Violation::EdgeMissing { edge }),
            1 => {}
            _ => violations.push(Violation::EdgeRepeated { edge, count }),
        }
    }
    let is_family = violations.is_empty();
    let is_tour = is_family && family.walks.len() == 1;
    let all_visited = visited.iter().all(|&b| b);
    let is_spanning = is_tour && all_visited;
    if require_tour && family.walks.len() != 1 {
        violations.push(Violation::NotSingleWalk {
            walks: family.walks.len(),
        });
    }
    if require_spanning {
        violations.extend(
            visited
                .iter()
                .enumerate()
                .filter(|(_, &b)| !b)
                .map(|(vertex, _)| Violation::VertexNotVisited { vertex }),
        );
    }
    TourReport {
        walks: family.walks.clone(),
        provenance: family.provenance,
        is_family,
        is_tour,
        is_spanning,
        violations,
    }
}

/// Hamiltonian cycle of the line graph (block-intersection graph) read off
/// an Euler tour: the tour's edge sequence.
pub fn line_graph_hamiltonian_cycle(h: &Hypergraph, tour: &ClosedWalk) -> Result<Vec<usize>> {
    if h.edge_count() < 3 {
        return Err(Error::OutOfRange {
            what: "edge count",
            detail: format!("line graph on {} nodes has no cycle", h.edge_count()),
        });
    }
    let report = verify(
        h,
        &EulerFamily::single(tour.clone(), Provenance::Input),
        false,
        true,
    );
    if !report.passed() {
        return Err(Error::InvalidWalk(report.violations.iter().join("; ")));
    }
    Ok(tour.edges().collect())
}

/// Whether `cycle` lists every edge of `h` once with cyclically consecutive
/// edges intersecting.
pub fn is_line_graph_hamiltonian_cycle(h: &Hypergraph, cycle: &[usize]) -> bool {
    let m = h.edge_count();
    if m < 3 || cycle.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &e in cycle {
        if e >= m || std::mem::replace(&mut seen[e], true) {
            return false;
        }
    }
    (0..m).all(|i| {
        let (a, b) = (h.edge(cycle[i]), h.edge(cycle[(i + 1) % m]));
        a.iter().any(|v| b.binary_search(v).is_ok())
    })
}

/// One point of a rank-two universal cycle: `vertex` is shared by the
/// consecutive blocks `from` and `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Junction {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

/// Rank-two universal cycle (1-overlap cycle) of a design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UCycle {
    pub junctions: Vec<Junction>,
}

impl UCycle {
    /// Whether consecutive junctions chain through the same block, every
    /// block appears once, and each junction vertex lies in both blocks.
    pub fn is_valid(&self, h: &Hypergraph) -> bool {
        let m = h.edge_count();
        let t = self.junctions.len();
        if t != m || t == 0 {
            return false;
        }
        let mut seen = vec![false; m];
        self.junctions.iter().enumerate().all(|(i, j)| {
            let next = self.junctions[(i + 1) % t];
            j.to == next.from
                && j.from < m
                && j.to < m
                && j.from != j.to
                && !std::mem::replace(&mut seen[j.from], true)
                && h.contains(j.from, j.vertex)
                && h.contains(j.to, j.vertex)
        })
    }
}

impl fmt::Display for UCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self
            .junctions
            .iter()
            .map(|j| format!("{}:{},{}", j.vertex, j.from, j.to))
            .join(" ");
        f.write_str(&line)
    }
}

/// Rewrites an Euler tour as its junctions `(v_{i+1}, e_i, e_{i+1})`.
pub fn emit_ucycle(tour: &ClosedWalk) -> UCycle {
    let steps = tour.steps();
    let t = steps.len();
    let junctions = (0..t)
        .map(|i| {
            let (v, to) = steps[(i + 1) % t];
            Junction {
                vertex: v,
                from: steps[i].1,
                to,
            }
        })
        .collect();
    UCycle { junctions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{fano, steiner_quadruple_system_8};

    fn two_edges() -> Hypergraph {
        Hypergraph::parse("4\n0 1 2\n0 1 3\n").unwrap()
    }

    #[test]
    fn extract_two_edge_family() {
        let h = two_edges();
        let sub = Subgraph::new(vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let fam = extract_family(&h, &sub).unwrap();
        assert_eq!(fam.walks, vec![ClosedWalk::new(vec![(0, 0), (1, 1)])]);
        assert_eq!(fam.to_text(), "0 0 1 1\n");
    }

    #[test]
    fn extract_two_components() {
        let h = Hypergraph::parse("8\n0 1 2\n0 1 3\n4 5 6\n4 5 7\n").unwrap();
        let sub = Subgraph::new(vec![
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
        ]);
        let fam = extract_family(&h, &sub).unwrap();
        assert_eq!(fam.walks.len(), 2);
        assert!(verify(&h, &fam, false, false).passed());
        assert!(!verify(&h, &fam, false, true).passed());
    }

    #[test]
    fn extract_empty() {
        let h = Hypergraph::new(3, vec![]).unwrap();
        let fam = extract_family(&h, &Subgraph::default()).unwrap();
        assert!(fam.walks.is_empty());
    }

    #[test]
    fn extract_rejects_bad_degrees() {
        let h = two_edges();
        let sub = Subgraph::new(vec![(0, 0), (0, 1), (1, 0), (1, 3)]);
        assert!(matches!(
            extract_family(&h, &sub),
            Err(Error::DegreeSpec(_))
        ));
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            euler_family(&Hypergraph::parse("3\n0 1 2\n").unwrap()).unwrap(),
            None
        );
        let fam = euler_family(&fano()).unwrap().unwrap();
        assert!(verify(&fano(), &fam, false, false).passed());
        let fam = euler_family(&two_edges()).unwrap().unwrap();
        assert_eq!(fam.walks.len(), 1);
    }

    #[test]
    fn spanning_examples() {
        let single = Hypergraph::parse("3\n0 1 2\n").unwrap();
        assert!(matches!(
            spanning_euler_tour(&single).unwrap(),
            SpanningOutcome::Failed(_)
        ));
        let f3 = fano().scaled(3);
        let tour = spanning_euler_tour(&f3).unwrap().tour().unwrap();
        assert_eq!(tour.len(), 21);
        let report = verify(
            &f3,
            &EulerFamily::single(tour, Provenance::Input),
            true,
            true,
        );
        assert!(report.is_spanning);
        let sqs = steiner_quadruple_system_8();
        let tour = spanning_euler_tour(&sqs).unwrap().tour().unwrap();
        assert_eq!(tour.len(), 14);
        assert_eq!(tour.vertices().unique().count(), 8);
    }

    #[test]
    fn verify_flags_defects() {
        let h = two_edges();
        let bad = EulerFamily::parse("0 0 0 1\n").unwrap();
        let report = verify(&h, &bad, false, false);
        assert!(report
            .violations
            .contains(&Violation::RepeatedVertex { walk: 0, pos: 0 }));
        assert!(!report.is_family);

        let h = Hypergraph::parse("4\n0 1 2\n0 1 3\n0 1\n").unwrap();
        let missing = EulerFamily::parse("0 0 1 1\n").unwrap();
        let report = verify(&h, &missing, false, false);
        assert_eq!(report.violations, vec![Violation::EdgeMissing { edge: 2 }]);

        let report = verify(
            &two_edges(),
            &EulerFamily::parse("0 0 1 1").unwrap(),
            true,
            true,
        );
        assert!(report.is_tour && !report.is_spanning);
        assert_eq!(report.violations.len(), 2);
    }

    #[test]
    fn walk_parse_errors() {
        assert!(ClosedWalk::parse("0 1 2").is_err());
        assert!(ClosedWalk::parse("0 x").is_err());
    }

    #[test]
    fn line_graph_cycles() {
        assert!(
            line_graph_hamiltonian_cycle(&two_edges(), &ClosedWalk::parse("0 0 1 1").unwrap())
                .is_err()
        );
        let h = fano();
        let fam = euler_family(&h).unwrap().unwrap();
        if fam.walks.len() == 1 {
            let cycle = line_graph_hamiltonian_cycle(&h, &fam.walks[0]).unwrap();
            assert!(is_line_graph_hamiltonian_cycle(&h, &cycle));
        }
        assert!(!is_line_graph_hamiltonian_cycle(&h, &[0, 1, 2, 3, 4, 5]));
        assert!(!is_line_graph_hamiltonian_cycle(&h, &[0, 0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn ucycle_rewrite() {
        let walk = ClosedWalk::parse("0 1 1 2").unwrap();
        let u = emit_ucycle(&walk);
        assert_eq!(
            u.junctions,
            vec![
                Junction {
                    vertex: 1,
                    from: 1,
                    to: 2
                },
                Junction {
                    vertex: 0,
                    from: 2,
                    to: 1
                },
            ]
        );
        assert_eq!(u.to_string(), "1:1,2 0:2,1");
    }
}
