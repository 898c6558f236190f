//! Hypergraphs with multiple edges, their incidence graphs and the
//! structural queries used to decide which constructions apply.

use std::collections::HashMap;
use std::fmt::Write as _;

use itertools::Itertools;
use num_integer::binomial;

use crate::bipartite::{BipartiteGraph, Dsu};
use crate::error::{Error, Result};

/// Incidence graph of a hypergraph: X-node `i` is edge `i`, Y-node `v` is
/// vertex `v`.
pub type IncidenceGraph = BipartiteGraph;

/// Hypergraph on vertices `0..n` with an ordered list of edges.
///
/// Each edge is stored as a sorted set of vertices. Repeated edges are kept
/// as separate entries; an edge's index in the list is its identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// An incident `(vertex, edge)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub vertex: usize,
    pub edge: usize,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut checked = Vec::with_capacity(edges.len());
        for (i, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { edge: i });
            }
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange {
                    edge: i,
                    vertex: v,
                    n,
                });
            }
            edge.sort_unstable();
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex {
                    edge: i,
                    vertex: w[0],
                });
            }
            checked.push(edge);
        }
        Ok(Self { n, edges: checked })
    }

    /// Parses the line-oriented hypergraph format: the first non-comment
    /// line holds `n`, each further non-empty line one edge. Lines starting
    /// with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        let mut edge_lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = lineno + 1;
            if n.is_none() {
                let value = line.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("expected vertex count, found {line:?}"),
                })?;
                n = Some(value);
                continue;
            }
            let edge = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("invalid vertex id {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            edges.push(edge);
            edge_lines.push(lineno);
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing vertex count header".into(),
        })?;
        Self::new(n, edges).map_err(|e| match e {
            Error::VertexOutOfRange { edge, .. }
            | Error::RepeatedVertex { edge, .. }
            | Error::EmptyEdge { edge } => Error::Parse {
                line: edge_lines[edge],
                message: e.to_string(),
            },
            other => other,
        })
    }

    /// Serialises to the format read by [`Hypergraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for edge in &self.edges {
            let _ = writeln!(out, "{}", edge.iter().join(" "));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn contains(&self, edge: usize, vertex: usize) -> bool {
        self.edges
            .get(edge)
            .is_some_and(|e| e.binary_search(&vertex).is_ok())
    }

    pub fn flags(&self) -> Vec<Flag> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(edge, vs)| vs.iter().map(move |&vertex| Flag { vertex, edge }))
            .collect()
    }

    /// Vertex degrees (number of edges containing each vertex).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Minimum edge size, or `None` without edges.
    pub fn corank(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    /// Maximum edge size, or `None` without edges.
    pub fn rank(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).max()
    }

    /// Largest number of copies of a single edge (0 without edges).
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: HashMap<&[usize], usize> = HashMap::new();
        for edge in &self.edges {
            *counts.entry(edge.as_slice()).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Number of components; isolated vertices are singleton components.
    pub fn component_count(&self) -> usize {
        self.components_without(None)
    }

    fn components_without(&self, skip: Option<usize>) -> usize {
        let mut dsu = Dsu::new(self.n);
        for (i, edge) in self.edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            for w in edge.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        dsu.count()
    }

    pub fn incidence(&self) -> IncidenceGraph {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| e.iter().map(move |&v| (i, v)))
            .collect();
        BipartiteGraph::new(self.edges.len(), self.n, &pairs)
            .expect("hypergraph invariants give a simple incidence graph")
    }

    /// Minimum and maximum number of edges containing a `t`-subset of the
    /// vertices, by exhaustive enumeration of all `t`-subsets.
    pub fn t_degree_bounds(&self, t: usize, cap: DegreeCap) -> Result<(usize, usize)> {
        if t > self.n {
            return Err(Error::OutOfRange {
                what: "t",
                detail: format!("t = {t} exceeds n = {}", self.n),
            });
        }
        if t == 0 {
            return Ok((self.edges.len(), self.edges.len()));
        }
        if self.n > cap.max_vertices || t > cap.max_t || self.n > 64 {
            return Err(Error::CapExceeded(format!(
                "t-degree enumeration limited to n <= {}, t <= {} (got n = {}, t = {t})",
                cap.max_vertices.min(64),
                cap.max_t,
                self.n
            )));
        }
        let masks: Vec<u64> = self
            .edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect();
        let mut lo = usize::MAX;
        let mut hi = 0;
        for subset in (0..self.n).combinations(t) {
            let mask = subset.iter().fold(0u64, |m, &v| m | (1u64 << v));
            let d = masks.iter().filter(|&&e| e & mask == mask).count();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok((lo, hi))
    }

    /// Minimum `t`-degree with the default cap.
    pub fn min_t_degree(&self, t: usize) -> Result<usize> {
        self.t_degree_bounds(t, DegreeCap::default())
            .map(|(lo, _)| lo)
    }

    /// Structural summary with `t`-degree bounds for each requested `t`.
    pub fn profile(&self, ts: &[usize]) -> Result<Profile> {
        let rank = self.rank().unwrap_or(0);
        let mut degrees = Vec::with_capacity(ts.len());
        for &t in ts {
            if t == 0 || t > rank {
                return Err(Error::OutOfRange {
                    what: "t",
                    detail: format!("t = {t} outside 1..={rank}"),
                });
            }
            let (min, max) = self.t_degree_bounds(t, DegreeCap::default())?;
            degrees.push(TDegree { t, min, max });
        }
        Ok(Profile {
            vertices: self.n,
            edges: self.edges.len(),
            corank: self.corank(),
            rank: self.rank(),
            max_multiplicity: self.max_multiplicity(),
            components: self.component_count(),
            degrees,
        })
    }

    /// Whether the hypergraph is connected and stays connected after
    /// removing any fewer than `k` flags. Removing flag `(v, e)` deletes `v`
    /// from `e` only; an edge emptied this way is left isolated.
    pub fn is_flag_connected(&self, k: usize, cap: u64) -> Result<bool> {
        if k == 0 {
            return Err(Error::OutOfRange {
                what: "k",
                detail: "flag-connectivity threshold must be at least 1".into(),
            });
        }
        let flags = self.flags();
        let removals = k - 1;
        let work = if removals > flags.len() {
            0
        } else {
            binomial(flags.len() as u128, removals as u128)
        };
        if work > cap as u128 {
            return Err(Error::CapExceeded(format!(
                "C({}, {removals}) = {work} flag subsets exceeds cap {cap}",
                flags.len()
            )));
        }
        let nodes = self.n + self.edges.len();
        let connected_without = |removed: &[usize]| {
            let mut dsu = Dsu::new(nodes);
            let mut r = 0;
            for (i, flag) in flags.iter().enumerate() {
                if r < removed.len() && removed[r] == i {
                    r += 1;
                    continue;
                }
                dsu.union(flag.vertex, self.n + flag.edge);
            }
            dsu.count() <= 1
        };
        for size in 0..=removals.min(flags.len()) {
            for removed in (0..flags.len()).combinations(size) {
                if !connected_without(&removed) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Edges `e` with `c(H - e) = c(H) + |e| - 1`. Deleting an edge keeps its
    /// vertices.
    pub fn strong_cut_edges(&self) -> Vec<usize> {
        let base = self.component_count();
        (0..self.edges.len())
            .filter(|&i| self.components_without(Some(i)) == base + self.edges[i].len() - 1)
            .collect()
    }

    /// Whether a closed walk through every flag exactly once exists: all
    /// vertex degrees and all edge sizes are even.
    pub fn flag_spanning_tour_exists(&self) -> bool {
        self.edges.iter().all(|e| e.len() % 2 == 0) && self.degrees().iter().all(|d| d % 2 == 0)
    }

    /// Checks `δ_i / δ_j >= C(n-i, j-i) / C(k-i, j-i)` where `k` is the rank.
    /// This always holds; a `false` return points at a bug.
    pub fn degree_ratio_holds(&self, i: usize, j: usize) -> Result<bool> {
        let rank = self.rank().unwrap_or(0);
        if i > j || j > rank {
            return Err(Error::OutOfRange {
                what: "(i, j)",
                detail: format!("need 0 <= i <= j <= rank = {rank}, got ({i}, {j})"),
            });
        }
        let cap = DegreeCap {
            max_t: j.max(DegreeCap::default().max_t),
            ..DegreeCap::default()
        };
        let di = self.t_degree_bounds(i, cap)?.0 as u128;
        let dj = self.t_degree_bounds(j, cap)?.0 as u128;
        if dj == 0 {
            return Err(Error::ZeroDegree(j));
        }
        let lhs = binomial((rank - i) as u128, (j - i) as u128);
        let rhs = binomial((self.n - i) as u128, (j - i) as u128);
        Ok(di * lhs >= dj * rhs)
    }

    /// Each edge repeated `lambda` times in place.
    pub fn scaled(&self, lambda: usize) -> Self {
        let edges = self
            .edges
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.clone(), lambda))
            .collect();
        Self { n: self.n, edges }
    }
}

/// Limits on exhaustive `t`-subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCap {
    pub max_vertices: usize,
    pub max_t: usize,
}

impl Default for DegreeCap {
    fn default() -> Self {
        Self {
            max_vertices: 64,
            max_t: 4,
        }
    }
}

/// Default cap on the number of flag subsets examined for flag-connectivity.
pub const FLAG_SUBSET_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TDegree {
    pub t: usize,
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub vertices: usize,
    pub edges: usize,
    pub corank: Option<usize>,
    pub rank: Option<usize>,
    pub max_multiplicity: usize,
    pub components: usize,
    pub degrees: Vec<TDegree>,
}

impl Profile {
    pub fn min_degree(&self, t: usize) -> Option<usize> {
        self.degrees.iter().find(|d| d.t == t).map(|d| d.min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Hypergraph {
        Hypergraph::parse("7\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n4 5 0\n5 6 1\n6 0 2\n").unwrap()
    }

    #[test]
    fn parse_examples() {
        let h = Hypergraph::parse("3\n0 1 2\n").unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);

        let h = Hypergraph::parse("4\n0 1 2\n0 1 2\n").unwrap();
        assert_eq!(h.max_multiplicity(), 2);

        let err = Hypergraph::parse("3\n0 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parse_errors() {
        assert!(Hypergraph::parse("3\n0 0 1\n").is_err());
        assert!(Hypergraph::parse("x\n0 1\n").is_err());
        assert!(Hypergraph::parse("# only comments\n").is_err());
        assert!(Hypergraph::parse("3\n0 a\n").is_err());
        assert!(matches!(
            Hypergraph::new(3, vec![vec![]]),
            Err(Error::EmptyEdge { edge: 0 })
        ));
    }

    #[test]
    fn parse_comments_and_round_trip() {
        let h = Hypergraph::parse("# a comment\n5\n\n# edge list\n4 2 0\n1 3\n").unwrap();
        assert_eq!(h.edge(0), &[0, 2, 4]);
        assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(fano().incidence().edge_count(), 21);
        let star = Hypergraph::parse("3\n0 1 2\n").unwrap().incidence();
        assert_eq!(star.x_count(), 1);
        assert_eq!(star.x_neighbors(0), &[0, 1, 2]);
    }

    #[test]
    fn fano_profile() {
        let p = fano().profile(&[1, 2, 3]).unwrap();
        assert_eq!(
            (p.corank, p.rank, p.max_multiplicity),
            (Some(3), Some(3), 1)
        );
        assert_eq!(p.min_degree(1), Some(3));
        assert_eq!(p.min_degree(2), Some(1));
        assert_eq!(p.min_degree(3), Some(0));
        assert_eq!(p.components, 1);
        assert!(fano().profile(&[4]).is_err());

        let p = fano().scaled(3).profile(&[2]).unwrap();
        assert_eq!(p.max_multiplicity, 3);
        assert_eq!(p.min_degree(2), Some(3));
    }

    #[test]
    fn degree_cap() {
        let h = Hypergraph::new(70, vec![(0..70).collect()]).unwrap();
        assert!(matches!(h.min_t_degree(2), Err(Error::CapExceeded(_))));
        assert!(matches!(fano().min_t_degree(5), Err(Error::CapExceeded(_))));
        assert!(matches!(
            fano().min_t_degree(8),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn flag_connectivity_examples() {
        let disconnected = Hypergraph::parse("4\n0 1\n2 3\n").unwrap();
        assert!(!disconnected.is_flag_connected(1, FLAG_SUBSET_CAP).unwrap());
        assert!(fano().is_flag_connected(2, FLAG_SUBSET_CAP).unwrap());
        assert!(fano().is_flag_connected(3, FLAG_SUBSET_CAP).unwrap());
        assert!(!fano().is_flag_connected(4, FLAG_SUBSET_CAP).unwrap());
        let path = Hypergraph::parse("5\n0 1 2\n2 3 4\n").unwrap();
        assert!(path.is_flag_connected(1, FLAG_SUBSET_CAP).unwrap());
        assert!(!path.is_flag_connected(2, FLAG_SUBSET_CAP).unwrap());
        assert!(matches!(
            fano().is_flag_connected(5, 10),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn strong_cut_edge_examples() {
        let single = Hypergraph::parse("3\n0 1 2\n").unwrap();
        assert_eq!(single.strong_cut_edges(), vec![0]);
        let path = Hypergraph::parse("5\n0 1 2\n2 3 4\n").unwrap();
        assert_eq!(path.strong_cut_edges(), vec![0, 1]);
        assert!(fano().strong_cut_edges().is_empty());
    }

    #[test]
    fn flag_spanning_parity() {
        assert!(!fano().flag_spanning_tour_exists());
        assert!(Hypergraph::parse("4\n0 1 2 3\n0 1 2 3\n")
            .unwrap()
            .flag_spanning_tour_exists());
        assert!(!Hypergraph::parse("2\n0 1\n")
            .unwrap()
            .flag_spanning_tour_exists());
    }

    #[test]
    fn degree_ratio_examples() {
        assert!(fano().degree_ratio_holds(1, 2).unwrap());
        assert!(fano().degree_ratio_holds(2, 2).unwrap());
        assert!(matches!(
            fano().degree_ratio_holds(1, 3),
            Err(Error::ZeroDegree(3))
        ));
        assert!(fano().degree_ratio_holds(2, 1).is_err());
    }
}
