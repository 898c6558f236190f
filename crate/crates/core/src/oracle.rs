//! Brute-force ground truth, written without reference to the solvers.
//!
//! [`oracle_euler`] tries every way of choosing two vertices from each edge;
//! a choice with all vertex degrees even is an Euler family, a connected
//! one is an Euler tour, and one that touches every vertex is a spanning
//! tour. [`brute_matching`] is an exact branch-and-bound matching size.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matching::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Family,
    Tour,
    SpanningTour,
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "family" => Ok(Self::Family),
            "tour" => Ok(Self::Tour),
            "spanning" | "spanning-tour" | "spanningTour" => Ok(Self::SpanningTour),
            other => Err(Error::OutOfRange {
                what: "oracle mode",
                detail: format!("{other:?} (expected family, tour or spanning)"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub family_exists: bool,
    pub tour_exists: bool,
    pub spanning_tour_exists: bool,
    /// First choice (in enumeration order) satisfying the requested mode:
    /// the pair of vertices used by each edge.
    pub witness: Option<Vec<(usize, usize)>>,
    /// Number of choices examined.
    pub search_size: u64,
}

impl OracleVerdict {
    pub fn holds(&self, mode: OracleMode) -> bool {
        match mode {
            OracleMode::Family => self.family_exists,
            OracleMode::Tour => self.tour_exists,
            OracleMode::SpanningTour => self.spanning_tour_exists,
        }
    }
}

pub const ORACLE_STATE_CAP: u64 = 10_000_000;

/// Exhaustive search over all `Π C(|e|, 2)` vertex-pair choices. Stops
/// early only once a spanning tour is found, since that settles all three
/// answers.
pub fn oracle_euler(h: &Hypergraph, mode: OracleMode, cap: u64) -> Result<OracleVerdict> {
    let n = h.vertex_count();
    let options: Vec<Vec<(usize, usize)>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut pairs = Vec::new();
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    pairs.push((e[i], e[j]));
                }
            }
            pairs
        })
        .collect();
    let mut total: u64 = 1;
    for o in &options {
        total = total.saturating_mul(o.len() as u64);
    }
    if total > cap {
        return Err(Error::CapExceeded(format!(
            "{total} vertex-pair choices exceed cap {cap}"
        )));
    }
    let mut verdict = OracleVerdict {
        family_exists: false,
        tour_exists: false,
        spanning_tour_exists: false,
        witness: None,
        search_size: 0,
    };
    if total == 0 {
        return Ok(verdict);
    }

    let m = options.len();
    let mut digits = vec![0usize; m];
    loop {
        verdict.search_size += 1;
        let chosen: Vec<(usize, usize)> = (0..m).map(|i| options[i][digits[i]]).collect();
        let mut degree = vec![0usize; n];
        for &(a, b) in &chosen {
            degree[a] += 1;
            degree[b] += 1;
        }
        if degree.iter().all(|d| d % 2 == 0) {
            verdict.family_exists = true;
            let connected = m > 0 && used_part_connected(n, &chosen, &degree);
            let spanning = connected && degree.iter().all(|&d| d > 0);
            verdict.tour_exists |= connected;
            verdict.spanning_tour_exists |= spanning;
            let satisfies = match mode {
                OracleMode::Family => true,
                OracleMode::Tour => connected,
                OracleMode::SpanningTour => spanning,
            };
            if satisfies && verdict.witness.is_none() {
                verdict.witness = Some(chosen);
            }
            if spanning {
                break;
            }
        }
        // Mixed-radix increment.
        let mut i = 0;
        while i < m {
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    Ok(verdict)
}

fn used_part_connected(n: usize, pairs: &[(usize, usize)], degree: &[usize]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let Some(start) = (0..n).find(|&v| degree[v] > 0) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == degree.iter().filter(|&&d| d > 0).count()
}

pub const BRUTE_MATCHING_NODE_CAP: usize = 12;

/// Maximum matching size by branch and bound: the lowest undecided node is
/// either left unmatched or matched to each free neighbour in turn.
pub fn brute_matching(g: &SimpleGraph, max_nodes: usize) -> Result<usize> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(Error::CapExceeded(format!(
            "brute-force matching on {n} nodes exceeds cap {max_nodes}"
        )));
    }
    let mut taken = vec![false; n];
    let mut best = 0;
    branch(g, 0, &mut taken, 0, &mut best);
    Ok(best)
}

fn branch(g: &SimpleGraph, from: usize, taken: &mut [bool], size: usize, best: &mut usize) {
    let Some(u) = (from..taken.len()).find(|&u| !taken[u]) else {
        *best = (*best).max(size);
        return;
    };
    let free = taken[u..].iter().filter(|&&t| !t).count();
    if size + free / 2 <= *best {
        return;
    }
    taken[u] = true;
    for &v in g.neighbors(u) {
        if !taken[v] {
            taken[v] = true;
            branch(g, u + 1, taken, size + 1, best);
            taken[v] = false;
        }
    }
    branch(g, u + 1, taken, size, best);
    taken[u] = false;
}
