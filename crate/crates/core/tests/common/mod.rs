#![allow(dead_code)]

use hypertour_core::{BipartiteGraph, Hypergraph, SimpleGraph};
use rand::seq::index::sample;
use rand::Rng;

/// Random hypergraph on `n` vertices with `m` edges of sizes in `sizes`
/// (clamped to `n`).
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Hypergraph {
    let lo = (*sizes.start()).min(n).max(1);
    let hi = (*sizes.end()).min(n).max(lo);
    let edges = (0..m)
        .map(|_| {
            let k = rng.gen_range(lo..=hi);
            sample(rng, n, k).into_vec()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

pub fn random_bipartite<R: Rng>(rng: &mut R, xc: usize, yc: usize, p: f64) -> BipartiteGraph {
    let mut pairs = Vec::new();
    for x in 0..xc {
        for y in 0..yc {
            if rng.gen_bool(p) {
                pairs.push((x, y));
            }
        }
    }
    BipartiteGraph::new(xc, yc, &pairs).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).unwrap()
}

/// All multisets of `m` triples from `0..n`, as edge lists.
pub fn triple_multisets(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push(vec![a, b, c]);
            }
        }
    }
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        triples: &[Vec<usize>],
        start: usize,
        left: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if left == 0 {
            out.push(pick.iter().map(|&i| triples[i].clone()).collect());
            return;
        }
        for i in start..triples.len() {
            pick.push(i);
            rec(triples, i, left - 1, pick, out);
            pick.pop();
        }
    }
    rec(&triples, 0, m, &mut pick, &mut out);
    out
}
