//! Shared inputs for the benchmarks.

use hypertour_core::designs::{scale, steiner_quadruple_system_8, steiner_triple_system};
use hypertour_core::{Hypergraph, SimpleGraph};

/// `lambda`-fold SQS(8).
pub fn scaled_sqs8(lambda: usize) -> Hypergraph {
    scale(&steiner_quadruple_system_8(), lambda).expect("lambda >= 1")
}

pub fn sts(n: usize) -> Hypergraph {
    steiner_triple_system(n).expect("admissible order")
}

/// Circulant graph on `n` nodes joining `i` to `i + d` for each `d` in
/// `steps`. Odd cycles make the matching search build blossoms.
pub fn circulant(n: usize, steps: &[usize]) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for &d in steps {
            let j = (i + d) % n;
            if i != j {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).expect("valid circulant")
}
