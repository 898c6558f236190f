//! Euler families, spanning Euler tours, rank-two universal cycles and
//! block-intersection-graph Hamiltonian cycles for hypergraphs and designs.
//!
//! The solvers work on the bipartite incidence graph. An Euler family is an
//! even `(X, 2)`-regular subgraph, found through a matching gadget; a
//! spanning Euler tour is assembled from a nice spanning tree and a parity
//! correction on an auxiliary graph. Every result is re-verified against
//! the hypergraph before it is returned. [`oracle`] holds brute-force
//! checks that share no code with the solvers.

pub mod bipartite;
pub mod designs;
pub mod error;
pub mod euler;
pub mod hypergraph;
pub mod matching;
pub mod oracle;
pub mod parity;
pub mod spanning;
pub mod threshold;

pub use bipartite::{BipartiteGraph, Node, Subgraph};
pub use error::{Error, Result};
pub use euler::{
    emit_ucycle, euler_family, extract_family, line_graph_hamiltonian_cycle, spanning_euler_tour,
    verify, ClosedWalk, EulerFamily, Provenance, SpanningOutcome, Stage, TourReport, UCycle,
};
pub use hypergraph::{Flag, Hypergraph, IncidenceGraph, Profile};
pub use matching::{max_matching, Matching, SimpleGraph};
pub use parity::{delta, find_barrier_brute_force, find_even_x2_subgraph, Barrier};
pub use threshold::{admissible_threshold, assess, Assessment, Threshold};
