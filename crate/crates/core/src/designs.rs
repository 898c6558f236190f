//! Steiner triple systems, the Steiner quadruple system of order 8, and
//! design validation.

use crate::error::{Error, Result};
use crate::hypergraph::{DegreeCap, Hypergraph};

/// Parameters of a `t-(v, K, λ)` design: a `v`-vertex hypergraph with every
/// edge size in `K` and every `t`-subset in exactly `λ` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignSpec {
    pub t: usize,
    pub v: usize,
    pub block_sizes: Vec<usize>,
    pub lambda: usize,
}

impl DesignSpec {
    pub fn new(t: usize, v: usize, mut block_sizes: Vec<usize>, lambda: usize) -> Result<Self> {
        block_sizes.sort_unstable();
        block_sizes.dedup();
        let ok = match (block_sizes.first(), block_sizes.last()) {
            (Some(&lo), Some(&hi)) => t <= lo && hi <= v && lambda >= 1,
            _ => false,
        };
        if !ok {
            return Err(Error::OutOfRange {
                what: "design parameters",
                detail: format!("t = {t}, v = {v}, K = {block_sizes:?}, lambda = {lambda}"),
            });
        }
        Ok(Self {
            t,
            v,
            block_sizes,
            lambda,
        })
    }

    /// Uniform design `t-(v, k, λ)`.
    pub fn uniform(t: usize, v: usize, k: usize, lambda: usize) -> Result<Self> {
        Self::new(t, v, vec![k], lambda)
    }
}

/// Whether `h` is a design with parameters `spec`.
pub fn validate_design(h: &Hypergraph, spec: &DesignSpec) -> Result<bool> {
    if h.vertex_count() != spec.v {
        return Ok(false);
    }
    if h.edges()
        .iter()
        .any(|e| spec.block_sizes.binary_search(&e.len()).is_err())
    {
        return Ok(false);
    }
    let (lo, hi) = h.t_degree_bounds(spec.t, DegreeCap::default())?;
    Ok(lo == spec.lambda && hi == spec.lambda)
}

/// Repeats every edge `lambda` times, multiplying all `t`-degrees by
/// `lambda`.
pub fn scale(h: &Hypergraph, lambda: usize) -> Result<Hypergraph> {
    if lambda == 0 {
        return Err(Error::OutOfRange {
            what: "lambda",
            detail: "scale factor must be at least 1".into(),
        });
    }
    Ok(h.scaled(lambda))
}

/// The Fano plane, as the translates of `{0, 1, 3}` modulo 7.
pub fn fano() -> Hypergraph {
    let blocks = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    Hypergraph::new(7, blocks).expect("Fano blocks are valid")
}

/// A Steiner triple system of order `n` (`n ≡ 1, 3 mod 6`, `n >= 7`).
///
/// `n = 7` gives the Fano plane; otherwise the Bose construction handles
/// `n ≡ 3 (mod 6)` and the Skolem construction `n ≡ 1 (mod 6)`.
pub fn steiner_triple_system(n: usize) -> Result<Hypergraph> {
    if n < 7 || !matches!(n % 6, 1 | 3) {
        return Err(Error::OutOfRange {
            what: "STS order",
            detail: format!("n = {n} must be >= 7 and congruent to 1 or 3 mod 6"),
        });
    }
    let blocks = match n {
        7 => return Ok(fano()),
        _ if n % 6 == 3 => bose(n / 3),
        _ => skolem((n - 1) / 3),
    };
    Hypergraph::new(n, blocks)
}

/// Bose construction on `Z_q × Z_3` with `q` odd, using the idempotent
/// commutative quasigroup `x ∘ y = (x + y) / 2 mod q`. Point `(x, i)` is
/// `x + i q`.
fn bose(q: usize) -> Vec<Vec<usize>> {
    let half = q.div_ceil(2); // inverse of 2 modulo odd q
    let op = |x: usize, y: usize| (x + y) * half % q;
    let p = |x: usize, i: usize| x + (i % 3) * q;
    let mut blocks = Vec::new();
    for x in 0..q {
        blocks.push(vec![p(x, 0), p(x, 1), p(x, 2)]);
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                blocks.push(vec![p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Skolem construction on `{∞} ∪ Z_{2s} × Z_3` using the half-idempotent
/// commutative quasigroup of order `2s`. Point `(x, i)` is `x + 2si`; `∞`
/// is `6s`.
fn skolem(order: usize) -> Vec<Vec<usize>> {
    let s = order / 2;
    let op = |x: usize, y: usize| {
        let sum = (x + y) % order;
        if sum.is_multiple_of(2) {
            sum / 2
        } else {
            (sum - 1) / 2 + s
        }
    };
    let p = |x: usize, i: usize| x + (i % 3) * order;
    let inf = 3 * order;
    let mut blocks = Vec::new();
    for x in 0..s {
        blocks.push(vec![p(x, 0), p(x, 1), p(x, 2)]);
    }
    for x in 0..s {
        for i in 0..3 {
            blocks.push(vec![inf, p(x + s, i), p(x, i + 1)]);
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                blocks.push(vec![p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// The Steiner quadruple system of order 8: the 14 four-subsets of
/// `{0..7}` whose elements XOR to zero (the planes of `AG(3, 2)`).
pub fn steiner_quadruple_system_8() -> Hypergraph {
    let mut blocks = Vec::new();
    for a in 0..8usize {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let d = a ^ b ^ c;
                if d > c {
                    blocks.push(vec![a, b, c, d]);
                }
            }
        }
    }
    Hypergraph::new(8, blocks).expect("affine planes are valid blocks")
}
