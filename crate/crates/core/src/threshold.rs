//! Vertex-count thresholds for admissible hypergraphs and the sufficient
//! conditions for spanning Euler tours built on them.

use num_integer::binomial;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, FLAG_SUBSET_CAP};

pub type Threshold = Ratio<i128>;

/// Minimum vertex count `g(c, k, μ)` for a hypergraph of corank `c`, rank
/// `k` and maximum edge multiplicity `μ` to be admissible.
///
/// The value can be fractional on the `2c - 1 <= k <= 2c` branch; callers
/// compare `n >= g` exactly.
pub fn admissible_threshold(c: usize, k: usize, mu: usize) -> Result<Threshold> {
    if c < 3 || k < c || mu == 0 {
        return Err(Error::UncoveredParameters { corank: c, rank: k });
    }
    let (ci, ki, mui) = (c as i128, k as i128, mu as i128);
    let pairs_plus_one = binomial(ki, 2) + 1;
    match (c, k) {
        (3, 3) => Ok(Threshold::from_integer(7)),
        (3, 4) => Ok(Threshold::from_integer(10)),
        _ if c >= 4 && k <= 2 * c - 2 => Ok(Threshold::from_integer(pairs_plus_one)),
        _ if k + 1 >= 2 * c && k <= 2 * c => {
            let num = 4 * ci * ci + ki * ki - 3 * ki + 2;
            let den = 4 * ci - 2 * ki + 2;
            Ok(Threshold::new(num, den))
        }
        _ => {
            // k > 2c here, so k - c - 1 >= c and the bracket is at least 1.
            let high = pow2(k - c - 1)?;
            let low = pow2(c)?;
            let bracket = high - low + 1;
            let value = (2 * mui)
                .checked_mul(ki - 1)
                .and_then(|v| v.checked_mul(bracket))
                .and_then(|v| v.checked_add(pairs_plus_one))
                .ok_or(Error::Overflow("g(c, k, mu)"))?;
            Ok(Threshold::from_integer(value))
        }
    }
}

fn pow2(e: usize) -> Result<i128> {
    if e >= 126 {
        return Err(Error::Overflow("g(c, k, mu)"));
    }
    Ok(1i128 << e)
}

/// Which sufficient conditions hold for a hypergraph.
///
/// `None` marks a condition that could not be evaluated because an
/// exhaustive search cap was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub corank: Option<usize>,
    pub rank: Option<usize>,
    pub max_multiplicity: usize,
    pub threshold: Option<Threshold>,
    pub admissible: bool,
    /// Flag-connectivity demanded for an Euler family: `1 + ceil(k / c)`.
    pub flag_connectivity_needed: Option<usize>,
    pub flag_connected: Option<bool>,
    /// Corank at least 3 and flag-connected enough: an Euler family exists.
    pub family_guaranteed: Option<bool>,
    /// Admissible and `δ_2 >= k`.
    pub spanning_by_pair_degree: Option<bool>,
    /// Admissible, `δ_3 >= 1` and `n >= k^2 - 3k + 5`.
    pub spanning_by_triple_degree: Option<bool>,
    /// Admissible and `δ_r >= 1` for some `4 <= r <= k`.
    pub spanning_by_high_degree: Option<bool>,
}

impl Assessment {
    /// Whether any of the spanning-tour conditions is known to hold.
    pub fn spanning_guaranteed(&self) -> bool {
        [
            self.spanning_by_pair_degree,
            self.spanning_by_triple_degree,
            self.spanning_by_high_degree,
        ]
        .contains(&Some(true))
    }
}

/// Evaluates admissibility and every sufficient condition on `h`.
pub fn assess(h: &Hypergraph) -> Assessment {
    let n = h.vertex_count();
    let corank = h.corank();
    let rank = h.rank();
    let mu = h.max_multiplicity();
    let threshold = match (corank, rank) {
        (Some(c), Some(k)) => admissible_threshold(c, k, mu).ok(),
        _ => None,
    };
    let admissible = threshold.is_some_and(|g| Threshold::from_integer(n as i128) >= g);

    let flag_connectivity_needed = match (corank, rank) {
        (Some(c), Some(k)) => Some(1 + k.div_ceil(c)),
        _ => None,
    };
    let flag_connected =
        flag_connectivity_needed.and_then(|need| h.is_flag_connected(need, FLAG_SUBSET_CAP).ok());
    let family_guaranteed = match corank {
        Some(c) if c >= 3 => flag_connected,
        Some(_) => Some(false),
        None => None,
    };

    let degree = |t: usize| h.min_t_degree(t).ok();
    let k = rank.unwrap_or(0);
    let gate = |cond: Option<bool>| {
        if admissible {
            cond
        } else {
            Some(false)
        }
    };
    let spanning_by_pair_degree = gate(degree(2).map(|d| d >= k));
    let spanning_by_triple_degree = gate(if (n as i128) < (k * k) as i128 - 3 * k as i128 + 5 {
        Some(false)
    } else {
        degree(3).map(|d| d >= 1)
    });
    // A 4-subset lies in an edge whenever some larger r-subset does, so
    // δ_r >= 1 for some r >= 4 is equivalent to δ_4 >= 1 once k >= 4.
    let spanning_by_high_degree = gate(if k >= 4 {
        degree(4).map(|d| d >= 1)
    } else {
        Some(false)
    });

    Assessment {
        corank,
        rank,
        max_multiplicity: mu,
        threshold,
        admissible,
        flag_connectivity_needed,
        flag_connected,
        family_guaranteed,
        spanning_by_pair_degree,
        spanning_by_triple_degree,
        spanning_by_high_degree,
    }
}
