//! Euler characteristics by direct summation over graphs.

use graphchi_core::exactnum::BigInt;
use thiserror::Error;

use super::canon::canonical_form;
use super::enumerate::{connected_admissible, enumerate_multigraphs};
use super::multigraph::MultiGraph;
use super::symmetry::orientable;
use crate::Parity;

pub const MAX_CONNECTED_RANK: usize = 5;
pub const MAX_DISCONNECTED_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{what} = {value} exceeds the practical cap of {cap}; {hint}")]
    ResourceCap { what: &'static str, value: usize, cap: usize, hint: &'static str },
    #[error("invalid argument: {0}")]
    Argument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Connected graphs of rank g.
    Connected(usize),
    /// All graphs with Euler characteristic −n.
    Disconnected(usize),
}

/// The grading entering the sign: edges for even, vertices for odd.
pub fn degree(g: &MultiGraph, parity: Parity) -> usize {
    match parity {
        Parity::Even => g.edge_count(),
        Parity::Odd => g.vertex_count(),
    }
}

fn sign_of(d: usize) -> i64 {
    if d.is_multiple_of(2) { 1 } else { -1 }
}

pub fn check_connected_cap(g: usize) -> Result<(), GraphError> {
    if g < 2 {
        return Err(GraphError::Argument(format!("rank must be at least 2, got {g}")));
    }
    if g > MAX_CONNECTED_RANK {
        return Err(GraphError::ResourceCap {
            what: "rank",
            value: g,
            cap: MAX_CONNECTED_RANK,
            hint: "use the generating-function tables for higher ranks",
        });
    }
    Ok(())
}

/// Orientable connected admissible graphs of rank g with their degree.
fn orientable_connected(g: usize, parity: Parity) -> Vec<(MultiGraph, usize)> {
    connected_admissible(g)
        .into_iter()
        .filter(|x| orientable(x, parity))
        .map(|x| {
            let d = degree(&x, parity);
            (x, d)
        })
        .collect()
}

/// Σ (−1)^{|E|} over even-orientable graphs, or Σ (−1)^{|V|} over
/// odd-orientable graphs, in the requested index set.
///
/// In disconnected mode the graphs are assembled as multisets of connected
/// components: a union is orientable exactly when every component is and no
/// component of odd degree repeats.
pub fn chi_oracle(parity: Parity, mode: OracleMode) -> Result<BigInt, GraphError> {
    match mode {
        OracleMode::Connected(g) => {
            check_connected_cap(g)?;
            Ok(BigInt::from(orientable_connected(g, parity).iter().map(|(_, d)| sign_of(*d)).sum::<i64>()))
        }
        OracleMode::Disconnected(n) => {
            if n > MAX_DISCONNECTED_DEGREE {
                return Err(GraphError::ResourceCap {
                    what: "n",
                    value: n,
                    cap: MAX_DISCONNECTED_DEGREE,
                    hint: "use the exponential generating function for larger n",
                });
            }
            let mut classes = Vec::new();
            for g in 2..=n + 1 {
                for (_, d) in orientable_connected(g, parity) {
                    classes.push((g - 1, d));
                }
            }
            Ok(BigInt::from(multiset_sum(&classes, 0, n)))
        }
    }
}

/// Σ over multisets of `classes[i..]` with total weight `rem` of (−1)^{Σ degrees}.
fn multiset_sum(classes: &[(usize, usize)], i: usize, rem: usize) -> i64 {
    if rem == 0 {
        return 1;
    }
    if i == classes.len() {
        return 0;
    }
    let (w, d) = classes[i];
    let max = if d % 2 == 1 { 1 } else { rem / w };
    (0..=max.min(rem / w)).map(|m| sign_of(d * m) * multiset_sum(classes, i + 1, rem - m * w)).sum()
}

/// Orientability of a disjoint union predicted from its components.
pub fn union_orientable_by_rule(components: &[MultiGraph], parity: Parity) -> bool {
    if !components.iter().all(|c| orientable(c, parity)) {
        return false;
    }
    let mut odd: Vec<_> = components
        .iter()
        .filter(|c| degree(c, parity) % 2 == 1)
        .map(canonical_form)
        .collect();
    let before = odd.len();
    odd.sort();
    odd.dedup();
    odd.len() == before
}

/// Disconnected χ_n by enumerating every admissible graph with |E| − |V| = n.
pub fn chi_oracle_direct(parity: Parity, n: usize) -> Result<BigInt, GraphError> {
    if n > MAX_DISCONNECTED_DEGREE {
        return Err(GraphError::ResourceCap { what: "n", value: n, cap: MAX_DISCONNECTED_DEGREE, hint: "" });
    }
    let mut total = 0i64;
    for v in 0..=2 * n {
        for f in enumerate_multigraphs(v, v + n, false, true) {
            let g = f.graph();
            if orientable(&g, parity) {
                total += sign_of(degree(&g, parity));
            }
        }
    }
    Ok(BigInt::from(total))
}

/// Number of orientable admissible classes with `s` edges, indexed by the
/// vertex count r (connected or not, including the empty graph at s = 0).
pub fn orientable_counts(s: usize, parity: Parity) -> Vec<(usize, usize)> {
    (0..=2 * s / 3)
        .map(|r| {
            let c = enumerate_multigraphs(r, s, false, true)
                .into_iter()
                .filter(|f| orientable(&f.graph(), parity))
                .count();
            (r, c)
        })
        .collect()
}
