//! Exhaustive generation of multigraphs with a given vertex and edge count.
//!
//! For every non-increasing degree sequence, symmetric multiplicity
//! matrices realising it are generated cell by cell and reduced to
//! canonical form. Vertices not yet processed that agree in degree and in
//! every filled row are interchangeable, so the current row is required to
//! be non-increasing across each such block.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use super::multigraph::MultiGraph;

/// Non-increasing sequences of `v` degrees, each at least `min_degree`,
/// summing to `total`.
pub fn degree_sequences(v: usize, total: usize, min_degree: usize) -> Vec<Vec<usize>> {
    fn rec(v: usize, total: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < v * min || total > v * max {
            return;
        }
        for d in (min..=max.min(total)).rev() {
            cur.push(d);
            rec(v - 1, total - d, min, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(v, total, min_degree, total, &mut Vec::new(), &mut out);
    out
}

struct Filler<'a> {
    n: usize,
    adj: Vec<u8>,
    rem: Vec<usize>,
    /// Block label of every vertex after the current row.
    blocks: Vec<usize>,
    connected: bool,
    out: &'a mut BTreeSet<CanonicalForm>,
}

impl Filler<'_> {
    fn cell(&mut self, i: usize, j: usize) {
        let n = self.n;
        if i == n {
            let g = MultiGraph::from_adjacency(n, &self.adj);
            if !self.connected || g.is_connected() {
                self.out.insert(canonical_form(&g));
            }
            return;
        }
        if j == n {
            if self.rem[i] == 0 {
                let saved = self.blocks.clone();
                let mut label = 0;
                for k in i + 1..n {
                    if k > i + 1 && (saved[k] != saved[k - 1] || self.adj[i * n + k] != self.adj[i * n + k - 1]) {
                        label += 1;
                    }
                    self.blocks[k] = label;
                }
                self.cell(i + 1, i + 1);
                self.blocks = saved;
            }
            return;
        }
        // what row i still needs must fit into the remaining cells
        let capacity: usize = 2 * (self.rem[i] / 2) * usize::from(i == j) + self.rem[j.max(i + 1)..].iter().sum::<usize>();
        if self.rem[i] > capacity {
            return;
        }
        if i == j {
            for l in 0..=self.rem[i] / 2 {
                self.rem[i] -= 2 * l;
                self.adj[i * n + i] = l as u8;
                self.cell(i, j + 1);
                self.rem[i] += 2 * l;
            }
            self.adj[i * n + i] = 0;
        } else {
            let mut top = self.rem[i].min(self.rem[j]);
            if j > i + 1 && self.blocks[j] == self.blocks[j - 1] {
                top = top.min(self.adj[i * n + j - 1] as usize);
            }
            for m in 0..=top {
                self.rem[i] -= m;
                self.rem[j] -= m;
                self.adj[i * n + j] = m as u8;
                self.adj[j * n + i] = m as u8;
                self.cell(i, j + 1);
                self.rem[i] += m;
                self.rem[j] += m;
            }
            self.adj[i * n + j] = 0;
            self.adj[j * n + i] = 0;
        }
    }
}

/// One canonical form per isomorphism class of multigraphs with `v`
/// vertices and `e` edges, sorted. `admissible_only` requires every degree
/// to be at least 3.
pub fn enumerate_multigraphs(v: usize, e: usize, connected: bool, admissible_only: bool) -> Vec<CanonicalForm> {
    let min_degree = if admissible_only { 3 } else { 0 };
    let seqs = degree_sequences(v, 2 * e, min_degree);
    let sets: Vec<BTreeSet<CanonicalForm>> = seqs
        .into_par_iter()
        .map(|degrees| {
            let mut out = BTreeSet::new();
            let blocks = degrees.clone();
            let mut f = Filler { n: v, adj: vec![0; v * v], rem: degrees, blocks, connected, out: &mut out };
            f.cell(0, 0);
            out
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    all.into_iter().collect()
}

/// Canonical representatives of connected admissible graphs of rank `g`.
pub fn connected_admissible(g: usize) -> Vec<MultiGraph> {
    (1..=2 * g.saturating_sub(1))
        .flat_map(|v| enumerate_multigraphs(v, g - 1 + v, true, true))
        .map(|f| f.graph())
        .collect()
}
