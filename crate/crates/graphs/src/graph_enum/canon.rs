//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is explored without pruning. Every leaf is a vertex
//! ordering; the canonical form is the smallest adjacency encoding over all
//! leaves, and the leaves that attain it are exactly the automorphic images
//! of one another, which yields the full vertex automorphism group.

use super::multigraph::MultiGraph;

/// Byte encoding of an isomorphism class: vertex count, then the upper
/// triangle of the multiplicity matrix (diagonal included) row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonical representative, edges in increasing (a, b) order.
    pub fn graph(&self) -> MultiGraph {
        let n = self.vertex_count();
        let mut adj = vec![0u8; n * n];
        let mut it = self.0[1..].iter();
        for a in 0..n {
            for b in a..n {
                let m = *it.next().unwrap();
                adj[a * n + b] = m;
                adj[b * n + a] = m;
            }
        }
        MultiGraph::from_adjacency(n, &adj)
    }
}

#[derive(Debug, Clone)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `relabel[v]` is the canonical index of vertex `v`.
    pub relabel: Vec<usize>,
    /// All vertex permutations (as maps v ↦ σ(v)) preserving multiplicities.
    pub vertex_automorphisms: Vec<Vec<usize>>,
}

struct Search<'a> {
    n: usize,
    adj: &'a [u8],
    best: Option<Vec<u8>>,
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut code = Vec::with_capacity(1 + n * (n + 1) / 2);
        code.push(n as u8);
        for i in 0..n {
            for j in i..n {
                code.push(self.adj[order[i] * n + order[j]]);
            }
        }
        code
    }

    /// Splits cells until stable. Colours stay ordered consistently with the
    /// input colouring, so the refined partition is isomorphism-invariant.
    fn refine(&self, colors: &mut Vec<usize>) {
        let n = self.n;
        let mut cells = count_distinct(colors);
        loop {
            let mut sigs: Vec<(usize, Vec<(usize, u8)>, usize)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u8)> = (0..n)
                        .filter(|&w| w != v && self.adj[v * n + w] > 0)
                        .map(|w| (colors[w], self.adj[v * n + w]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut rank = 0;
            for i in 0..n {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    rank += 1;
                }
                colors[sigs[i].2] = rank;
            }
            let now = if n == 0 { 0 } else { rank + 1 };
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn explore(&mut self, mut colors: Vec<usize>) {
        self.refine(&mut colors);
        let n = self.n;
        // first cell, in colour order, with more than one vertex
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        match (0..n).find(|&c| size[c] > 1) {
            None => {
                let mut order = vec![0; n];
                for v in 0..n {
                    order[colors[v]] = v;
                }
                let code = self.encode(&order);
                match &self.best {
                    Some(b) if code > *b => {}
                    Some(b) if code == *b => self.leaves.push(order),
                    _ => {
                        self.best = Some(code);
                        self.leaves = vec![order];
                    }
                }
            }
            Some(cell) => {
                for v in (0..n).filter(|&v| colors[v] == cell) {
                    let split = colors
                        .iter()
                        .enumerate()
                        .map(|(w, &c)| 2 * c + usize::from(c == cell && w != v))
                        .collect();
                    self.explore(split);
                }
            }
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn canonical_labeling(g: &MultiGraph) -> Labeling {
    let n = g.vertex_count();
    assert!(n < 256, "graphs are limited to 255 vertices");
    let adj = g.adjacency();
    let degrees = g.degrees();
    let mut keys: Vec<(usize, u8)> = (0..n).map(|v| (degrees[v], adj[v * n + v])).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let colors = keys.drain(..).map(|k| sorted.binary_search(&k).unwrap()).collect();
    let mut search = Search { n, adj: &adj, best: None, leaves: Vec::new() };
    search.explore(colors);
    let best = search.best.take().unwrap_or_else(|| vec![0]);
    let first = &search.leaves[0];
    let mut relabel = vec![0; n];
    for (i, &v) in first.iter().enumerate() {
        relabel[v] = i;
    }
    let vertex_automorphisms = search
        .leaves
        .iter()
        .map(|leaf| {
            let mut sigma = vec![0; n];
            for i in 0..n {
                sigma[first[i]] = leaf[i];
            }
            sigma
        })
        .collect();
    Labeling { form: CanonicalForm(best), relabel, vertex_automorphisms }
}

pub fn canonical_form(g: &MultiGraph) -> CanonicalForm {
    canonical_labeling(g).form
}
