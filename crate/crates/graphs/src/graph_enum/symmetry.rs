//! Half-edge automorphisms, their sign characters, and orientability.
//!
//! An automorphism is a permutation of half-edges that commutes with the
//! pairing and maps half-edges at a common vertex to half-edges at a common
//! vertex. The group is generated by lifts of vertex automorphisms together
//! with swaps of parallel edges, flips of loops and swaps of loops at a
//! vertex. The characters used for orientability are homomorphisms, so it
//! suffices to evaluate them on these generators.

use std::collections::{BTreeMap, HashSet, VecDeque};

use graphchi_core::exactnum::BigInt;

use super::canon::canonical_labeling;
use super::multigraph::MultiGraph;
use crate::Parity;

/// A permutation as the image list `p[i]`.
pub type Perm = Vec<usize>;

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    // (a ∘ b)(i) = a[b[i]]
    b.iter().map(|&x| a[x]).collect()
}

/// Edge indices grouped by endpoint pair, each list increasing.
fn parallel_classes(g: &MultiGraph) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &e) in g.edges().iter().enumerate() {
        map.entry(e).or_default().push(i);
    }
    map
}

/// Half-edge permutation induced by a vertex automorphism `sigma`: the c-th
/// edge between a and b goes to the c-th edge between σ(a) and σ(b).
pub fn lift_vertex_permutation(g: &MultiGraph, sigma: &[usize]) -> Perm {
    let classes = parallel_classes(g);
    let mut p = vec![0; g.half_edge_count()];
    for (&(a, b), list) in &classes {
        let (x, y) = (sigma[a], sigma[b]);
        let target = &classes[&(x.min(y), x.max(y))];
        for (c, &i) in list.iter().enumerate() {
            let j = target[c];
            if a == b || g.edges()[j].0 == x {
                p[2 * i] = 2 * j;
                p[2 * i + 1] = 2 * j + 1;
            } else {
                p[2 * i] = 2 * j + 1;
                p[2 * i + 1] = 2 * j;
            }
        }
    }
    p
}

/// Checks that `p` commutes with the pairing and respects incidence.
pub fn is_automorphism(g: &MultiGraph, p: &[usize]) -> bool {
    let h = g.half_edge_count();
    if p.len() != h {
        return false;
    }
    let mut seen = vec![false; h];
    for &x in p {
        if x >= h || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    let mut vmap = vec![usize::MAX; g.vertex_count()];
    for i in 0..h {
        if p[MultiGraph::pairing(i)] != MultiGraph::pairing(p[i]) {
            return false;
        }
        let (v, w) = (g.incidence(i), g.incidence(p[i]));
        if vmap[v] == usize::MAX {
            vmap[v] = w;
        } else if vmap[v] != w {
            return false;
        }
    }
    // distinct vertices must go to distinct vertices
    let mut used = HashSet::new();
    vmap.iter().filter(|&&w| w != usize::MAX).all(|&w| used.insert(w))
}

/// Edge permutation α_E induced by a half-edge automorphism.
pub fn induced_edge_permutation(p: &[usize]) -> Perm {
    (0..p.len() / 2).map(|i| p[2 * i] / 2).collect()
}

/// Vertex permutation α_V; isolated vertices are fixed.
pub fn induced_vertex_permutation(g: &MultiGraph, p: &[usize]) -> Perm {
    let mut vmap: Vec<usize> = (0..g.vertex_count()).collect();
    for i in 0..p.len() {
        vmap[g.incidence(i)] = g.incidence(p[i]);
    }
    vmap
}

#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    /// Lifted vertex automorphisms followed by the edge-level generators.
    pub generators: Vec<Perm>,
    /// Vertex automorphisms; for isolated vertices these carry information
    /// the half-edge permutation cannot.
    pub vertex_automorphisms: Vec<Perm>,
    /// Group order |Aut_V| · Π m! · Π l! 2^l over parallel classes and loops.
    pub order: BigInt,
}

impl AutomorphismGroup {
    /// Generators together with the vertex permutation each one induces.
    pub fn generators_with_vertex_action(&self, g: &MultiGraph) -> Vec<(Perm, Perm)> {
        let lifted = self.vertex_automorphisms.len();
        self.generators
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let v = if i < lifted { self.vertex_automorphisms[i].clone() } else { induced_vertex_permutation(g, p) };
                (p.clone(), v)
            })
            .collect()
    }

    /// All elements of the group by breadth-first closure, as (half-edge,
    /// vertex) permutation pairs; `None` if the order exceeds `cap`.
    pub fn elements(&self, g: &MultiGraph, cap: usize) -> Option<Vec<(Perm, Perm)>> {
        if self.order > cap {
            return None;
        }
        let gens = self.generators_with_vertex_action(g);
        let id = ((0..g.half_edge_count()).collect::<Perm>(), (0..g.vertex_count()).collect::<Perm>());
        let mut seen: HashSet<(Perm, Perm)> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for (gh, gv) in &gens {
                let y = (compose(gh, &x.0), compose(gv, &x.1));
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        Some(out)
    }
}

fn factorial(n: usize) -> BigInt {
    BigInt::from(BigInt::factorial(n as u32))
}

pub fn automorphism_group(g: &MultiGraph) -> AutomorphismGroup {
    let lab = canonical_labeling(g);
    let mut generators: Vec<Perm> = lab.vertex_automorphisms.iter().map(|s| lift_vertex_permutation(g, s)).collect();
    let identity: Perm = (0..g.half_edge_count()).collect();
    let mut order = BigInt::from(lab.vertex_automorphisms.len());
    for (&(a, b), list) in &parallel_classes(g) {
        order *= factorial(list.len());
        for w in list.windows(2) {
            let mut p = identity.clone();
            p.swap(2 * w[0], 2 * w[1]);
            p.swap(2 * w[0] + 1, 2 * w[1] + 1);
            generators.push(p);
        }
        if a == b {
            order *= BigInt::from(BigInt::u_pow_u(2, list.len() as u32));
            let mut p = identity.clone();
            p.swap(2 * list[0], 2 * list[0] + 1);
            generators.push(p);
        }
    }
    AutomorphismGroup { generators, vertex_automorphisms: lab.vertex_automorphisms, order }
}

/// The character whose triviality defines orientability:
/// even: sign(α_E); odd: sign(α on half-edges) · sign(α_V).
pub fn orientation_character(parity: Parity, half_edge_perm: &[usize], vertex_perm: &[usize]) -> i64 {
    match parity {
        Parity::Even => perm_sign(&induced_edge_permutation(half_edge_perm)),
        Parity::Odd => perm_sign(half_edge_perm) * perm_sign(vertex_perm),
    }
}

pub fn orientable(g: &MultiGraph, parity: Parity) -> bool {
    let group = automorphism_group(g);
    group
        .generators_with_vertex_action(g)
        .iter()
        .all(|(h, v)| orientation_character(parity, h, v) == 1)
}

/// Fundamental cycles of a depth-first spanning forest. Vertices are visited
/// in increasing order and edges in increasing index. Edge i is oriented
/// from its first endpoint to its second.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub tree_edges: Vec<usize>,
    /// The non-tree edge owning each basis cycle, increasing.
    pub cotree_edges: Vec<usize>,
    /// Basis cycles as integer edge vectors.
    pub cycles: Vec<Vec<i64>>,
}

impl CycleBasis {
    pub fn new(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            incident[a].push(i);
            if a != b {
                incident[b].push(i);
            }
        }
        // parent[v] = (vertex, tree edge) towards the root
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut is_tree = vec![false; m];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![(root, 0usize)];
            while let Some(top) = stack.len().checked_sub(1) {
                let (v, next) = stack[top];
                if next == incident[v].len() {
                    stack.pop();
                    continue;
                }
                let e = incident[v][next];
                stack[top].1 += 1;
                let (a, b) = g.edges()[e];
                let w = if a == v { b } else { a };
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    is_tree[e] = true;
                    stack.push((w, 0));
                }
            }
        }
        let tree_edges = (0..m).filter(|&e| is_tree[e]).collect();
        let cotree_edges: Vec<usize> = (0..m).filter(|&e| !is_tree[e]).collect();
        // tree edges are never loops, so an edge points towards v iff v is its second endpoint
        let towards = |v: usize, e: usize| if g.edges()[e].1 == v { 1 } else { -1 };
        let cycles = cotree_edges
            .iter()
            .map(|&f| {
                let mut cycle = vec![0i64; m];
                cycle[f] = 1;
                // close a →f→ b by the tree path from b up to the meeting point and down to a
                let (a, b) = g.edges()[f];
                let (mut x, mut y) = (b, a);
                while x != y {
                    if depth[x] >= depth[y] {
                        let (p, e) = parent[x].unwrap();
                        cycle[e] -= towards(x, e);
                        x = p;
                    } else {
                        let (p, e) = parent[y].unwrap();
                        cycle[e] += towards(y, e);
                        y = p;
                    }
                }
                cycle
            })
            .collect();
        CycleBasis { tree_edges, cotree_edges, cycles }
    }

    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Coordinates of a cycle in this basis (its values on cotree edges).
    pub fn coordinates(&self, cycle: &[i64]) -> Vec<i64> {
        self.cotree_edges.iter().map(|&e| cycle[e]).collect()
    }
}

/// Boundary of an edge vector at each vertex (zero for cycles).
pub fn boundary(g: &MultiGraph, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0; g.vertex_count()];
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        out[b] += chain[i];
        out[a] -= chain[i];
    }
    out
}

/// Action of a half-edge automorphism on oriented edges: edge i goes to
/// ±edge p(2i)/2, negative when the tail lands on a head half-edge.
pub fn signed_edge_action(p: &[usize]) -> Vec<(usize, i64)> {
    (0..p.len() / 2).map(|i| (p[2 * i] / 2, if p[2 * i].is_multiple_of(2) { 1 } else { -1 })).collect()
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn integer_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| m[r][k] != 0) else {
            return BigInt::new();
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = BigInt::from(&m[i][j] * &m[k][k]) - BigInt::from(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = BigInt::new();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(sign);
    }
    prev * sign
}

/// det of the action on H₁ in the basis of `basis`.
pub fn h1_determinant(g: &MultiGraph, basis: &CycleBasis, p: &[usize]) -> i64 {
    let action = signed_edge_action(p);
    let mut cols = Vec::new();
    for c in &basis.cycles {
        let mut image = vec![0i64; g.edge_count()];
        for (i, &x) in c.iter().enumerate() {
            let (j, s) = action[i];
            image[j] += s * x;
        }
        cols.push(basis.coordinates(&image));
    }
    let r = basis.rank();
    let m = (0..r).map(|i| (0..r).map(|j| BigInt::from(cols[j][i])).collect()).collect();
    integer_det(m).to_i64().unwrap()
}

/// det of the action on H₀: the sign of the induced permutation of components.
pub fn h0_determinant(g: &MultiGraph, vertex_perm: &[usize]) -> i64 {
    let comp = g.components();
    let k = g.component_count();
    let mut first = vec![usize::MAX; k];
    for v in 0..g.vertex_count() {
        if first[comp[v]] == usize::MAX {
            first[comp[v]] = v;
        }
    }
    let perm: Perm = (0..k).map(|c| comp[vertex_perm[first[c]]]).collect();
    perm_sign(&perm)
}
