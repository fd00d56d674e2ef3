use std::collections::{BTreeMap, HashMap};

use graphchi_core::exactnum::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use super::linalg::{rank_exact, rank_mod_p, SparseMatrix, CHECK_PRIMES};
use crate::graph_enum::{
    canonical_labeling, connected_admissible, integer_det, orientable, perm_sign, CanonicalForm, CycleBasis,
    GraphError, MultiGraph,
};
use crate::Parity;

pub const MAX_COMPLEX_RANK: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("∂∘∂ ≠ 0 out of degree {degree}")]
    DSquared { degree: usize },
    #[error("Euler characteristic mismatch: {what} gives {got}, expected {expected}")]
    Mismatch { what: &'static str, got: BigInt, expected: BigInt },
}

/// Which overall sign the i-th edge (1-indexed) of the reference order carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// (−1)^{i+1}
    #[default]
    Standard,
    /// (−1)^i
    Opposite,
}

/// A basis element: the canonical representative with its edges in sorted
/// order as the reference ordering and its depth-first cycle basis.
#[derive(Debug, Clone)]
pub struct Generator {
    pub form: CanonicalForm,
    pub graph: MultiGraph,
    pub cycle_basis: CycleBasis,
}

impl Generator {
    fn new(graph: MultiGraph) -> Self {
        let form = canonical_labeling(&graph).form;
        let cycle_basis = CycleBasis::new(&graph);
        Generator { form, graph, cycle_basis }
    }
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub parity: Parity,
    pub rank: usize,
    pub convention: SignConvention,
    /// Degree → ordered generators; every degree of the chain range is present.
    pub generators: BTreeMap<usize, Vec<Generator>>,
    /// Degree k → matrix of ∂_k: C_k → C_{k−1} (rows index degree k−1).
    pub boundaries: BTreeMap<usize, SparseMatrix>,
}

/// The grading: edge count for even, vertex count for odd.
fn grading(parity: Parity, g: &MultiGraph) -> usize {
    match parity {
        Parity::Even => g.edge_count(),
        Parity::Odd => g.vertex_count(),
    }
}

/// G/e for a non-loop edge e = (a, b): b is merged into a and later
/// vertices shift down. Returns the quotient and, for every other edge of G
/// in order, its index in the quotient and whether its direction survived.
pub fn contract(g: &MultiGraph, e: usize) -> (MultiGraph, Vec<(usize, i64)>) {
    let (a, b) = g.edges()[e];
    assert!(a != b, "loops are not contracted");
    let phi = |x: usize| match x {
        x if x == b => a,
        x if x > b => x - 1,
        x => x,
    };
    let mut edges = Vec::with_capacity(g.edge_count() - 1);
    let mut map = Vec::with_capacity(g.edge_count() - 1);
    for (j, &(x, y)) in g.edges().iter().enumerate() {
        if j == e {
            continue;
        }
        let (px, py) = (phi(x), phi(y));
        map.push((edges.len(), if px <= py { 1 } else { -1 }));
        edges.push((px, py));
    }
    (MultiGraph::new(g.vertex_count() - 1, edges), map)
}

/// The freedom in choosing an isomorphism onto the canonical representative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IsoChoice {
    /// Index into the target's vertex automorphisms composed after relabelling.
    pub vertex_automorphism: usize,
    /// Cyclic shift applied within every parallel class.
    pub rotation: usize,
}

/// Signed edge map from `h` onto the canonical representative `target`.
fn edge_map_to(h: &MultiGraph, target: &MultiGraph, choice: IsoChoice) -> Vec<(usize, i64)> {
    let lab = canonical_labeling(h);
    let target_lab = canonical_labeling(target);
    let autos = &target_lab.vertex_automorphisms;
    let tau = &autos[choice.vertex_automorphism % autos.len()];
    let mut slots: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &pair) in target.edges().iter().enumerate() {
        slots.entry(pair).or_default().push(i);
    }
    let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    h.edges()
        .iter()
        .map(|&(x, y)| {
            let (u, v) = (tau[lab.relabel[x]], tau[lab.relabel[y]]);
            let key = (u.min(v), u.max(v));
            let class = &slots[&key];
            let k = used.entry(key).or_insert(0);
            let idx = class[(*k + choice.rotation) % class.len()];
            *k += 1;
            (idx, if u <= v { 1 } else { -1 })
        })
        .collect()
}

/// Coefficient of `target` in ∂(source) from contracting edge `e` of the
/// source, computed through the isomorphism selected by `choice`.
pub fn contraction_coefficient(
    parity: Parity,
    convention: SignConvention,
    source: &Generator,
    e: usize,
    target: &Generator,
    choice: IsoChoice,
) -> i64 {
    let (h, to_h) = contract(&source.graph, e);
    let to_r = edge_map_to(&h, &target.graph, choice);
    let composite: Vec<(usize, i64)> = to_h.iter().map(|&(j, s)| (to_r[j].0, s * to_r[j].1)).collect();
    let position = match convention {
        SignConvention::Standard => if e.is_multiple_of(2) { 1 } else { -1 },
        SignConvention::Opposite => if e.is_multiple_of(2) { -1 } else { 1 },
    };
    let order: Vec<usize> = composite.iter().map(|&(j, _)| j).collect();
    let edge_sign = perm_sign(&order);
    match parity {
        Parity::Even => position * edge_sign,
        Parity::Odd => {
            let basis = &target.cycle_basis;
            let r = basis.rank();
            let mut cols = Vec::with_capacity(r);
            for cycle in &source.cycle_basis.cycles {
                let mut image = vec![0i64; target.graph.edge_count()];
                let others = (0..source.graph.edge_count()).filter(|&j| j != e);
                for (t, j) in others.enumerate() {
                    let (k, s) = composite[t];
                    image[k] += s * cycle[j];
                }
                cols.push(basis.coordinates(&image));
            }
            let m = (0..r).map(|i| (0..r).map(|j| BigInt::from(cols[j][i])).collect()).collect();
            let det = integer_det(m);
            assert!(det == 1 || det == -1, "H₁ base change with determinant {det}");
            position * edge_sign * det.to_i64().unwrap()
        }
    }
}

pub fn build_complex(g: usize, parity: Parity) -> Result<ChainComplex, ChainError> {
    build_complex_with(g, parity, SignConvention::Standard)
}

pub fn build_complex_with(g: usize, parity: Parity, convention: SignConvention) -> Result<ChainComplex, ChainError> {
    if g < 2 {
        return Err(GraphError::Argument(format!("rank must be at least 2, got {g}")).into());
    }
    if g > MAX_COMPLEX_RANK {
        return Err(GraphError::ResourceCap {
            what: "rank",
            value: g,
            cap: MAX_COMPLEX_RANK,
            hint: "homology beyond rank 5 is out of reach of dense exact elimination",
        }
        .into());
    }
    let range = match parity {
        Parity::Even => g..=3 * g - 3,
        Parity::Odd => 1..=2 * g - 2,
    };
    let mut generators: BTreeMap<usize, Vec<Generator>> = range.clone().map(|k| (k, Vec::new())).collect();
    let graphs: Vec<MultiGraph> = connected_admissible(g).into_par_iter().filter(|x| orientable(x, parity)).collect();
    for x in graphs {
        generators.get_mut(&grading(parity, &x)).expect("degree inside the chain range").push(Generator::new(x));
    }
    for list in generators.values_mut() {
        list.sort_by(|a, b| a.form.cmp(&b.form));
    }
    let mut boundaries = BTreeMap::new();
    for k in range {
        let Some(lower) = generators.get(&(k - 1)) else {
            continue;
        };
        let index: HashMap<&CanonicalForm, usize> = lower.iter().enumerate().map(|(i, x)| (&x.form, i)).collect();
        let triplets: Vec<(usize, usize, i64)> = generators[&k]
            .par_iter()
            .enumerate()
            .flat_map_iter(|(col, source)| {
                let index = &index;
                (0..source.graph.edge_count()).filter(|&e| !source.graph.is_loop(e)).filter_map(move |e| {
                    let (h, _) = contract(&source.graph, e);
                    let form = canonical_labeling(&h).form;
                    let &row = index.get(&form)?;
                    let c = contraction_coefficient(parity, convention, source, e, &lower[row], IsoChoice::default());
                    Some((row, col, c))
                })
            })
            .collect();
        boundaries.insert(k, SparseMatrix::from_triplets(lower.len(), generators[&k].len(), triplets));
    }
    Ok(ChainComplex { parity, rank: g, convention, generators, boundaries })
}

/// Exact rank of one boundary map with its modular shadows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub exact: usize,
    pub modular: [usize; 2],
}

impl ChainComplex {
    pub fn dimension(&self, k: usize) -> usize {
        self.generators.get(&k).map_or(0, Vec::len)
    }

    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(&k)
    }

    /// Rank of ∂_k for every degree with a boundary map.
    pub fn ranks(&self) -> BTreeMap<usize, RankInfo> {
        self.boundaries
            .par_iter()
            .map(|(&k, m)| {
                let d = m.dense();
                let modular = CHECK_PRIMES.map(|p| rank_mod_p(&d, p));
                (k, RankInfo { exact: rank_exact(&d), modular })
            })
            .collect()
    }

    /// Coordinate dump of ∂_k, or `None` outside the chain range.
    pub fn matrix_dump(&self, k: usize) -> Option<String> {
        self.boundaries.get(&k).map(SparseMatrix::to_coordinate_text)
    }

    pub fn chi_from_dimensions(&self) -> BigInt {
        BigInt::from(self.generators.iter().map(|(&k, v)| sign(k) * v.len() as i64).sum::<i64>())
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

/// True iff every composite ∂_{k−1} ∘ ∂_k vanishes.
pub fn verify_d_squared(c: &ChainComplex) -> bool {
    first_d_squared_failure(c).is_none()
}

pub fn first_d_squared_failure(c: &ChainComplex) -> Option<usize> {
    c.boundaries.iter().find_map(|(&k, upper)| {
        let lower = c.boundaries.get(&(k - 1))?;
        let zero = lower.product(upper).iter().flatten().all(|x| *x == 0);
        (!zero).then_some(k)
    })
}

/// b_k = dim C_k − rank ∂_k − rank ∂_{k+1} for every degree in the range.
pub fn betti_numbers(c: &ChainComplex) -> Result<BTreeMap<usize, usize>, ChainError> {
    if let Some(degree) = first_d_squared_failure(c) {
        return Err(ChainError::DSquared { degree });
    }
    let ranks = c.ranks();
    let r = |k: usize| ranks.get(&k).map_or(0, |x| x.exact);
    Ok(c.generators.keys().map(|&k| (k, c.dimension(k) - r(k) - r(k + 1))).collect())
}

pub fn chi_from_betti(betti: &BTreeMap<usize, usize>) -> BigInt {
    BigInt::from(betti.iter().map(|(&k, &b)| sign(k) * b as i64).sum::<i64>())
}

/// Checks Betti sum = dimension sum = `expected`; returns the common value.
pub fn verify_chi(c: &ChainComplex, expected: &BigInt) -> Result<BigInt, ChainError> {
    let from_betti = chi_from_betti(&betti_numbers(c)?);
    for (what, got) in [("Betti numbers", from_betti.clone()), ("chain dimensions", c.chi_from_dimensions())] {
        if &got != expected {
            return Err(ChainError::Mismatch { what, got, expected: expected.clone() });
        }
    }
    Ok(from_betti)
}
