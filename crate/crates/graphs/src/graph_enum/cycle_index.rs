//! Signed orbit counts of admissible graphs from cycle-index series.
//!
//! A graph with s edges is a set partition of 2s half-edges into vertex
//! blocks of size at least 3, up to the hyperoctahedral group acting on the
//! half-edges. Weighting fixed points by the orientation character and
//! averaging over the group counts the orientable classes.

use std::collections::BTreeMap;

use graphchi_core::exactnum::{BigInt, BigRational, IsZero};

use super::oracle::GraphError;
use crate::Parity;

pub const MAX_PARTITION_EDGES: usize = 8;

/// Truncated series in power sums x_1..x_w (x_j of weight j) and a block
/// marker λ. Keys are (exponent of each x_j, exponent of λ).
#[derive(Debug, Clone, PartialEq)]
pub struct CycleIndexPoly {
    width: usize,
    terms: BTreeMap<(Vec<u8>, u8), BigRational>,
}

impl CycleIndexPoly {
    pub fn zero(width: usize) -> Self {
        CycleIndexPoly { width, terms: BTreeMap::new() }
    }

    pub fn constant(width: usize, c: BigRational) -> Self {
        let mut p = Self::zero(width);
        p.add_term(vec![0; width], 0, c);
        p
    }

    /// c · x_j^{power} · λ^{lambda}; dropped if past the truncation weight.
    pub fn monomial(width: usize, j: usize, power: u8, lambda: u8, c: BigRational) -> Self {
        let mut p = Self::zero(width);
        let mut e = vec![0; width];
        if j * power as usize <= width {
            if power > 0 {
                e[j - 1] = power;
            }
            p.add_term(e, lambda, c);
        }
        p
    }

    fn weight(e: &[u8]) -> usize {
        e.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    fn add_term(&mut self, e: Vec<u8>, lambda: u8, c: BigRational) {
        if Self::weight(&e) > self.width || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((e, lambda)) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((e, l), c) in &other.terms {
            out.add_term(e.clone(), *l, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.width);
        for ((e, l), v) in &self.terms {
            out.add_term(e.clone(), *l, BigRational::from(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.width);
        for ((e1, l1), c1) in &self.terms {
            for ((e2, l2), c2) in &other.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if Self::weight(&e) <= self.width {
                    out.add_term(e, l1 + l2, BigRational::from(c1 * c2));
                }
            }
        }
        out
    }

    /// exp of a series without constant term.
    pub fn exp(&self) -> Self {
        assert!(
            !self.terms.keys().any(|(e, _)| e.iter().all(|&c| c == 0)),
            "exp needs a vanishing constant term"
        );
        let mut out = Self::constant(self.width, BigRational::from(1));
        let mut power = out.clone();
        for n in 1..=self.width {
            power = power.mul(self).scale(&BigRational::from((1, n as u32)));
            out = out.add(&power);
        }
        out
    }

    /// x_j ↦ x_{jk}, λ ↦ λ^k.
    pub fn substitute(&self, k: usize) -> Self {
        let mut out = Self::zero(self.width);
        for ((e, l), c) in &self.terms {
            if Self::weight(e) * k > self.width {
                continue;
            }
            let mut f = vec![0; self.width];
            for (i, &ci) in e.iter().enumerate() {
                if ci > 0 {
                    f[(i + 1) * k - 1] = ci;
                }
            }
            out.add_term(f, l * k as u8, c.clone());
        }
        out
    }

    pub fn coefficient(&self, e: &[u8], lambda: u8) -> BigRational {
        self.terms.get(&(e.to_vec(), lambda)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], u8, &BigRational)> {
        self.terms.iter().map(|((e, l), c)| (e.as_slice(), *l, c))
    }
}

/// exp(η Σ_k (x_k² + x_{2k})/(2k)): the hyperoctahedral groups acting on
/// half-edges, with each edge cycle weighted by η.
fn edge_series(width: usize, eta: i32) -> CycleIndexPoly {
    let mut a = CycleIndexPoly::zero(width);
    for k in 1..=width / 2 {
        let c = BigRational::from((eta, 2 * k as u32));
        a = a.add(&CycleIndexPoly::monomial(width, k, 2, 0, c.clone()));
        a = a.add(&CycleIndexPoly::monomial(width, 2 * k, 1, 0, c));
    }
    a.exp()
}

/// exp(φ Σ_k λ^k V_k / k) with V the cycle index of sets of size ≥ 3.
fn vertex_series(width: usize, phi: i32) -> CycleIndexPoly {
    let mut sets = CycleIndexPoly::zero(width);
    for j in 1..=width {
        sets = sets.add(&CycleIndexPoly::monomial(width, j, 1, 0, BigRational::from((1, j as u32))));
    }
    let mut v = sets.exp();
    v = v.add(&CycleIndexPoly::constant(width, BigRational::from(-1)));
    v = v.add(&CycleIndexPoly::monomial(width, 1, 1, 0, BigRational::from(-1)));
    v = v.add(&CycleIndexPoly::monomial(width, 1, 2, 0, BigRational::from((-1, 2))));
    v = v.add(&CycleIndexPoly::monomial(width, 2, 1, 0, BigRational::from((-1, 2))));
    let marked = v.mul(&CycleIndexPoly::monomial(width, 1, 0, 1, BigRational::from(1)));
    let mut a = CycleIndexPoly::zero(width);
    for k in 1..=width / 3 {
        a = a.add(&marked.substitute(k).scale(&BigRational::from((phi, k as u32))));
    }
    a.exp()
}

fn z_factor(e: &[u8]) -> BigInt {
    let mut z = BigInt::from(1);
    for (i, &c) in e.iter().enumerate() {
        z *= BigInt::from(BigInt::u_pow_u((i + 1) as u32, c as u32)) * BigInt::from(BigInt::factorial(c as u32));
    }
    z
}

/// Orientable classes of admissible graphs with s ≤ `smax` edges and r
/// vertices, keyed by (s, r). Zero counts are omitted.
pub fn partition_count_table(smax: usize, parity: Parity) -> Result<BTreeMap<(usize, usize), BigInt>, GraphError> {
    if smax > MAX_PARTITION_EDGES {
        return Err(GraphError::ResourceCap {
            what: "edge count",
            value: smax,
            cap: MAX_PARTITION_EDGES,
            hint: "the truncated cycle-index series grow quickly",
        });
    }
    let width = 2 * smax;
    let (eta, phi) = match parity {
        Parity::Even => (-1, 1),
        Parity::Odd => (1, -1),
    };
    let edges = edge_series(width, eta);
    let vertices = vertex_series(width, phi);
    let mut sums: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
    for (e, _, c) in edges.terms() {
        let w = CycleIndexPoly::weight(e);
        let s = w / 2;
        let parts: usize = e.iter().map(|&c| c as usize).sum();
        let sign = match parity {
            Parity::Even => if s.is_multiple_of(2) { 1 } else { -1 },
            Parity::Odd => if parts.is_multiple_of(2) { 1 } else { -1 },
        };
        let base = (c * BigRational::from(z_factor(e))) * sign;
        for r in 0..=w / 3 {
            let f = vertices.coefficient(e, r as u8);
            if f.is_zero() {
                continue;
            }
            let rsign = if parity == Parity::Odd && r % 2 == 1 { -1 } else { 1 };
            *sums.entry((s, r)).or_default() += BigRational::from(&base * &f) * rsign;
        }
    }
    let mut out = BTreeMap::new();
    for (key, v) in sums {
        if v.is_zero() {
            continue;
        }
        assert!(v.is_integer(), "non-integral orbit count {v} at {key:?}");
        out.insert(key, v.into_numer_denom().0);
    }
    Ok(out)
}

/// Orientable classes with s edges and r vertices.
pub fn partition_count_oracle(s: usize, r: usize, parity: Parity) -> Result<BigInt, GraphError> {
    Ok(partition_count_table(s, parity)?.remove(&(s, r)).unwrap_or_default())
}
