//! Generating functions for the Euler characteristics of the even and odd
//! commutative graph complexes and of the associative graph complex.
//!
//! Everything is a series in u = 1/z. With
//! M_k = (1/k) Σ_{d|k} μ(d) z^{k/d} and L_k = log(k M_k / z^k),
//!
//! Ψ_k^± = ±((1 − L_k) M_k − z^k/k + δ_{2|k}/(2k)) − L_k/2 ∓ Σ_m B_{m+1}/(m(m+1)) M_k^{−m}
//!
//! and Σ_g χ(GC_±^g) z^{1−g} = Σ_{k,ℓ} μ(ℓ)/ℓ · Ψ_k^±(z^ℓ). The associative
//! complex uses the same expression with φ in place of μ inside M_k and the
//! lower signs throughout. Without the inner ℓ-sum, exp(Σ_k Ψ_k) generates
//! the Euler characteristics χ_n of all (possibly disconnected) graphs.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{bernoulli, divisors, format_rational, moebius, to_integer, totient, BigInt, BigRational, IsZero};
use crate::powerseries::{SeriesError, TruncatedLaurentSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Orientation parity of a commutative graph complex: even is "+", odd is "−".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// +1 for even, −1 for odd.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which arithmetic function builds M_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Moebius,
    Totient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    GcEven,
    GcOdd,
    Agc,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 3] = [ComplexKind::GcEven, ComplexKind::GcOdd, ComplexKind::Agc];

    /// Sign choice in Ψ; the associative series always takes the lower signs.
    pub fn parity(self) -> Parity {
        match self {
            ComplexKind::GcEven => Parity::Even,
            ComplexKind::GcOdd | ComplexKind::Agc => Parity::Odd,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            ComplexKind::Agc => Variant::Totient,
            _ => Variant::Moebius,
        }
    }

    pub fn from_parity(p: Parity) -> Self {
        match p {
            Parity::Even => ComplexKind::GcEven,
            Parity::Odd => ComplexKind::GcOdd,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            ComplexKind::GcEven => "gc-even",
            ComplexKind::GcOdd => "gc-odd",
            ComplexKind::Agc => "agc",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.slug() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Connected graphs, indexed by rank g.
    Connected(ComplexKind),
    /// All graphs, indexed by n = −(Euler characteristic of the graph).
    Disconnected(Parity),
}

impl TableKind {
    pub fn slug(self) -> &'static str {
        match self {
            TableKind::Connected(k) => k.slug(),
            TableKind::Disconnected(Parity::Even) => "disconnected-even",
            TableKind::Disconnected(Parity::Odd) => "disconnected-odd",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        match s {
            "disconnected-even" => Some(TableKind::Disconnected(Parity::Even)),
            "disconnected-odd" => Some(TableKind::Disconnected(Parity::Odd)),
            _ => ComplexKind::from_slug(s).map(TableKind::Connected),
        }
    }

    /// Name of the index: "rank" or "degree".
    pub fn index_name(self) -> &'static str {
        match self {
            TableKind::Connected(_) => "rank",
            TableKind::Disconnected(_) => "degree",
        }
    }

    /// First index stored in a table of this kind.
    pub fn first_index(self) -> u32 {
        match self {
            TableKind::Connected(_) => 2,
            TableKind::Disconnected(_) => 0,
        }
    }
}

/// Exact Euler characteristics over a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    pub kind: TableKind,
    pub method: String,
    values: BTreeMap<u32, BigInt>,
}

impl EulerTable {
    pub fn new(kind: TableKind, method: impl Into<String>) -> Self {
        EulerTable { kind, method: method.into(), values: BTreeMap::new() }
    }

    /// Appends the next entry; the value must be an integer.
    pub fn push(&mut self, index: u32, value: &BigRational) -> Result<(), EulerError> {
        let expected = self.next_index();
        if index != expected {
            return Err(EulerError::Consistency(format!("index {index} inserted, expected {expected}")));
        }
        let v = to_integer(value).ok_or_else(|| {
            EulerError::Consistency(format!("{} entry {index} is not an integer: {}", self.kind.slug(), format_rational(value)))
        })?;
        self.values.insert(index, v);
        Ok(())
    }

    fn next_index(&self) -> u32 {
        self.values.keys().next_back().map_or(self.kind.first_index(), |k| k + 1)
    }

    pub fn get(&self, index: u32) -> Option<&BigInt> {
        self.values.get(&index)
    }

    /// Largest stored index, if any.
    pub fn max_index(&self) -> Option<u32> {
        self.values.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.values.iter().map(|(k, v)| (*k, v))
    }
}

fn coefficient_fn(variant: Variant) -> fn(u64) -> i64 {
    match variant {
        Variant::Moebius => |d| moebius(d as i64).unwrap() as i64,
        Variant::Totient => |d| totient(d as i64).unwrap() as i64,
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// M_k(z) = (1/k) Σ_{d|k} c(d) z^{k/d}, with c = μ or φ.
pub fn m_polynomial(k: u32, variant: Variant) -> TruncatedLaurentSeries {
    assert!(k >= 1, "k must be positive");
    normalized_m(k, variant).shift(-(k as i64)).scale(&BigRational::from((1, k)))
}

/// k M_k(z) / z^k = 1 + Σ_{d|k, d>1} c(d) u^{k − k/d}.
fn normalized_m(k: u32, variant: Variant) -> TruncatedLaurentSeries {
    let c = coefficient_fn(variant);
    let k64 = k as u64;
    let mut coeffs = vec![BigRational::new(); k as usize];
    for d in divisors(k64) {
        coeffs[(k64 - k64 / d) as usize] = BigRational::from(c(d));
    }
    TruncatedLaurentSeries::polynomial(0, coeffs)
}

/// L_k = log(k M_k / z^k), known up to u^n.
pub fn l_series(k: u32, n: i64, variant: Variant) -> Result<TruncatedLaurentSeries, EulerError> {
    Ok(normalized_m(k, variant).truncate(n).log()?)
}

/// The part of Ψ_k without Bernoulli numbers, known up to u^n.
///
/// The bracket mixes positive and negative powers of z; all of them cancel,
/// and the result has no exponent below ⌈k/6⌉. Both facts are checked.
pub fn g_series(k: u32, parity: Parity, n: i64, variant: Variant) -> Result<TruncatedLaurentSeries, EulerError> {
    let ki = k as i64;
    let m = m_polynomial(k, variant);
    let l = l_series(k, n + ki, variant)?;
    let one = TruncatedLaurentSeries::one();
    let mut bracket = &(&one - &l) * &m;
    bracket = &bracket - &TruncatedLaurentSeries::monomial(BigRational::from((1, k)), -ki);
    if k.is_multiple_of(2) {
        bracket = &bracket + &TruncatedLaurentSeries::monomial(BigRational::from((1, 2 * k)), 0);
    }
    let half_l = l.scale(&BigRational::from((-1, 2)));
    let g = &bracket.scale(&BigRational::from(parity.sign())) + &half_l;
    check_vanishing(&g, k, "G")?;
    Ok(g.truncate(n).normalized())
}

fn check_vanishing(f: &TruncatedLaurentSeries, k: u32, what: &str) -> Result<(), EulerError> {
    let bound = ceil_div(k as i64, 6);
    match f.valuation() {
        Some(v) if v < bound => Err(EulerError::Consistency(format!(
            "{what}_{k} has a nonzero u^{v} term below the vanishing order {bound}"
        ))),
        _ => Ok(()),
    }
}

/// ∓ Σ_{m≥1} B_{m+1}/(m(m+1)) M_k^{−m}, known up to u^n.
pub fn bernoulli_tail(k: u32, parity: Parity, n: i64, variant: Variant) -> Result<TruncatedLaurentSeries, EulerError> {
    let ki = k as i64;
    let mut acc = TruncatedLaurentSeries::zero(n);
    if n < ki {
        return Ok(acc);
    }
    // M_k^{−1} = k u^k q with q = (k M_k/z^k)^{−1}; term m needs q^m to relative order n − km
    let q = normalized_m(k, variant).truncate(n - ki).inv_pow(1)?;
    let mut power = TruncatedLaurentSeries::one();
    let kk = BigRational::from(k);
    let mut k_pow = BigRational::from(1);
    for mi in 1..=(n / ki) {
        power = (&power * &q).truncate(n - ki * mi);
        k_pow *= &kk;
        let b = bernoulli(mi + 1).map_err(|e| EulerError::Parameter(e.to_string()))?;
        if b.is_zero() {
            continue;
        }
        let c = BigRational::from(&b * &k_pow) / (mi * (mi + 1)) * -parity.sign();
        acc = &acc + &power.shift(ki * mi).scale(&c);
    }
    Ok(acc.truncate(n))
}

/// Ψ_k known up to u^n. For the totient variant only the lower signs are
/// meaningful and `parity` must be odd.
pub fn psi_series(k: u32, parity: Parity, n: i64, variant: Variant) -> Result<TruncatedLaurentSeries, EulerError> {
    if variant == Variant::Totient && parity != Parity::Odd {
        return Err(EulerError::Parameter("the totient series has fixed lower signs; use Parity::Odd".into()));
    }
    let psi = &g_series(k, parity, n, variant)? + &bernoulli_tail(k, parity, n, variant)?;
    check_vanishing(&psi, k, "Ψ")?;
    Ok(psi.normalized())
}

/// Ψ_k for the given complex.
pub fn psi_for(kind: ComplexKind, k: u32, n: i64) -> Result<TruncatedLaurentSeries, EulerError> {
    psi_series(k, kind.parity(), n, kind.variant())
}

/// χ of the connected complex in ranks 2..=gmax.
pub fn chi_table(kind: ComplexKind, gmax: u32) -> Result<EulerTable, EulerError> {
    if gmax < 2 {
        return Err(EulerError::Parameter(format!("gmax must be at least 2, got {gmax}")));
    }
    let n = (gmax - 1) as i64;
    let contributions: Vec<TruncatedLaurentSeries> = (1..=6 * n as u32)
        .into_par_iter()
        .map(|k| {
            let psi = psi_for(kind, k, n)?;
            let mut acc = TruncatedLaurentSeries::zero(n);
            let lowest = ceil_div(k as i64, 6);
            for l in 1..=n {
                let mu = moebius(l).unwrap();
                if l * lowest > n {
                    break;
                }
                if mu == 0 {
                    continue;
                }
                let term = psi.substitute_power(l as u32).truncate(n);
                acc = &acc + &term.scale(&BigRational::from((mu as i64, l)));
            }
            Ok(acc)
        })
        .collect::<Result<_, EulerError>>()?;
    let mut total = TruncatedLaurentSeries::zero(n);
    for c in &contributions {
        total = &total + c;
    }
    let mut table = EulerTable::new(TableKind::Connected(kind), "generating-function");
    for g in 2..=gmax {
        table.push(g, &total.coefficient(g as i64 - 1)?)?;
    }
    Ok(table)
}

/// Σ_{k ≤ 6n} Ψ_k(z), known up to u^n.
fn psi_sum(parity: Parity, n: i64) -> Result<TruncatedLaurentSeries, EulerError> {
    let terms: Vec<_> = (1..=(6 * n).max(0) as u32)
        .into_par_iter()
        .map(|k| psi_series(k, parity, n, Variant::Moebius))
        .collect::<Result<_, _>>()?;
    let mut acc = TruncatedLaurentSeries::zero(n);
    for t in &terms {
        acc = &acc + t;
    }
    Ok(acc)
}

/// χ_n for all graphs (connected or not), 0 ≤ n ≤ nmax.
pub fn chi_disconnected(parity: Parity, nmax: u32) -> Result<EulerTable, EulerError> {
    let n = nmax as i64;
    let series = psi_sum(parity, n)?.exp()?;
    let mut table = EulerTable::new(TableKind::Disconnected(parity), "exp-generating-function");
    for i in 0..=nmax {
        table.push(i, &series.coefficient(i as i64)?)?;
    }
    if *table.get(0).unwrap() != 1 {
        return Err(EulerError::Consistency("χ_0 differs from 1".into()));
    }
    Ok(table)
}

/// Coefficients up to x^n of (1 − x^step)^(−c) for integer c.
fn binomial_factor(c: &BigInt, step: usize, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::new(); n + 1];
    let mut a = BigInt::from(1);
    let mut j = 0usize;
    while j * step <= n {
        out[j * step] = a.clone();
        j += 1;
        // binom(c + j − 1, j) = binom(c + j − 2, j − 1) · (c + j − 1)/j, always exact
        a *= BigInt::from(c + (j as i64 - 1));
        a.div_exact_mut(&BigInt::from(j));
        if a.is_zero() {
            break;
        }
    }
    out
}

/// Coefficients of Π_{g≥2} (1 − u^{g−1})^{−χ_g} up to u^n, using the
/// connected table for ranks 2..=n+1.
pub fn euler_product(connected: &EulerTable, n: u32) -> Result<Vec<BigInt>, EulerError> {
    let n = n as usize;
    let mut acc = vec![BigInt::new(); n + 1];
    acc[0] = BigInt::from(1);
    for g in 2..=n + 1 {
        let c = connected
            .get(g as u32)
            .ok_or_else(|| EulerError::Parameter(format!("connected table lacks rank {g}")))?;
        let f = binomial_factor(c, g - 1, n);
        let mut next = vec![BigInt::new(); n + 1];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in f.iter().enumerate().take(n + 1 - i).filter(|(_, b)| !b.is_zero()) {
                next[i + j] += BigInt::from(a * b);
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub n: u32,
    pub generating_function: BigInt,
    pub euler_product: BigInt,
}

impl CoefficientCheck {
    pub fn agrees(&self) -> bool {
        self.generating_function == self.euler_product
    }
}

#[derive(Debug, Clone)]
pub struct RoundtripReport {
    pub parity: Parity,
    pub checks: Vec<CoefficientCheck>,
}

impl RoundtripReport {
    pub fn all_equal(&self) -> bool {
        self.checks.iter().all(CoefficientCheck::agrees)
    }
}

/// Compares exp(Σ Ψ_k) against the product over connected ranks.
pub fn euler_product_roundtrip(parity: Parity, nmax: u32) -> Result<RoundtripReport, EulerError> {
    let direct = chi_disconnected(parity, nmax)?;
    let connected = if nmax >= 1 {
        chi_table(ComplexKind::from_parity(parity), nmax + 1)?
    } else {
        EulerTable::new(TableKind::Connected(ComplexKind::from_parity(parity)), "empty")
    };
    let product = euler_product(&connected, nmax)?;
    let checks = product
        .into_iter()
        .enumerate()
        .map(|(i, p)| CoefficientCheck {
            n: i as u32,
            generating_function: direct.get(i as u32).unwrap().clone(),
            euler_product: p,
        })
        .collect();
    Ok(RoundtripReport { parity, checks })
}

/// Recovers connected χ(GC^g) from the disconnected table by taking the
/// logarithm of the product form and inverting with μ.
pub fn connected_by_inversion(disconnected: &EulerTable) -> Result<EulerTable, EulerError> {
    let TableKind::Disconnected(parity) = disconnected.kind else {
        return Err(EulerError::Parameter("expected a disconnected table".into()));
    };
    let nmax = disconnected.max_index().unwrap_or(0) as i64;
    let coeffs = (0..=nmax).map(|i| BigRational::from(disconnected.get(i as u32).unwrap())).collect();
    let log = TruncatedLaurentSeries::new(0, coeffs, nmax).log()?;
    let mut table = EulerTable::new(TableKind::Connected(ComplexKind::from_parity(parity)), "moebius-inversion");
    // log Π (1 − u^m)^{−a_m} = Σ_n c_n u^n with c_n = Σ_{j|n} a_{n/j}/j, so a_n = Σ_{e|n} μ(e)/e · c_{n/e}
    for n in 1..=nmax {
        let mut a = BigRational::new();
        for e in divisors(n as u64) {
            let mu = moebius(e as i64).unwrap();
            if mu != 0 {
                a += log.coefficient(n / e as i64)? * BigRational::from((mu as i64, e as i64));
            }
        }
        table.push(n as u32 + 1, &a)?;
    }
    Ok(table)
}

/// ξ_{n,k} for 0 ≤ n ≤ nmax: Σ_n ξ_{n,k} z^{−n} = ∓ Σ_m B_{m+1}/(m(m+1)) M_k^{−m}.
pub fn xi_table(k: u32, parity: Parity, nmax: u32) -> Result<BTreeMap<u32, BigRational>, EulerError> {
    let tail = bernoulli_tail(k, parity, nmax as i64, Variant::Moebius)?;
    let mut out = BTreeMap::new();
    for n in 0..=nmax {
        let c = tail.coefficient(n as i64)?;
        if n < k && !c.is_zero() {
            return Err(EulerError::Consistency(format!("ξ_{{{n},{k}}} should vanish")));
        }
        out.insert(n, c);
    }
    Ok(out)
}

/// r = χ − (ξ_{n,1} + ξ_{n,2} − ½ δ_{2|n} ξ_{n/2,1}).
pub fn residual_value(chi: &BigRational, xi1: &BigRational, xi2: &BigRational, xi1_half: Option<&BigRational>) -> BigRational {
    let mut r = BigRational::from(chi - xi1) - xi2;
    if let Some(h) = xi1_half {
        r += BigRational::from(h / 2u32);
    }
    r
}

#[derive(Debug, Clone)]
pub struct ResidualEntry {
    pub n: u32,
    pub residual: BigRational,
    /// 5^n (⌊n/3⌋ − 1)!
    pub scale: BigInt,
    /// |residual| / scale
    pub ratio: f64,
}

/// Residuals of χ(GC^{n+1}) against its two leading ξ contributions, 3 ≤ n ≤ nmax.
pub fn decomposition_residual(parity: Parity, nmax: u32) -> Result<Vec<ResidualEntry>, EulerError> {
    if nmax < 3 {
        return Err(EulerError::Parameter(format!("nmax must be at least 3, got {nmax}")));
    }
    let chi = chi_table(ComplexKind::from_parity(parity), nmax + 1)?;
    let xi1 = xi_table(1, parity, nmax)?;
    let xi2 = xi_table(2, parity, nmax)?;
    let mut out = Vec::new();
    for n in 3..=nmax {
        let half = (n % 2 == 0).then(|| &xi1[&(n / 2)]);
        let residual = residual_value(&BigRational::from(chi.get(n + 1).unwrap()), &xi1[&n], &xi2[&n], half);
        let fact = BigInt::from(BigInt::factorial(n / 3 - 1));
        let scale = BigInt::from(BigInt::u_pow_u(5, n)) * fact;
        let ratio = (residual.clone().abs() / &scale).to_f64();
        out.push(ResidualEntry { n, residual, scale, ratio });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::from((p, q))
    }

    #[test]
    fn m_polynomials() {
        assert_eq!(m_polynomial(1, Variant::Moebius), TruncatedLaurentSeries::from_ints(-1, &[1], None));
        let m2 = m_polynomial(2, Variant::Moebius);
        assert_eq!(m2.coefficient(-2).unwrap(), r(1, 2));
        assert_eq!(m2.coefficient(-1).unwrap(), r(-1, 2));
        let m6 = m_polynomial(6, Variant::Moebius);
        let expect = [(-6, r(1, 6)), (-3, r(-1, 6)), (-2, r(-1, 6)), (-1, r(1, 6))];
        assert_eq!(m6.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(), expect);
        let t4 = m_polynomial(4, Variant::Totient);
        let expect = [(-4, r(1, 4)), (-2, r(1, 4)), (-1, r(2, 4))];
        assert_eq!(t4.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(), expect);
    }

    #[test]
    fn l_series_examples() {
        assert!(l_series(1, 10, Variant::Moebius).unwrap().is_zero());
        let l2 = l_series(2, 8, Variant::Moebius).unwrap();
        for e in 1..=8 {
            assert_eq!(l2.coefficient(e).unwrap(), r(-1, e));
        }
        // k=4: 4M_4/z^4 = 1 − u², so L_4 = log(1 − u²)
        let l4 = l_series(4, 8, Variant::Moebius).unwrap();
        assert_eq!(l4.coefficient(1).unwrap(), 0);
        assert_eq!(l4.coefficient(2).unwrap(), -1);
        assert_eq!(l4.coefficient(4).unwrap(), r(-1, 2));
    }

    #[test]
    fn g_series_examples() {
        for p in [Parity::Even, Parity::Odd] {
            assert!(g_series(1, p, 12, Variant::Moebius).unwrap().is_zero());
        }
        let g7 = g_series(7, Parity::Even, 10, Variant::Moebius).unwrap();
        assert_eq!(g7.coefficient(1).unwrap(), 0);
        // k=2, +: with M_2 = (z² − z)/2 and L_2 = log(1 − u) the bracket is
        // (1 − L)(z² − z)/2 − z²/2 + 1/4 = −u/12 + O(u²), and −L/2 adds u/2
        let g2 = g_series(2, Parity::Even, 6, Variant::Moebius).unwrap();
        assert_eq!(g2.valuation(), Some(1));
        assert_eq!(g2.coefficient(1).unwrap(), r(5, 12));
    }

    #[test]
    fn psi_one_is_pure_bernoulli() {
        let plus = psi_series(1, Parity::Even, 8, Variant::Moebius).unwrap();
        let minus = psi_series(1, Parity::Odd, 8, Variant::Moebius).unwrap();
        for m in 1..=8i64 {
            let expect = bernoulli(m + 1).unwrap() / (m * (m + 1));
            assert_eq!(plus.coefficient(m).unwrap(), -expect.clone(), "m = {m}");
            assert_eq!(minus.coefficient(m).unwrap(), expect);
        }
        assert_eq!(plus.coefficient(1).unwrap(), r(-1, 12));
        assert_eq!(plus.coefficient(3).unwrap(), r(1, 360));
        assert_eq!(plus.coefficient(5).unwrap(), r(-1, 1260));
    }

    #[test]
    fn psi_vanishing_order_small_k() {
        for k in 1..=20 {
            for kind in ComplexKind::ALL {
                let psi = psi_for(kind, k, 12).unwrap();
                for e in -(k as i64)..ceil_div(k as i64, 6) {
                    assert_eq!(psi.coefficient(e).unwrap(), 0, "{kind:?} k={k} e={e}");
                }
            }
        }
    }

    #[test]
    fn totient_series_rejects_upper_sign() {
        assert!(psi_series(3, Parity::Even, 5, Variant::Totient).is_err());
    }

    #[test]
    fn low_rank_anchor_values() {
        let even = chi_table(ComplexKind::GcEven, 3).unwrap();
        assert_eq!(*even.get(2).unwrap(), 0);
        assert_eq!(*even.get(3).unwrap(), 1);
        let odd = chi_table(ComplexKind::GcOdd, 2).unwrap();
        assert_eq!(*odd.get(2).unwrap(), 1);
        assert!(chi_table(ComplexKind::Agc, 1).is_err());
    }

    #[test]
    fn disconnected_low_degrees() {
        let even = chi_disconnected(Parity::Even, 3).unwrap();
        assert_eq!(*even.get(0).unwrap(), 1);
        assert_eq!(*even.get(1).unwrap(), 0);
        let odd = chi_disconnected(Parity::Odd, 3).unwrap();
        assert_eq!(*odd.get(1).unwrap(), 1);
        assert_eq!(chi_disconnected(Parity::Odd, 0).unwrap().len(), 1);
    }

    #[test]
    fn product_roundtrip() {
        for p in [Parity::Even, Parity::Odd] {
            let rep = euler_product_roundtrip(p, 0).unwrap();
            assert!(rep.all_equal() && rep.checks.len() == 1);
            let rep = euler_product_roundtrip(p, 20).unwrap();
            assert_eq!(rep.checks.len(), 21);
            assert!(rep.all_equal(), "{p}: {:?}", rep.checks);
        }
    }

    #[test]
    fn inversion_recovers_connected() {
        for p in [Parity::Even, Parity::Odd] {
            let conn = chi_table(ComplexKind::from_parity(p), 16).unwrap();
            let inv = connected_by_inversion(&chi_disconnected(p, 15).unwrap()).unwrap();
            assert_eq!(inv.iter().collect::<Vec<_>>(), conn.iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn binomial_factor_negative_exponent() {
        // (1 − x)^{2} = 1 − 2x + x²
        let f = binomial_factor(&BigInt::from(-2), 1, 5);
        assert_eq!(f, [1, -2, 1, 0, 0, 0].map(BigInt::from));
        // (1 − x²)^{−1} = 1 + x² + x⁴
        let f = binomial_factor(&BigInt::from(1), 2, 5);
        assert_eq!(f, [1, 0, 1, 0, 1, 0].map(BigInt::from));
    }

    #[test]
    fn xi_examples() {
        let xi = xi_table(1, Parity::Even, 50).unwrap();
        for n in 1..=50u32 {
            let b = bernoulli(n as i64 + 1).unwrap();
            assert_eq!(xi[&n], -(b / (n as i64 * (n as i64 + 1))));
        }
        // 1/M_2 = 2/(z² − z) = 2u²/(1 − u), 1/M_2² = 4u⁴/(1 − u)²
        // ξ_{3,2}^+ = −(B_2/2 · 2) = −1/6; B_3 = 0 so the m = 2 term is absent
        let xi2 = xi_table(2, Parity::Even, 6).unwrap();
        assert_eq!(xi2[&3], r(-1, 6));
        assert_eq!(xi2[&1], 0);
        // u⁴: m=1 gives −(1/12)·2 = −1/6; m=3 needs u⁶
        assert_eq!(xi2[&4], r(-1, 6));
        // u⁶: m=1 gives −1/6, m=3 gives −B_4/12 · 8 = 8/360
        assert_eq!(xi2[&6], r(-1, 6) + r(8, 360));
    }

    #[test]
    fn residual_of_its_own_rhs_is_zero() {
        let (a, b, c) = (r(3, 7), r(-5, 11), r(2, 9));
        let rhs = BigRational::from(&a + &b) - BigRational::from(&c / 2u32);
        assert!(residual_value(&rhs, &a, &b, Some(&c)).is_zero());
        let rhs = BigRational::from(&a + &b);
        assert!(residual_value(&rhs, &a, &b, None).is_zero());
    }

    #[test]
    fn residual_table() {
        let res = decomposition_residual(Parity::Even, 30).unwrap();
        assert_eq!(res.first().unwrap().n, 3);
        let chi = chi_table(ComplexKind::GcEven, 11).unwrap();
        let xi1 = xi_table(1, Parity::Even, 10).unwrap();
        let xi2 = xi_table(2, Parity::Even, 10).unwrap();
        let r10 = BigRational::from(chi.get(11).unwrap()) - &xi1[&10] - &xi2[&10] + BigRational::from(&xi1[&5] / 2u32);
        assert_eq!(res.iter().find(|e| e.n == 10).unwrap().residual, r10);
        assert!(res.iter().filter(|e| e.n >= 6).all(|e| e.ratio.is_finite() && e.ratio < 1.0));
    }

    #[test]
    fn table_rejects_non_integer() {
        let mut t = EulerTable::new(TableKind::Connected(ComplexKind::GcEven), "test");
        assert!(t.push(2, &r(1, 2)).is_err());
        assert!(t.push(3, &r(1, 1)).is_err());
        t.push(2, &r(4, 2)).unwrap();
        assert_eq!(*t.get(2).unwrap(), 2);
    }

    #[test]
    fn slugs_roundtrip() {
        for s in ["gc-even", "gc-odd", "agc", "disconnected-even", "disconnected-odd"] {
            assert_eq!(TableKind::from_slug(s).unwrap().slug(), s);
        }
        assert!(TableKind::from_slug("gc").is_none());
    }
}
