//! Truncated Laurent series in u = 1/z with exact rational coefficients.
//!
//! A series is either an exact Laurent polynomial or is known up to and
//! including u^N. Every operation computes the order to which its result is
//! reliable from the orders and valuations of its inputs, so precision loss
//! is never silent: reading a coefficient above that order is an error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::exactnum::{BigRational, IsZero};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient of u^{exponent} requested but the series is only known up to u^{order}")]
    Truncated { exponent: i64, order: i64 },
    #[error("{0}")]
    Domain(String),
    #[error("{0} needs a truncated series; call truncate() first")]
    Unbounded(&'static str),
    #[error("series has no known nonzero coefficient")]
    ZeroSeries,
}

/// How far a series' coefficients are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// A Laurent polynomial: every coefficient is known.
    Exact,
    /// Coefficients are known for exponents up to and including N.
    UpTo(i64),
}

impl Precision {
    fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::UpTo(a), Precision::UpTo(b)) => Precision::UpTo(a.min(b)),
        }
    }

    fn plus(self, shift: i64) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::UpTo(n) => Precision::UpTo(n + shift),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedLaurentSeries {
    min_exp: i64,
    precision: Precision,
    coeffs: Vec<BigRational>,
}

impl TruncatedLaurentSeries {
    /// Series known up to u^`trunc`, with `coeffs[i]` the coefficient of
    /// u^(min_exp + i). Coefficients above `trunc` are dropped and missing
    /// ones inside the window are zero.
    pub fn new(min_exp: i64, coeffs: Vec<BigRational>, trunc: i64) -> Self {
        Self::build(min_exp, coeffs, Precision::UpTo(trunc))
    }

    /// Exact Laurent polynomial Σ coeffs[i] u^(min_exp + i).
    pub fn polynomial(min_exp: i64, coeffs: Vec<BigRational>) -> Self {
        Self::build(min_exp, coeffs, Precision::Exact)
    }

    pub fn from_ints(min_exp: i64, coeffs: &[i64], trunc: Option<i64>) -> Self {
        let coeffs = coeffs.iter().map(|&c| BigRational::from(c)).collect();
        match trunc {
            Some(n) => Self::new(min_exp, coeffs, n),
            None => Self::polynomial(min_exp, coeffs),
        }
    }

    pub fn zero(trunc: i64) -> Self {
        Self::new(0, Vec::new(), trunc)
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::from(1), 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        Self::polynomial(exp, vec![c])
    }

    fn build(min_exp: i64, mut coeffs: Vec<BigRational>, precision: Precision) -> Self {
        match precision {
            Precision::UpTo(n) => {
                let len = (n - min_exp + 1).max(0) as usize;
                coeffs.resize(len, BigRational::new());
            }
            Precision::Exact => {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
            }
        }
        TruncatedLaurentSeries { min_exp, precision, coeffs }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Largest exponent with a reliable coefficient, or `None` for exact
    /// polynomials.
    pub fn trunc_order(&self) -> Option<i64> {
        match self.precision {
            Precision::Exact => None,
            Precision::UpTo(n) => Some(n),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.precision == Precision::Exact
    }

    /// Coefficient of u^e; zero below the window, an error above the order.
    pub fn coefficient(&self, e: i64) -> Result<BigRational, SeriesError> {
        if let Precision::UpTo(n) = self.precision {
            if e > n {
                return Err(SeriesError::Truncated { exponent: e, order: n });
            }
        }
        Ok(self.coeff_ref(e).cloned().unwrap_or_default())
    }

    fn coeff_ref(&self, e: i64) -> Option<&BigRational> {
        if e < self.min_exp {
            return None;
        }
        self.coeffs.get((e - self.min_exp) as usize)
    }

    /// Stored nonzero terms as (exponent, coefficient), increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    /// Lower bound on the valuation of the true (untruncated) series.
    fn valuation_bound(&self) -> Option<i64> {
        match (self.valuation(), self.precision) {
            (Some(v), _) => Some(v),
            (None, Precision::UpTo(n)) => Some(n + 1),
            (None, Precision::Exact) => None,
        }
    }

    /// True if every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Forget coefficients above u^`n`.
    pub fn truncate(&self, n: i64) -> Self {
        let precision = self.precision.min(Precision::UpTo(n));
        let Precision::UpTo(n) = precision else { unreachable!() };
        let keep = (n - self.min_exp + 1).max(0) as usize;
        let coeffs = self.coeffs.iter().take(keep).cloned().collect();
        Self::build(self.min_exp, coeffs, precision)
    }

    /// Drop leading zero coefficients so that `min_exp` is the valuation.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => {
                let skip = (v - self.min_exp) as usize;
                Self::build(v, self.coeffs[skip..].to_vec(), self.precision)
            }
            None => match self.precision {
                Precision::Exact => Self::polynomial(0, Vec::new()),
                Precision::UpTo(n) => Self::zero(n),
            },
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| BigRational::from(x * c)).collect();
        Self::build(self.min_exp, coeffs, self.precision)
    }

    /// Multiply by u^`k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::build(self.min_exp + k, self.coeffs.clone(), self.precision.plus(k))
    }

    /// f(u^ℓ): the exponent e becomes ℓ·e and the order N becomes ℓ·N.
    pub fn substitute_power(&self, l: u32) -> Self {
        assert!(l >= 1, "substitution power must be positive");
        let l = l as i64;
        let precision = match self.precision {
            Precision::Exact => Precision::Exact,
            Precision::UpTo(n) => Precision::UpTo(l * n),
        };
        let span = match precision {
            Precision::UpTo(n) => (n - l * self.min_exp + 1).max(0) as usize,
            Precision::Exact => (l as usize) * self.coeffs.len().saturating_sub(1) + 1,
        };
        let mut coeffs = vec![BigRational::new(); span];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * l as usize] = c.clone();
        }
        Self::build(l * self.min_exp, coeffs, precision)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let precision = self.precision.min(other.precision);
        let lo = self.min_exp.min(other.min_exp);
        let hi = match precision {
            Precision::UpTo(n) => n,
            Precision::Exact => {
                let top = |s: &Self| s.min_exp + s.coeffs.len() as i64 - 1;
                top(self).max(top(other))
            }
        };
        let mut coeffs = vec![BigRational::new(); (hi - lo + 1).max(0) as usize];
        for (e, c) in self.terms().filter(|&(e, _)| e <= hi) {
            coeffs[(e - lo) as usize] += c;
        }
        for (e, c) in other.terms().filter(|&(e, _)| e <= hi) {
            if negate {
                coeffs[(e - lo) as usize] -= c;
            } else {
                coeffs[(e - lo) as usize] += c;
            }
        }
        Self::build(lo, coeffs, precision)
    }

    fn product(&self, other: &Self) -> Self {
        let (va, vb) = match (self.valuation_bound(), other.valuation_bound()) {
            (Some(a), Some(b)) => (a, b),
            // an exact zero annihilates anything
            _ => return Self::polynomial(0, Vec::new()),
        };
        let precision = self.precision.plus(vb).min(other.precision.plus(va));
        let lo = self.valuation().unwrap_or(va) + other.valuation().unwrap_or(vb);
        let a: Vec<_> = self.terms().collect();
        let b: Vec<_> = other.terms().collect();
        let hi = match precision {
            Precision::UpTo(n) => n,
            Precision::Exact => a.last().map_or(lo, |t| t.0) + b.last().map_or(0, |t| t.0),
        };
        let mut coeffs = vec![BigRational::new(); (hi - lo + 1).max(0) as usize];
        for &(ea, ca) in &a {
            for &(eb, cb) in &b {
                let e = ea + eb;
                if e > hi {
                    break;
                }
                coeffs[(e - lo) as usize] += BigRational::from(ca * cb);
            }
        }
        Self::build(lo, coeffs, precision)
    }

    fn require_power_series(&self, op: &'static str) -> Result<i64, SeriesError> {
        let Precision::UpTo(n) = self.precision else {
            return Err(SeriesError::Unbounded(op));
        };
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(SeriesError::Domain(format!("{op}: term u^{v} has a negative exponent")));
            }
        }
        if n < 0 {
            return Err(SeriesError::Domain(format!("{op}: constant term is not known")));
        }
        Ok(n)
    }

    /// Dense coefficients of u^0..=u^n (input must have no negative terms).
    fn dense(&self, n: i64) -> Vec<BigRational> {
        (0..=n).map(|e| self.coeff_ref(e).cloned().unwrap_or_default()).collect()
    }

    /// exp(f) for f with no constant or negative-exponent terms.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let n = self.require_power_series("exp")?;
        if !self.coeff_ref(0).is_none_or(|c| c.is_zero()) {
            return Err(SeriesError::Domain("exp: constant term must be zero".into()));
        }
        let f: Vec<_> = self.terms().map(|(e, c)| (e as usize, c.clone())).collect();
        // n g_n = Σ_k k f_k g_{n−k}
        let mut g = vec![BigRational::from(1)];
        for m in 1..=n as usize {
            let mut acc = BigRational::new();
            for (k, fk) in f.iter().take_while(|t| t.0 <= m) {
                if !g[m - k].is_zero() {
                    acc += BigRational::from(fk * &g[m - k]) * *k as u32;
                }
            }
            g.push(acc / m as u32);
        }
        Ok(Self::new(0, g, n))
    }

    /// log(f) for f with constant term exactly 1 and no negative exponents.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let n = self.require_power_series("log")?;
        if self.coeff_ref(0).is_none_or(|c| *c != 1) {
            return Err(SeriesError::Domain("log: constant term must be 1".into()));
        }
        let f = self.dense(n);
        let tail: Vec<_> = self.terms().filter(|t| t.0 > 0).map(|(e, c)| (e as usize, c.clone())).collect();
        // f g' = f'  ⇒  m g_m = m f_m − Σ_{k<m} k g_k f_{m−k}
        let mut g = vec![BigRational::new()];
        for m in 1..=n as usize {
            let mut acc = BigRational::from(&f[m] * m as u32);
            for (j, fj) in tail.iter().take_while(|t| t.0 < m) {
                let k = m - j;
                if !g[k].is_zero() {
                    acc -= BigRational::from(fj * &g[k]) * k as u32;
                }
            }
            g.push(acc / m as u32);
        }
        Ok(Self::new(0, g, n))
    }

    /// f^(−m). Writing f = c·u^v·(1 + h), the result is reliable up to
    /// −m·v + (N − v) where N is the order of f.
    pub fn inv_pow(&self, m: u32) -> Result<Self, SeriesError> {
        assert!(m >= 1, "inverse power must be positive");
        let Precision::UpTo(n) = self.precision else {
            return Err(SeriesError::Unbounded("inv_pow"));
        };
        let v = self.valuation().ok_or(SeriesError::ZeroSeries)?;
        let lead = self.coeff_ref(v).unwrap().clone();
        let rel = n - v;
        let p: Vec<_> = self
            .terms()
            .skip(1)
            .map(|(e, c)| ((e - v) as usize, BigRational::from(c / &lead)))
            .collect();
        // P = p^α with α = −m:  n P_n = Σ_{k=1}^{n} ((α+1)k − n) p_k P_{n−k}
        let alpha = -(m as i64);
        let mut q = vec![BigRational::from(1)];
        for j in 1..=rel.max(0) as usize {
            let mut acc = BigRational::new();
            for (k, pk) in p.iter().take_while(|t| t.0 <= j) {
                let w = (alpha + 1) * *k as i64 - j as i64;
                if w != 0 && !q[j - k].is_zero() {
                    acc += BigRational::from(pk * &q[j - k]) * w;
                }
            }
            q.push(acc / j as u32);
        }
        let c = BigRational::from(lead.recip_ref()).pow_int(m);
        let base = -(m as i64) * v;
        Ok(Self::new(base, q, base + rel).scale(&c))
    }
}

/// Equal precision and equal coefficients; the stored window may differ.
impl PartialEq for TruncatedLaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.precision == other.precision && self.terms().eq(other.terms())
    }
}

impl Eq for TruncatedLaurentSeries {}

trait PowInt {
    fn pow_int(self, m: u32) -> Self;
}

impl PowInt for BigRational {
    fn pow_int(self, m: u32) -> Self {
        let mut acc = BigRational::from(1);
        for _ in 0..m {
            acc *= &self;
        }
        acc
    }
}

impl Add for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn add(self, rhs: Self) -> TruncatedLaurentSeries {
        self.combine(rhs, false)
    }
}

impl Sub for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn sub(self, rhs: Self) -> TruncatedLaurentSeries {
        self.combine(rhs, true)
    }
}

impl Mul for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn mul(self, rhs: Self) -> TruncatedLaurentSeries {
        self.product(rhs)
    }
}

impl Neg for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn neg(self) -> TruncatedLaurentSeries {
        self.scale(&BigRational::from(-1))
    }
}

impl fmt::Display for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                _ => write!(f, "{c}*u^{e}")?,
            }
        }
        match self.precision {
            Precision::Exact if first => write!(f, "0"),
            Precision::Exact => Ok(()),
            Precision::UpTo(n) if first => write!(f, "O(u^{})", n + 1),
            Precision::UpTo(n) => write!(f, " + O(u^{})", n + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::from((p, q))
    }

    fn series(coeffs: &[i64], trunc: i64) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::from_ints(0, coeffs, Some(trunc))
    }

    fn assert_coeffs(f: &TruncatedLaurentSeries, expect: &[BigRational]) {
        for (e, c) in expect.iter().enumerate() {
            assert_eq!(&f.coefficient(e as i64).unwrap(), c, "u^{e} in {f}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let p = &series(&[1, 1], 5) * &series(&[1, -1], 5);
        assert_eq!(p, series(&[1, 0, -1], 5));
    }

    #[test]
    fn geometric_series_times_one_minus_u() {
        let geo = series(&[1; 9], 8);
        let p = &geo * &TruncatedLaurentSeries::from_ints(0, &[1, -1], None);
        assert_eq!(p, series(&[1], 8));
    }

    #[test]
    fn inverse_of_quadratic() {
        let f = series(&[1, -1, -1], 10);
        let g = f.inv_pow(1).unwrap();
        // 1/(1 − u − u²) has Fibonacci coefficients
        let fib = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
        assert_coeffs(&g, &fib.map(|x| r(x, 1)));
        assert_eq!(&f * &g, series(&[1], 10));
    }

    #[test]
    fn log_examples() {
        assert!(series(&[1], 6).log().unwrap().is_zero());
        let l = series(&[1, -1], 8).log().unwrap();
        let merc: Vec<_> = (0..=8).map(|k| if k == 0 { r(0, 1) } else { r(-1, k) }).collect();
        assert_coeffs(&l, &merc);
        let f = series(&[1, 1, 3], 12);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        assert!(matches!(series(&[2, 1], 4).log(), Err(SeriesError::Domain(_))));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(series(&[], 5).exp().unwrap(), series(&[1], 5));
        let e = series(&[0, 1], 4).exp().unwrap();
        assert_coeffs(&e, &[r(1, 1), r(1, 1), r(1, 2), r(1, 6), r(1, 24)]);
        let f = TruncatedLaurentSeries::new(0, vec![r(0, 1), r(1, 12), r(0, 1), r(1, 360)], 10);
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        assert!(series(&[1, 1], 4).exp().is_err());
        let neg = TruncatedLaurentSeries::from_ints(-1, &[1], Some(4));
        assert!(neg.exp().is_err());
        assert!(TruncatedLaurentSeries::one().exp().is_err());
    }

    #[test]
    fn inv_pow_examples() {
        let z = TruncatedLaurentSeries::from_ints(-1, &[1], Some(10));
        let inv = z.inv_pow(3).unwrap();
        assert_eq!(inv.coefficient(3).unwrap(), 1);
        assert_eq!(inv.valuation(), Some(3));
        // (z² − z)/2 is u^−2 (1 − u)/2
        let f = TruncatedLaurentSeries::new(-2, vec![r(1, 2), r(-1, 2)], 8);
        let g = f.inv_pow(1).unwrap();
        assert_eq!(g.trunc_order(), Some(12));
        for e in 2..=12 {
            assert_eq!(g.coefficient(e).unwrap(), 2);
        }
        assert!(TruncatedLaurentSeries::zero(5).inv_pow(1).is_err());
        assert!(TruncatedLaurentSeries::one().inv_pow(1).is_err());
    }

    #[test]
    fn inverse_roundtrip_m6() {
        // M_6 = (z⁶ − z³ − z² + z)/6
        let m6 = TruncatedLaurentSeries::new(-6, vec![r(1, 6), r(0, 1), r(0, 1), r(-1, 6), r(-1, 6), r(1, 6)], 15);
        let p = &m6 * &m6.inv_pow(1).unwrap();
        assert_eq!(p.normalized(), series(&[1], p.trunc_order().unwrap()));
        assert!(p.trunc_order().unwrap() >= 15);
    }

    #[test]
    fn substitution() {
        let u = series(&[0, 1], 4);
        let s = u.substitute_power(3);
        assert_eq!(s.trunc_order(), Some(12));
        assert_eq!(s.coefficient(3).unwrap(), 1);
        assert_eq!(u.substitute_power(1), u);
        let p = TruncatedLaurentSeries::from_ints(-1, &[1, 0, 2], None).substitute_power(2);
        assert_eq!(p, TruncatedLaurentSeries::from_ints(-2, &[1, 0, 0, 0, 2], None));
    }

    #[test]
    fn coefficient_window() {
        let f = series(&[1, 0, -1], 2);
        assert_eq!(f.coefficient(2).unwrap(), -1);
        assert_eq!(f.coefficient(-4).unwrap(), 0);
        assert_eq!(f.coefficient(3), Err(SeriesError::Truncated { exponent: 3, order: 2 }));
        let e = series(&[0, 1], 6).exp().unwrap();
        assert_eq!(e.coefficient(4).unwrap(), r(1, 24));
    }

    #[test]
    fn product_order_accounts_for_valuations() {
        let a = TruncatedLaurentSeries::from_ints(-3, &[1, 1], None);
        let b = TruncatedLaurentSeries::from_ints(2, &[1], Some(10));
        assert_eq!((&a * &b).trunc_order(), Some(7));
        let c = TruncatedLaurentSeries::from_ints(1, &[1, 1], Some(5));
        // (u + …)(u^2 + …): orders 5 + 2 and 10 + 1
        assert_eq!((&c * &b).trunc_order(), Some(7));
        assert_eq!((&a + &b).trunc_order(), Some(10));
        assert!((&a * &a).is_exact());
    }

    #[test]
    fn display() {
        let f = TruncatedLaurentSeries::new(0, vec![r(0, 1), r(-1, 12)], 2);
        assert_eq!(f.to_string(), "-1/12*u + O(u^3)");
    }

    const N: i64 = 16;

    fn arb_series(min_exp: i64) -> impl Strategy<Value = TruncatedLaurentSeries> {
        proptest::collection::vec((-5i64..=5, 1i64..=4), 1..8).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(p, q)| r(p, q)).collect();
            TruncatedLaurentSeries::new(min_exp, coeffs, N)
        })
    }

    fn arb_unit() -> impl Strategy<Value = TruncatedLaurentSeries> {
        arb_series(1).prop_map(|f| &f + &TruncatedLaurentSeries::one())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(0), b in arb_series(-2), c in arb_series(1)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            let n = lhs.trunc_order().unwrap().min(rhs.trunc_order().unwrap());
            prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn exp_log_roundtrip(f in arb_series(1), g in arb_unit()) {
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
            prop_assert_eq!(g.log().unwrap().exp().unwrap(), g.clone());
            // log turns products into sums
            let h = &g * &f.exp().unwrap();
            prop_assert_eq!(h.log().unwrap(), &g.log().unwrap() + &f);
        }

        #[test]
        fn inverse_roundtrip(f in arb_series(-2), m in 1u32..4) {
            prop_assume!(f.coefficient(-2).unwrap() != 0);
            let inv = f.inv_pow(m).unwrap();
            let mut p = TruncatedLaurentSeries::one();
            for _ in 0..m {
                p = &p * &f;
            }
            let one = &p * &inv;
            prop_assert!(one.trunc_order().unwrap() >= N - 2 - 2);
            prop_assert_eq!(one.normalized(), TruncatedLaurentSeries::one().truncate(one.trunc_order().unwrap()));
        }

        #[test]
        fn substitution_is_ring_map(a in arb_series(0), b in arb_series(-1), l in 1u32..4) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let lhs = (&a * &b).substitute_power(l);
            let rhs = &a.substitute_power(l) * &b.substitute_power(l);
            prop_assert_eq!(lhs.clone(), rhs);
            prop_assert_eq!(lhs.trunc_order().unwrap(), l as i64 * (&a * &b).trunc_order().unwrap());
        }

        #[test]
        fn reading_past_order_fails(a in arb_series(0), b in arb_series(2)) {
            for s in [&a * &b, &a + &b, a.exp().map_or(a.clone(), |x| x)] {
                let n = s.trunc_order().unwrap();
                prop_assert!(s.coefficient(n).is_ok());
                let is_truncated = matches!(s.coefficient(n + 1), Err(SeriesError::Truncated { .. }));
                prop_assert!(is_truncated);
            }
        }
    }
}
