//! Closed-form large-rank asymptotics in sign and log-magnitude form.
//!
//! Precision: 192 bits by default. The argument of the cosine grows like
//! πg/4, so at g = 10⁶ about 20 bits go to the integer part and the
//! absolute error of the reduced argument stays near 2⁻¹⁷⁰, far below the
//! bound g^{1/2−μ*} ≈ 10⁻⁴² at μ* = 7.5. The scan uses 256 bits.

use std::cmp::Ordering;
use std::fmt;

use graphchi_core::euler_series::{xi_table, ComplexKind, EulerError, EulerTable, Parity};
use graphchi_core::exactnum::{BigInt, BigRational};
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

pub const DEFAULT_PREC: u32 = 192;
pub const SCAN_PREC: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

/// A real number as sign · exp(log_magnitude).
#[derive(Debug, Clone, PartialEq)]
pub struct SignedLogValue {
    pub sign: i8,
    /// Natural log of the magnitude; meaningless when `sign == 0`.
    pub log_magnitude: Float,
}

impl SignedLogValue {
    pub fn zero(prec: u32) -> Self {
        SignedLogValue { sign: 0, log_magnitude: Float::new(prec) }
    }

    pub fn from_float(x: &Float) -> Self {
        let sign = match x.cmp0() {
            Some(Ordering::Greater) => 1,
            Some(Ordering::Less) => -1,
            _ => 0,
        };
        let log_magnitude = if sign == 0 { Float::new(x.prec()) } else { Float::with_val(x.prec(), x.abs_ref()).ln() };
        SignedLogValue { sign, log_magnitude }
    }

    /// Exact integers of any size: the top `prec + 64` bits carry the
    /// mantissa and the discarded bit count enters as a multiple of ln 2.
    pub fn from_integer(x: &BigInt, prec: u32) -> Self {
        let sign = match x.cmp0() {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => return Self::zero(prec),
        };
        let bits = x.significant_bits();
        let keep = prec + 64;
        let shift = bits.saturating_sub(keep);
        let top = BigInt::from(x.abs_ref()) >> shift;
        let mut log = Float::with_val(prec, &top).ln();
        log += Float::with_val(prec, Constant::Log2) * shift;
        SignedLogValue { sign, log_magnitude: log }
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        if x.cmp0() == Ordering::Equal {
            return Self::zero(prec);
        }
        let n = Self::from_integer(x.numer(), prec);
        let d = Self::from_integer(x.denom(), prec);
        n.div(&d)
    }

    pub fn prec(&self) -> u32 {
        self.log_magnitude.prec()
    }

    pub fn neg(&self) -> Self {
        SignedLogValue { sign: -self.sign, log_magnitude: self.log_magnitude.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return Self::zero(self.prec());
        }
        SignedLogValue {
            sign: self.sign * other.sign,
            log_magnitude: Float::with_val(self.prec(), &self.log_magnitude + &other.log_magnitude),
        }
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(other.sign != 0, "division by a zero SignedLogValue");
        if self.sign == 0 {
            return Self::zero(self.prec());
        }
        SignedLogValue {
            sign: self.sign * other.sign,
            log_magnitude: Float::with_val(self.prec(), &self.log_magnitude - &other.log_magnitude),
        }
    }

    /// log₁₀ of the magnitude (−∞ for zero).
    pub fn log10(&self) -> f64 {
        if self.sign == 0 {
            return f64::NEG_INFINITY;
        }
        let ln10 = Float::with_val(self.prec(), 10).ln();
        Float::with_val(self.prec(), &self.log_magnitude / &ln10).to_f64()
    }

    /// The value as an f64; overflows to ±∞ or underflows to 0.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        f64::from(self.sign) * self.log_magnitude.clone().exp().to_f64()
    }

    pub fn to_float(&self) -> Float {
        if self.sign == 0 {
            return Float::new(self.prec());
        }
        let m = self.log_magnitude.clone().exp();
        if self.sign < 0 { -m } else { m }
    }
}

impl fmt::Display for SignedLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}10^{:.6}", if s < 0 { "-" } else { "+" }, self.log10()),
        }
    }
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// cos(√(πg/4) − πg/4 − π/8).
pub fn odd_cosine(g: u64, prec: u32) -> Float {
    let p = pi(prec);
    let x = Float::with_val(prec, &p * g) / 4u32;
    let arg = Float::with_val(prec, x.clone().sqrt() - &x) - Float::with_val(prec, &p / 8u32);
    arg.cos()
}

/// ln((g/(2πe))^power), power given as a float.
fn log_growth(g: u64, power: &Float, prec: u32) -> Float {
    let l = Float::with_val(prec, g).ln() - Float::with_val(prec, 2 * pi(prec)).ln() - 1u32;
    Float::with_val(prec, l * power)
}

/// The large-rank equivalent of χ(GC_+^g); GC_odd and AGC are its negative.
pub fn asym_value(g: u64, kind: ComplexKind) -> Result<SignedLogValue, AsymptoticsError> {
    asym_value_prec(g, kind, DEFAULT_PREC)
}

pub fn asym_value_prec(g: u64, kind: ComplexKind, prec: u32) -> Result<SignedLogValue, AsymptoticsError> {
    if g < 2 {
        return Err(AsymptoticsError::Domain(format!("g must be at least 2, got {g}")));
    }
    let lg = Float::with_val(prec, g).ln();
    let even = if g.is_multiple_of(2) {
        // (−1)^{g/2} √(8π/g³) (g/(2πe))^g
        let sign = if (g / 2).is_multiple_of(2) { 1 } else { -1 };
        let mut log = Float::with_val(prec, 8 * pi(prec)).ln() / 2u32;
        log -= Float::with_val(prec, &lg * 3u32) / 2u32;
        log += log_growth(g, &Float::with_val(prec, g), prec);
        SignedLogValue { sign, log_magnitude: log }
    } else {
        // (√2/g) cos(·) e^{√(πg/4)} (g/(2πe))^{g/2}
        let c = SignedLogValue::from_float(&odd_cosine(g, prec));
        if c.sign == 0 {
            return Ok(SignedLogValue::zero(prec));
        }
        let mut log = Float::with_val(prec, 2u32).ln() / 2u32 - &lg;
        log += Float::with_val(prec, pi(prec) * g / 4u32).sqrt();
        log += log_growth(g, &(Float::with_val(prec, g) / 2u32), prec);
        log += &c.log_magnitude;
        SignedLogValue { sign: c.sign, log_magnitude: log }
    };
    Ok(match kind {
        ComplexKind::GcEven => even,
        ComplexKind::GcOdd | ComplexKind::Agc => even.neg(),
    })
}

#[derive(Debug, Clone)]
pub struct RatioEntry {
    pub g: u32,
    pub chi: BigInt,
    pub asym: SignedLogValue,
    /// χ/asym; `None` when the asymptotic value vanishes.
    pub ratio: Option<f64>,
}

impl RatioEntry {
    pub fn ratio_minus_one(&self) -> Option<f64> {
        self.ratio.map(|r| (r - 1.0).abs())
    }
}

/// χ_exact(g)/asym(g) for every rank in the table, formed in log space.
pub fn ratio_table(kind: ComplexKind, table: &EulerTable) -> Result<Vec<RatioEntry>, AsymptoticsError> {
    let rows: Vec<(u32, BigInt)> = table.iter().map(|(g, v)| (g, v.clone())).collect();
    rows.into_par_iter()
        .map(|(g, chi)| {
            let asym = asym_value(g as u64, kind)?;
            let ratio = (asym.sign != 0).then(|| SignedLogValue::from_integer(&chi, DEFAULT_PREC).div(&asym).to_f64());
            Ok(RatioEntry { g, chi, asym, ratio })
        })
        .collect()
}

/// CSV with columns `g,chi_exact,asym_sign,asym_log10,ratio_minus_1`;
/// a vanishing asymptotic value leaves the last column empty.
pub fn ratio_csv(rows: &[RatioEntry]) -> String {
    let mut out = String::from("g,chi_exact,asym_sign,asym_log10,ratio_minus_1\n");
    for r in rows {
        let rm1 = r.ratio.map_or(String::new(), |x| format!("{:.12e}", x - 1.0));
        out.push_str(&format!("{},{},{},{:.12},{}\n", r.g, r.chi, r.asym.sign, r.asym.log10(), rm1));
    }
    out
}

/// Smallest even g₀ such that sign χ(g) = (−1)^{g/2} for every even g ≥ g₀
/// in the table; `None` if the top entry already disagrees.
pub fn even_sign_threshold(table: &EulerTable) -> Option<u32> {
    let mut threshold = None;
    for (g, v) in table.iter().filter(|(g, _)| g % 2 == 0).collect::<Vec<_>>().into_iter().rev() {
        let expected = if (g / 2) % 2 == 0 { Ordering::Greater } else { Ordering::Less };
        if v.cmp0() != expected {
            break;
        }
        threshold = Some(g);
    }
    threshold
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosViolation {
    pub g: u64,
    pub cosine: f64,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct CosScanReport {
    pub gmax: u64,
    pub mu_star: f64,
    pub checked: usize,
    pub violations: Vec<CosViolation>,
    /// No odd g ≥ this value violates the bound within the scan.
    pub clean_from: u64,
}

/// Odd g ≤ gmax with |cos(√(πg/4) − πg/4 − π/8)| < g^{1/2−μ*}.
pub fn cos_lower_bound_scan(gmax: u64, mu_star: f64) -> Result<CosScanReport, AsymptoticsError> {
    if mu_star <= 7.103 {
        return Err(AsymptoticsError::Domain(format!("μ* must exceed the known irrationality bound 7.103, got {mu_star}")));
    }
    let odd: Vec<u64> = (3..=gmax).step_by(2).collect();
    let violations: Vec<CosViolation> = odd
        .par_chunks(1024)
        .flat_map_iter(|chunk| {
            chunk.iter().filter_map(|&g| {
                let c = Float::with_val(SCAN_PREC, odd_cosine(g, SCAN_PREC).abs());
                let exponent = Float::with_val(SCAN_PREC, 0.5 - mu_star);
                let bound = Float::with_val(SCAN_PREC, g).pow(&exponent);
                (c < bound).then(|| CosViolation { g, cosine: c.to_f64(), bound: bound.to_f64() })
            })
        })
        .collect();
    let clean_from = violations.last().map_or(3, |v| v.g + 2);
    Ok(CosScanReport { gmax, mu_star, checked: odd.len(), violations, clean_from })
}

#[derive(Debug, Clone)]
pub struct XiEntry {
    pub n: u32,
    pub exact: BigRational,
    pub asym: SignedLogValue,
    pub ratio: Option<f64>,
}

/// ± (2nπ)^{−1/2} (n/(eπ))^n e^{√(πn/2)} cos(√(πn/2) − π(n + 3/4)/2).
pub fn xi22_asym(n: u32, parity: Parity, prec: u32) -> SignedLogValue {
    let p = pi(prec);
    let root = (Float::with_val(prec, &p * n) / 2u32).sqrt();
    let shift = Float::with_val(prec, &p * (Float::with_val(prec, n) + 0.75f64)) / 2u32;
    let c = SignedLogValue::from_float(&Float::with_val(prec, &root - &shift).cos());
    if c.sign == 0 {
        return SignedLogValue::zero(prec);
    }
    let ln_n = Float::with_val(prec, n).ln();
    let mut log = -Float::with_val(prec, 2 * n * Float::with_val(prec, &p)).ln() / 2u32;
    log += Float::with_val(prec, &ln_n - Float::with_val(prec, Float::with_val(prec, &p).ln() + 1u32)) * n;
    log += &root;
    log += &c.log_magnitude;
    let sign = c.sign * parity.sign() as i8;
    SignedLogValue { sign, log_magnitude: log }
}

/// Exact ξ_{2n,2} against its asymptotic form for n in `ns`.
pub fn xi22_asym_check(parity: Parity, ns: std::ops::RangeInclusive<u32>) -> Result<Vec<XiEntry>, AsymptoticsError> {
    let top = *ns.end();
    let xi = xi_table(2, parity, 2 * top)?;
    Ok(ns
        .map(|n| {
            let exact = xi[&(2 * n)].clone();
            let asym = xi22_asym(n, parity, DEFAULT_PREC);
            let ratio = (asym.sign != 0).then(|| SignedLogValue::from_rational(&exact, DEFAULT_PREC).div(&asym).to_f64());
            XiEntry { n, exact, asym, ratio }
        })
        .collect())
}

/// (Cg)^g for even g, (Cg)^{g/2} for odd g.
pub fn hgc_lower_bound(g: u64, c: f64) -> Result<SignedLogValue, AsymptoticsError> {
    let limit = 1.0 / (2.0 * std::f64::consts::PI * std::f64::consts::E);
    if !(c > 0.0 && c < limit) {
        return Err(AsymptoticsError::Domain(format!("C must lie in (0, 1/(2πe) = {limit:.6}), got {c}")));
    }
    let prec = DEFAULT_PREC;
    let base = Float::with_val(prec, Float::with_val(prec, c) * g).ln();
    let power = if g.is_multiple_of(2) { Float::with_val(prec, g) } else { Float::with_val(prec, g) / 2u32 };
    Ok(SignedLogValue { sign: 1, log_magnitude: Float::with_val(prec, base * power) })
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub c: f64,
    /// Ranks where |χ| ≤ bound.
    pub failures: Vec<u32>,
    /// |χ(g)| exceeds the bound for every computed g ≥ this value.
    pub holds_from: Option<u32>,
}

/// Compares |χ_exact(g)| with the homology lower bound across the table.
pub fn hgc_bound_report(table: &EulerTable, c: f64) -> Result<BoundReport, AsymptoticsError> {
    let mut failures = Vec::new();
    for (g, v) in table.iter() {
        let bound = hgc_lower_bound(g as u64, c)?;
        let chi = SignedLogValue::from_integer(v, DEFAULT_PREC);
        if chi.sign == 0 || chi.log_magnitude <= bound.log_magnitude {
            failures.push(g);
        }
    }
    let top = table.max_index();
    let holds_from = match failures.last() {
        None => table.iter().next().map(|(g, _)| g),
        Some(&f) if Some(f) == top => None,
        Some(&f) => Some(f + 1),
    };
    Ok(BoundReport { c, failures, holds_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_conversion() {
        let x = BigInt::from(BigInt::u_pow_u(10, 500));
        let v = SignedLogValue::from_integer(&x, 128);
        let expect = 500.0 * std::f64::consts::LN_10;
        assert!((v.log_magnitude.to_f64() - expect).abs() < 1e-10);
        assert_eq!(SignedLogValue::from_integer(&BigInt::from(-7), 128).sign, -1);
        assert_eq!(SignedLogValue::from_integer(&BigInt::new(), 128).sign, 0);
        let q = BigRational::from((-3, 4));
        assert!((SignedLogValue::from_rational(&q, 128).to_f64() + 0.75).abs() < 1e-15);
    }

    #[test]
    fn arithmetic() {
        let a = SignedLogValue::from_float(&Float::with_val(128, -6));
        let b = SignedLogValue::from_float(&Float::with_val(128, 3));
        assert!((a.div(&b).to_f64() + 2.0).abs() < 1e-15);
        assert!((a.mul(&b).to_f64() + 18.0).abs() < 1e-12);
        assert_eq!(a.div(&a).to_f64(), 1.0);
    }

    #[test]
    fn signs_and_flips() {
        assert_eq!(asym_value(40, ComplexKind::GcEven).unwrap().sign, 1);
        assert_eq!(asym_value(42, ComplexKind::GcEven).unwrap().sign, -1);
        for g in [30, 41, 60] {
            let e = asym_value(g, ComplexKind::GcEven).unwrap();
            for k in [ComplexKind::GcOdd, ComplexKind::Agc] {
                let o = asym_value(g, k).unwrap();
                assert_eq!(o.sign, -e.sign);
                assert_eq!(o.log_magnitude, e.log_magnitude);
            }
        }
        assert!(asym_value(1, ComplexKind::GcEven).is_err());
    }

    #[test]
    fn cosine_at_three() {
        let c = odd_cosine(3, 128).to_f64().abs();
        assert!(c > 3f64.powi(-7));
        let direct = ((std::f64::consts::PI * 0.75).sqrt() - 0.75 * std::f64::consts::PI - std::f64::consts::PI / 8.0).cos();
        assert!((odd_cosine(3, 128).to_f64() - direct).abs() < 1e-14);
    }

    #[test]
    fn bound_domain() {
        assert!(hgc_lower_bound(10, 0.0).is_err());
        assert!(hgc_lower_bound(10, 0.06).is_err());
        let b = hgc_lower_bound(11, 0.05).unwrap();
        assert!((b.log_magnitude.to_f64() - 5.5 * (0.55f64).ln()).abs() < 1e-12);
    }
}
