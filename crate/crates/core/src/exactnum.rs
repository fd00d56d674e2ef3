//! Exact arithmetic functions: Möbius, Euler totient, Bernoulli numbers.
//!
//! Integers and rationals are GMP-backed (`rug`). Rationals are always kept
//! in lowest terms with a positive denominator.

use std::sync::RwLock;

pub use rug::{Integer as BigInt, Rational as BigRational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberError {
    #[error("{func} is undefined at {arg}")]
    Domain { func: &'static str, arg: i64 },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Zero test for GMP numbers.
pub trait IsZero {
    fn is_zero(&self) -> bool;
}

impl IsZero for BigInt {
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
}

impl IsZero for BigRational {
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
}

static MOEBIUS: RwLock<Vec<i8>> = RwLock::new(Vec::new());
static BERNOULLI: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function, from μ(1) = 1 and Σ_{d|n} μ(d) = 0 for n > 1.
pub fn moebius(n: i64) -> Result<i8, NumberError> {
    if n < 1 {
        return Err(NumberError::Domain { func: "moebius", arg: n });
    }
    let n = n as usize;
    {
        let table = MOEBIUS.read().unwrap();
        if n < table.len() {
            return Ok(table[n]);
        }
    }
    let mut table = MOEBIUS.write().unwrap();
    if table.is_empty() {
        table.extend_from_slice(&[0, 1]);
    }
    while table.len() <= n {
        let m = table.len() as u64;
        let s: i64 = divisors(m)
            .into_iter()
            .filter(|&d| d < m)
            .map(|d| table[d as usize] as i64)
            .sum();
        table.push((-s) as i8);
    }
    Ok(table[n])
}

/// Euler totient φ(n) = Σ_{d|n} μ(d) n/d.
pub fn totient(n: i64) -> Result<u64, NumberError> {
    if n < 1 {
        return Err(NumberError::Domain { func: "totient", arg: n });
    }
    let mut acc: i64 = 0;
    for d in divisors(n as u64) {
        acc += moebius(d as i64)? as i64 * (n / d as i64);
    }
    Ok(acc as u64)
}

/// Bernoulli number B_m with B_1 = −1/2 (generating function x/(e^x − 1)).
pub fn bernoulli(m: i64) -> Result<BigRational, NumberError> {
    if m < 0 {
        return Err(NumberError::Domain { func: "bernoulli", arg: m });
    }
    let m = m as usize;
    {
        let table = BERNOULLI.read().unwrap();
        if m < table.len() {
            return Ok(table[m].clone());
        }
    }
    let mut table = BERNOULLI.write().unwrap();
    if table.is_empty() {
        table.push(BigRational::from(1));
    }
    // Σ_{j=0}^{n} C(n+1, j) B_j = 0
    while table.len() <= m {
        let n = table.len() as u32;
        if n > 1 && n % 2 == 1 {
            table.push(BigRational::new());
            continue;
        }
        let mut acc = BigRational::new();
        let mut binom = BigInt::from(1);
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += BigRational::from(b * &binom);
            }
            binom *= n + 1 - j as u32;
            binom /= j as u32 + 1;
        }
        table.push(-acc / (n + 1));
    }
    Ok(table[m].clone())
}

/// Rational as a `p/q` string; the denominator is always written.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational, NumberError> {
    let err = || NumberError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::from((p, q)))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| err())?;
            Ok(BigRational::from(p))
        }
    }
}

/// The integer value of `q`, or `None` if `q` is not an integer.
pub fn to_integer(q: &BigRational) -> Option<BigInt> {
    (*q.denom() == 1).then(|| q.numer().clone())
}
