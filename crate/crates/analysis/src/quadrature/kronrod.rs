//! The 7-point Gauss / 15-point Kronrod pair at arbitrary precision.
//!
//! Gauss nodes are the roots of the Legendre polynomial P₇; the added
//! Kronrod nodes are the roots of the Stieltjes polynomial E₈, the monic
//! even polynomial orthogonal to x^k P₇ for k < 8. Both polynomials are
//! built over the rationals, roots are polished by Newton iteration, and the
//! weights come from the moment equations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use graphchi_core::exactnum::{BigRational, IsZero};
use rug::ops::Pow;
use rug::Float;

/// Positive roots in double precision, used only to seed Newton.
const GAUSS_SEEDS: [f64; 3] = [0.949_107_912_342_759, 0.741_531_185_599_394, 0.405_845_151_377_397];
const KRONROD_SEEDS: [f64; 4] = [0.991_455_371_120_813, 0.864_864_423_359_769, 0.586_087_235_467_691, 0.207_784_955_007_898];

#[derive(Debug, Clone)]
pub struct KronrodRule {
    /// Non-negative nodes in decreasing order, 0 last.
    pub nodes: Vec<Float>,
    pub kronrod_weights: Vec<Float>,
    /// Gauss weight per node, zero on the Kronrod-only nodes.
    pub gauss_weights: Vec<Float>,
}

/// Coefficients (constant term first) of the Legendre polynomial P_n.
fn legendre(n: usize) -> Vec<BigRational> {
    let mut prev = vec![BigRational::from(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigRational::new(), BigRational::from(1)];
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k − k P_{k−1}
        let mut next = vec![BigRational::new(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += BigRational::from(c * (2 * k as u32 + 1));
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= BigRational::from(c * k as u32);
        }
        for c in &mut next {
            *c /= (k + 1) as u32;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn moment(m: usize) -> BigRational {
    if m % 2 == 1 { BigRational::new() } else { BigRational::from((2, m as u32 + 1)) }
}

/// Solves a square rational system by Gaussian elimination.
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("singular system");
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = BigRational::from(&a[r][c] / &a[c][c]);
            for j in c..n {
                let t = BigRational::from(&f * &a[c][j]);
                a[r][j] -= t;
            }
            let t = BigRational::from(&f * &b[c]);
            b[r] -= t;
        }
    }
    (0..n).map(|i| BigRational::from(&b[i] / &a[i][i])).collect()
}

/// Monic Stieltjes polynomial E₈ (constant term first).
fn stieltjes8() -> Vec<BigRational> {
    let p7 = legendre(7);
    // unknowns c0, c2, c4, c6; conditions ∫ E₈ P₇ x^k = 0 for k = 1, 3, 5, 7
    let integral = |power: usize, k: usize| -> BigRational {
        p7.iter().enumerate().fold(BigRational::new(), |acc, (i, c)| acc + (c * moment(i + power + k)))
    };
    let ks = [1, 3, 5, 7];
    let a = ks.iter().map(|&k| [0, 2, 4, 6].iter().map(|&p| integral(p, k)).collect()).collect();
    let b = ks.iter().map(|&k| -integral(8, k)).collect();
    let c = solve_rational(a, b);
    let mut e = vec![BigRational::new(); 9];
    for (i, v) in c.into_iter().enumerate() {
        e[2 * i] = v;
    }
    e[8] = BigRational::from(1);
    e
}

fn newton(poly: &[BigRational], seed: f64, prec: u32) -> Float {
    let coeffs: Vec<Float> = poly.iter().map(|c| Float::with_val(prec, c)).collect();
    let mut x = Float::with_val(prec, seed);
    for _ in 0..200 {
        let mut p = Float::new(prec);
        let mut dp = Float::new(prec);
        for c in coeffs.iter().rev() {
            dp = Float::with_val(prec, &dp * &x) + &p;
            p = Float::with_val(prec, &p * &x) + c;
        }
        let step = Float::with_val(prec, &p / &dp);
        x -= &step;
        if step.is_zero() || step.get_exp().is_none_or(|e| e < -(prec as i32) - 2) {
            break;
        }
    }
    x
}

/// Weights w_j for symmetric nodes (x_j, −x_j; a node at 0 counted once)
/// integrating x^{2m} exactly for m < nodes.len().
fn symmetric_weights(nodes: &[Float], prec: u32) -> Vec<Float> {
    let n = nodes.len();
    let mut a: Vec<Vec<Float>> = (0..n)
        .map(|m| {
            nodes
                .iter()
                .map(|x| {
                    let mult = if x.is_zero() { 1u32 } else { 2 };
                    if m == 0 {
                        Float::with_val(prec, mult)
                    } else {
                        Float::with_val(prec, x.clone().pow(2 * m as u32) * mult)
                    }
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Float> = (0..n).map(|m| Float::with_val(prec, 2) / (2 * m as u32 + 1)).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].clone().abs().partial_cmp(&a[j][c].clone().abs()).unwrap()).unwrap();
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = Float::with_val(prec, &a[r][c] / &a[c][c]);
            for j in c..n {
                let t = Float::with_val(prec, &f * &a[c][j]);
                a[r][j] -= t;
            }
            let t = Float::with_val(prec, &f * &b[c]);
            b[r] -= t;
        }
    }
    let mut w = vec![Float::new(prec); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for j in r + 1..n {
            s -= Float::with_val(prec, &a[r][j] * &w[j]);
        }
        w[r] = s / &a[r][r];
    }
    w
}

fn build(prec: u32) -> KronrodRule {
    let work = prec + 64;
    let p7 = legendre(7);
    let e8 = stieltjes8();
    let gauss: Vec<Float> = GAUSS_SEEDS.iter().map(|&s| newton(&p7, s, work)).collect();
    let kronrod: Vec<Float> = KRONROD_SEEDS.iter().map(|&s| newton(&e8, s, work)).collect();
    let mut nodes = Vec::new();
    for i in 0..4 {
        nodes.push(kronrod[i].clone());
        if i < 3 {
            nodes.push(gauss[i].clone());
        }
    }
    nodes.push(Float::new(work));
    let kw = symmetric_weights(&nodes, work);
    let mut gauss_nodes: Vec<Float> = gauss.clone();
    gauss_nodes.push(Float::new(work));
    let gw = symmetric_weights(&gauss_nodes, work);
    let mut gauss_weights = vec![Float::new(prec); nodes.len()];
    for (i, w) in gw.iter().enumerate() {
        // Gauss nodes sit at odd positions, plus the centre
        let pos = if i < 3 { 2 * i + 1 } else { nodes.len() - 1 };
        gauss_weights[pos] = Float::with_val(prec, w);
    }
    KronrodRule {
        nodes: nodes.iter().map(|x| Float::with_val(prec, x)).collect(),
        kronrod_weights: kw.iter().map(|x| Float::with_val(prec, x)).collect(),
        gauss_weights,
    }
}

/// The rule at `prec` bits, computed once per precision.
pub fn rule(prec: u32) -> Arc<KronrodRule> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<KronrodRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&prec) {
        return r.clone();
    }
    let r = Arc::new(build(prec));
    cache.lock().unwrap().insert(prec, r.clone());
    r
}
