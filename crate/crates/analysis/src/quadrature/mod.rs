//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands, and the
//! one-dimensional integrals built on it: the Q± integrals, the Stirling
//! identity against log-Γ, and the factored J_n± products.

mod complex;
mod gamma;
mod integrals;
mod kronrod;

use std::collections::BinaryHeap;

use rug::Float;
use thiserror::Error;

pub use complex::{exp_remainder, ComplexScalar};
pub use gamma::{gamma_normalized, ln_gamma};
pub use integrals::{
    bernoulli_exponent, j_factor, j_product, jres_csv, jres_scan, q_integral, q_integral_path, q_residual,
    stirling_identity_check, z_value, JProduct, JresRow, StirlingReport,
};
pub use kronrod::{rule, KronrodRule};

/// Working precision in bits.
pub const DEFAULT_PREC: u32 = 128;
/// Subinterval budget for one adaptive integration.
pub const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: ComplexScalar,
    /// Sum over subintervals of |K15 − G7|.
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("no convergence after {intervals} subintervals (error estimate {:e})", best.abs_error_estimate)]
    NoConvergence { best: QuadratureResult, intervals: usize },
    #[error("invalid argument: {0}")]
    Domain(String),
}

struct Piece {
    t0: Float,
    t1: Float,
    value: ComplexScalar,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Applies the G7/K15 pair to f on the segment z(t) = a + t·(b − a), t ∈ [t0, t1],
/// returning (K15 · z'(t), |K15 − G7|).
fn apply_rule<F>(f: &F, a: &ComplexScalar, dir: &ComplexScalar, t0: &Float, t1: &Float, prec: u32) -> (ComplexScalar, f64)
where
    F: Fn(&ComplexScalar) -> ComplexScalar,
{
    let r = rule(prec);
    let half = Float::with_val(prec, t1 - t0) / 2u32;
    let mid = Float::with_val(prec, t0 + t1) / 2u32;
    let at = |t: &Float| f(&(a + &dir.scale(t)));
    let mut kron = ComplexScalar::zero(prec);
    let mut gauss = ComplexScalar::zero(prec);
    for (i, x) in r.nodes.iter().enumerate() {
        let off = Float::with_val(prec, &half * x);
        let vals = if x.is_zero() {
            at(&mid)
        } else {
            &at(&Float::with_val(prec, &mid - &off)) + &at(&Float::with_val(prec, &mid + &off))
        };
        kron = &kron + &vals.scale(&r.kronrod_weights[i]);
        if !r.gauss_weights[i].is_zero() {
            gauss = &gauss + &vals.scale(&r.gauss_weights[i]);
        }
    }
    let scale = dir.scale(&half);
    let k = &kron * &scale;
    let g = &gauss * &scale;
    let err = (&k - &g).abs().to_f64();
    (k, err)
}

/// Integrates f along the straight segment from `a` to `b` in the complex plane.
///
/// The segment is first cut into `initial` equal pieces, then the piece with
/// the largest error estimate is bisected until the total estimate is at most
/// `tol`.
pub fn integrate_segment<F>(f: &F, a: &ComplexScalar, b: &ComplexScalar, tol: f64, initial: usize, prec: u32) -> Result<QuadratureResult, QuadError>
where
    F: Fn(&ComplexScalar) -> ComplexScalar,
{
    integrate_segment_limited(f, a, b, tol, initial, MAX_INTERVALS, prec)
}

fn integrate_segment_limited<F>(
    f: &F,
    a: &ComplexScalar,
    b: &ComplexScalar,
    tol: f64,
    initial: usize,
    max_intervals: usize,
    prec: u32,
) -> Result<QuadratureResult, QuadError>
where
    F: Fn(&ComplexScalar) -> ComplexScalar,
{
    if !(tol > 0.0) {
        return Err(QuadError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let dir = b - a;
    let initial = initial.max(1);
    let mut pieces: BinaryHeap<Piece> = (0..initial)
        .map(|i| {
            let t0 = Float::with_val(prec, i) / initial as u32;
            let t1 = Float::with_val(prec, i + 1) / initial as u32;
            let (value, error) = apply_rule(f, a, &dir, &t0, &t1, prec);
            Piece { t0, t1, value, error }
        })
        .collect();
    loop {
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= tol || pieces.len() >= max_intervals {
            let mut sorted: Vec<&Piece> = pieces.iter().collect();
            sorted.sort_by(|x, y| x.t0.partial_cmp(&y.t0).unwrap());
            let value = sorted.iter().fold(ComplexScalar::zero(prec), |v, p| &v + &p.value);
            let result = QuadratureResult { value, abs_error_estimate: error, evaluations: 15 * pieces.len() };
            if error <= tol {
                return Ok(result);
            }
            return Err(QuadError::NoConvergence { best: result, intervals: pieces.len() });
        }
        let p = pieces.pop().expect("at least one piece");
        let mid = Float::with_val(prec, &p.t0 + &p.t1) / 2u32;
        for (t0, t1) in [(p.t0, mid.clone()), (mid, p.t1)] {
            let (value, error) = apply_rule(f, a, &dir, &t0, &t1, prec);
            pieces.push(Piece { t0, t1, value, error });
        }
    }
}

/// Integrates f over the real interval [a, b].
pub fn integrate_adaptive<F>(f: F, a: &Float, b: &Float, tol: f64) -> Result<QuadratureResult, QuadError>
where
    F: Fn(&Float) -> ComplexScalar,
{
    if a >= b {
        return Err(QuadError::Domain("need a < b".into()));
    }
    let prec = a.prec().max(b.prec());
    let g = |z: &ComplexScalar| f(&z.re);
    integrate_segment(&g, &ComplexScalar::real(Float::with_val(prec, a)), &ComplexScalar::real(Float::with_val(prec, b)), tol, 1, prec)
}

/// Integrates f along the polyline through `points`, splitting `tol` evenly
/// across its segments.
pub fn integrate_path<F>(f: F, points: &[ComplexScalar], tol: f64) -> Result<QuadratureResult, QuadError>
where
    F: Fn(&ComplexScalar) -> ComplexScalar,
{
    if points.len() < 2 {
        return Err(QuadError::Domain("a path needs at least two points".into()));
    }
    let prec = points[0].prec();
    let per = tol / (points.len() - 1) as f64;
    let mut out = QuadratureResult { value: ComplexScalar::zero(prec), abs_error_estimate: 0.0, evaluations: 0 };
    for w in points.windows(2) {
        let r = integrate_segment(&f, &w[0], &w[1], per, 1, prec)?;
        out.value = &out.value + &r.value;
        out.abs_error_estimate += r.abs_error_estimate;
        out.evaluations += r.evaluations;
    }
    Ok(out)
}
