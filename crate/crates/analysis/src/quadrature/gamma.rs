use graphchi_core::exactnum::bernoulli;
use rug::float::Constant;
use rug::Float;

use super::QuadError;

/// log Γ(x) for real x > 0 at the precision of `x`.
///
/// The argument is shifted up to w ≥ 0.12·prec + 8 by the recurrence, then
/// the Stirling series
/// (w − ½) log w − w + ½ log 2π + Σ_m B_{2m} / (2m(2m−1) w^{2m−1})
/// is summed. For real w > 0 the truncation error is below the first omitted
/// term, so summation stops once a term falls under 2^{−prec−8} while the
/// terms are still decreasing.
pub fn ln_gamma(x: &Float) -> Result<Float, QuadError> {
    if !(x.is_finite() && x.cmp0() == Some(std::cmp::Ordering::Greater)) {
        return Err(QuadError::Domain(format!("log-gamma needs x > 0, got {x}")));
    }
    let out_prec = x.prec();
    let prec = out_prec + 32;
    let target = 0.12 * prec as f64 + 8.0;
    let mut w = Float::with_val(prec, x);
    let mut product = Float::with_val(prec, 1);
    while w < target {
        product *= &w;
        w += 1u32;
    }
    let lnw = Float::with_val(prec, w.ln_ref());
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut sum = Float::with_val(prec, &w - 0.5f64) * &lnw - &w + Float::with_val(prec, two_pi.ln_ref()) / 2u32;
    let w2 = Float::with_val(prec, w.square_ref());
    let mut power = w.clone();
    let threshold = Float::with_val(prec, Float::with_val(prec, 1) >> (prec + 8));
    let mut last = Float::with_val(prec, f64::INFINITY);
    for m in 1u32.. {
        let b = bernoulli(2 * m as i64).expect("non-negative index");
        let denom = Float::with_val(prec, &power * (2 * m * (2 * m - 1)));
        let term = Float::with_val(prec, &b) / denom;
        let size = Float::with_val(prec, term.abs_ref());
        assert!(size < last, "Stirling terms stopped decreasing before reaching the cutoff");
        sum += &term;
        if size < threshold {
            break;
        }
        last = size;
        power *= &w2;
    }
    sum -= product.ln();
    Ok(Float::with_val(out_prec, sum))
}

/// Γ(z) / (√(2π) z^{z−½} e^{−z}), the exact value of the Stirling integral.
pub fn gamma_normalized(z: &Float) -> Result<Float, QuadError> {
    let prec = z.prec() + 32;
    let z = Float::with_val(prec, z);
    let lg = ln_gamma(&z)?;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let lnz = Float::with_val(prec, z.ln_ref());
    let e = lg - Float::with_val(prec, &z - 0.5f64) * lnz + &z - Float::with_val(prec, two_pi.ln_ref()) / 2u32;
    Ok(Float::with_val(prec - 32, e.exp()))
}
