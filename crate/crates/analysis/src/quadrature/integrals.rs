use graphchi_core::euler_series::{chi_disconnected, Parity};
use graphchi_core::exactnum::{bernoulli, divisors, moebius, BigInt, BigRational};
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::complex::{exp_remainder, ComplexScalar};
use super::gamma::gamma_normalized;
use super::{integrate_segment, QuadError, QuadratureResult};

fn sqrt_z_over_2pi(z: &Float) -> Float {
    let prec = z.prec();
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    Float::with_val(prec, z / two_pi).sqrt()
}

/// The Q± integrand at y, without the √(z/2π) normalisation. Even is "+".
fn q_action(sign: Parity, z: &Float, y: &ComplexScalar) -> ComplexScalar {
    match sign {
        Parity::Even => exp_remainder(&(&ComplexScalar::i(y.prec()) * y)).scale(z).exp(),
        Parity::Odd => (-&exp_remainder(y).scale(z)).exp(),
    }
}

/// Q±(z, ε, u) along the straight path from −ε + iu to ε + iu (for +) or
/// from −ε − u to ε − u (for −). ε = 0 gives 0.
pub fn q_integral(sign: Parity, z: &Float, eps: &Float, u: &ComplexScalar, tol: f64) -> Result<QuadratureResult, QuadError> {
    let prec = z.prec();
    if z.cmp0() != Some(std::cmp::Ordering::Greater) || eps.cmp0() == Some(std::cmp::Ordering::Less) || eps.is_nan() {
        return Err(QuadError::Domain(format!("need z > 0 and ε ≥ 0, got z={z}, ε={eps}")));
    }
    let shift = match sign {
        Parity::Even => &ComplexScalar::i(prec) * u,
        Parity::Odd => -u,
    };
    let a = &shift - &ComplexScalar::real(Float::with_val(prec, eps));
    let b = &shift + &ComplexScalar::real(Float::with_val(prec, eps));
    q_integral_path(sign, z, &[a, b], tol)
}

/// Q± integrand integrated along an arbitrary polyline.
pub fn q_integral_path(sign: Parity, z: &Float, points: &[ComplexScalar], tol: f64) -> Result<QuadratureResult, QuadError> {
    let prec = z.prec();
    let norm = sqrt_z_over_2pi(z);
    if points.windows(2).all(|w| w[0] == w[1]) {
        return Ok(QuadratureResult { value: ComplexScalar::zero(prec), abs_error_estimate: 0.0, evaluations: 0 });
    }
    let f = |y: &ComplexScalar| q_action(sign, z, y);
    let mut r = super::integrate_path(f, points, tol / norm.to_f64())?;
    r.value = r.value.scale(&norm);
    r.abs_error_estimate *= norm.to_f64();
    Ok(r)
}

/// ∓ Σ_{m=1}^{r} B_{m+1} / (m(m+1)) z^{−m}, the exponent of the large-z
/// expansion of Q±; even is "+".
pub fn bernoulli_exponent(sign: Parity, z: &Float, r: u32) -> Float {
    let prec = z.prec();
    let mut acc = BigRational::new();
    let zq = z.to_rational().expect("finite z");
    let zinv = BigRational::from(zq.recip_ref());
    let mut power = BigRational::from(1);
    for m in 1..=r {
        power *= &zinv;
        let b = bernoulli(m as i64 + 1).expect("non-negative");
        acc += b / BigRational::from(m * (m + 1)) * &power;
    }
    if sign == Parity::Even {
        acc = -acc;
    }
    Float::with_val(prec, &acc)
}

/// |Q±(z, ξ z^{−5/12}, 0) − exp(bernoulli_exponent(z, 3))| and the quadrature behind it.
pub fn q_residual(sign: Parity, z: &Float, xi: f64, tol: f64) -> Result<(Float, QuadratureResult), QuadError> {
    let prec = z.prec();
    let eps = Float::with_val(prec, z.ln_ref()) * Float::with_val(prec, -5) / 12u32;
    let eps = eps.exp() * xi;
    let q = q_integral(sign, z, &eps, &ComplexScalar::zero(prec), tol)?;
    let target = ComplexScalar::real(bernoulli_exponent(sign, z, 3).exp());
    Ok(((&q.value - &target).abs(), q))
}

#[derive(Debug, Clone)]
pub struct StirlingReport {
    pub z: Float,
    /// Integration interval is [−cutoff, cutoff].
    pub cutoff: f64,
    pub integral: QuadratureResult,
    pub gamma_side: Float,
    pub difference: f64,
    pub tol: f64,
}

impl StirlingReport {
    pub fn agrees(&self) -> bool {
        self.difference <= self.tol
    }
}

/// Smallest L ≥ 2 (in steps of 1/4) whose tail bound is below `bound`.
///
/// Right tail: e^y − 1 − y ≥ y²/2 gives ∫_L^∞ ≤ e^{−zL²/2}/(zL).
/// Left tail: e^y − 1 − y ≥ |y| − 1 gives ∫_{−∞}^{−L} ≤ e^{−z(L−1)}/z.
fn stirling_cutoff(z: f64, bound: f64) -> f64 {
    let norm = (z / (2.0 * std::f64::consts::PI)).sqrt();
    let mut l = 2.0;
    loop {
        let right = (-z * l * l / 2.0).exp() / (z * l);
        let left = (-z * (l - 1.0)).exp() / z;
        if norm * (right + left) <= bound {
            return l;
        }
        l += 0.25;
    }
}

/// Compares ∫_{−L}^{L} e^{−z(e^y−1−y)} dy/√(2π/z) against Γ(z)/(√(2π) z^{z−½} e^{−z}).
pub fn stirling_identity_check(z: &Float, tol: f64) -> Result<StirlingReport, QuadError> {
    let prec = z.prec();
    if z.cmp0() != Some(std::cmp::Ordering::Greater) || !(tol > 0.0) {
        return Err(QuadError::Domain(format!("need z > 0 and tol > 0, got z={z}, tol={tol}")));
    }
    let cutoff = stirling_cutoff(z.to_f64(), tol / 10.0);
    let l = Float::with_val(prec, cutoff);
    let integral = q_integral_path(
        Parity::Odd,
        z,
        &[ComplexScalar::real(-l.clone()), ComplexScalar::real(Float::new(prec)), ComplexScalar::real(l)],
        tol / 10.0,
    )?;
    let gamma_side = gamma_normalized(z)?;
    let difference = (&integral.value - &ComplexScalar::real(gamma_side.clone())).abs().to_f64();
    Ok(StirlingReport { z: z.clone(), cutoff, integral, gamma_side, difference, tol })
}

/// M_k(z) = (1/k) Σ_{d|k} μ(d) z^{k/d}, exactly.
fn m_exact(k: u32, z: &BigRational) -> BigRational {
    let mut acc = BigRational::new();
    for d in divisors(k as u64) {
        let mu = moebius(d as i64).expect("positive");
        if mu != 0 {
            acc += BigRational::from(z.pow(k as i32 / d as i32)) * mu as i32;
        }
    }
    acc / k
}

/// One factor of J_n±: e^{±δ/(2k)} ∫_{−kε^k}^{kε^k} e^{s_k±(z,y)} dy/√(2πk/z^k).
///
/// The action is evaluated as (z^k/k)(e^{iy} − 1 − iy) + iy(z^k/k − M_k) for +
/// and −(z^k/k)(e^y − 1 − y) − y(z^k/k − M_k) for −, with z^k/k − M_k exact.
/// `rel_tol` is relative to min(1, interval length × peak height).
pub fn j_factor(sign: Parity, k: u32, z: &BigRational, eps: &Float, rel_tol: f64) -> Result<QuadratureResult, QuadError> {
    let prec = eps.prec();
    if k == 0 || z.cmp0() != std::cmp::Ordering::Greater || eps.cmp0() == Some(std::cmp::Ordering::Less) {
        return Err(QuadError::Domain(format!("need k ≥ 1, z > 0, ε ≥ 0 (k={k}, z={z})")));
    }
    if eps.is_zero() {
        return Ok(QuadratureResult { value: ComplexScalar::zero(prec), abs_error_estimate: 0.0, evaluations: 0 });
    }
    let zk_over_k = BigRational::from(z.pow(k as i32)) / k;
    let drift = Float::with_val(prec, &(zk_over_k.clone() - m_exact(k, z)));
    let c = Float::with_val(prec, &zk_over_k);
    let half = Float::with_val(prec, eps.pow(k)) * k;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let norm = Float::with_val(prec, &c / two_pi).sqrt();
    let action = |y: &ComplexScalar| -> ComplexScalar {
        match sign {
            Parity::Even => {
                let iy = &ComplexScalar::i(prec) * y;
                (&exp_remainder(&iy).scale(&c) + &iy.scale(&drift)).exp()
            }
            Parity::Odd => (-&(&exp_remainder(y).scale(&c) + &y.scale(&drift))).exp(),
        }
    };
    // phase of the + action varies by about c·half³/3 across the interval
    let phase = Float::with_val(prec, &c * Float::with_val(prec, (&half).pow(3u32))).to_f64() / 3.0;
    let initial = if sign == Parity::Even { ((phase / std::f64::consts::PI).ceil() as usize).clamp(1, 256) } else { 1 };
    let scale = (Float::with_val(prec, &half * &norm) * 2u32).to_f64().min(1.0);
    let a = ComplexScalar::real(-half.clone());
    let b = ComplexScalar::real(half);
    let mut r = integrate_segment(&action, &a, &b, rel_tol * scale / norm.to_f64(), initial, prec)?;
    let delta = if k.is_multiple_of(2) { Float::with_val(prec, 1) / (2 * k) } else { Float::new(prec) };
    let pre = if sign == Parity::Even { delta.exp() } else { (-delta).exp() };
    let factor = Float::with_val(prec, &norm * &pre);
    r.value = r.value.scale(&factor);
    r.abs_error_estimate *= factor.to_f64();
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct JProduct {
    pub value: ComplexScalar,
    /// |J| · Σ_k err_k / |F_k|.
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub factors: Vec<QuadratureResult>,
}

/// J_n±(z, ε) as the ordered product of its n factors, computed in parallel.
pub fn j_product(sign: Parity, n: u32, z: &BigRational, eps: &Float, rel_tol: f64) -> Result<JProduct, QuadError> {
    if n == 0 {
        return Err(QuadError::Domain("n must be at least 1".into()));
    }
    let prec = eps.prec();
    let factors: Vec<QuadratureResult> = (1..=n).into_par_iter().map(|k| j_factor(sign, k, z, eps, rel_tol)).collect::<Result<_, _>>()?;
    let mut value = ComplexScalar::real(Float::with_val(prec, 1));
    let mut relative = 0.0;
    for f in &factors {
        value = &value * &f.value;
        let size = f.value.abs().to_f64();
        if size > 0.0 {
            relative += f.abs_error_estimate / size;
        }
    }
    let abs_error_estimate = value.abs().to_f64() * relative;
    let evaluations = factors.iter().map(|f| f.evaluations).sum();
    Ok(JProduct { value, abs_error_estimate, evaluations, factors })
}

#[derive(Debug, Clone)]
pub struct JresRow {
    pub z: BigRational,
    pub j: JProduct,
    pub partial_sum: BigRational,
    pub delta: Float,
    pub delta_normalized: Float,
}

/// ε = z^{−5/12}/6.
fn jres_eps(z: &BigRational, prec: u32) -> Float {
    let lz = Float::with_val(prec, z).ln() * Float::with_val(prec, -5) / 12u32;
    lz.exp() / 6u32
}

/// Δ(z) = |J_n±(z, z^{−5/12}/6) − Σ_{k≤⌊n/12⌋} χ_k z^{−k}| over the grid,
/// with χ_k from the disconnected table of the matching parity.
pub fn jres_scan(sign: Parity, n: u32, z_grid: &[BigRational], prec: u32) -> Result<Vec<JresRow>, QuadError> {
    if n == 0 || n > 24 {
        return Err(QuadError::Domain(format!("n must be in 1..=24, got {n}")));
    }
    if z_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadError::Domain("z grid must be increasing".into()));
    }
    let top = n / 12;
    let chi = chi_disconnected(sign, top).map_err(|e| QuadError::Domain(e.to_string()))?;
    z_grid
        .par_iter()
        .map(|z| {
            let eps = jres_eps(z, prec);
            let j = j_product(sign, n, z, &eps, 1e-30)?;
            let zinv = BigRational::from(z.recip_ref());
            let mut partial_sum = BigRational::new();
            let mut power = BigRational::from(1);
            for k in 0..=top {
                partial_sum += BigRational::from(chi.get(k).expect("table covers ⌊n/12⌋") * &power);
                power *= &zinv;
            }
            let delta = (&j.value - &ComplexScalar::real(Float::with_val(prec, &partial_sum))).abs();
            let scale = (Float::with_val(prec, z).ln() * (n + 1) / 12u32).exp();
            let delta_normalized = Float::with_val(prec, &delta * &scale);
            Ok(JresRow { z: z.clone(), j, partial_sum, delta, delta_normalized })
        })
        .collect()
}

fn float_text(x: &Float) -> String {
    format!("{:.40e}", x)
}

fn rational_text(q: &BigRational) -> String {
    if *q.denom() == 1 { q.numer().to_string() } else { q.to_string() }
}

/// CSV with header `z,J_real,J_imag,partial_sum,delta,delta_normalized`.
pub fn jres_csv(rows: &[JresRow]) -> String {
    let mut out = String::from("z,J_real,J_imag,partial_sum,delta,delta_normalized\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            rational_text(&r.z),
            float_text(&r.j.value.re),
            float_text(&r.j.value.im),
            rational_text(&r.partial_sum),
            float_text(&r.delta),
            float_text(&r.delta_normalized),
        ));
    }
    out
}

/// Integer z as a rational.
pub fn z_value(z: u64) -> BigRational {
    BigRational::from(BigInt::from(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_polynomial_values() {
        // M_6(z) = (z⁶ − z³ − z² + z)/6
        let z = BigRational::from(10);
        assert_eq!(m_exact(6, &z), BigRational::from((1_000_000 - 1000 - 100 + 10, 6)));
        assert_eq!(m_exact(1, &z), z);
    }

    #[test]
    fn vanishing_interval() {
        let z = Float::with_val(128, 100);
        let q = q_integral(Parity::Odd, &z, &Float::new(128), &ComplexScalar::zero(128), 1e-20).unwrap();
        assert!(q.value.abs().is_zero());
        let f = j_factor(Parity::Even, 3, &z_value(100), &Float::new(128), 1e-20).unwrap();
        assert!(f.value.abs().is_zero());
        let j = j_product(Parity::Odd, 4, &z_value(100), &Float::new(128), 1e-20).unwrap();
        assert!(j.value.abs().is_zero());
    }

    #[test]
    fn cutoff_covers_tails() {
        assert_eq!(stirling_cutoff(50.0, 1e-9), 2.0);
        assert!(stirling_cutoff(1.0, 1e-9) > 20.0);
    }

    #[test]
    fn exponent_values() {
        // B₂/2 = 1/12, B₃ = 0, B₄/12 = −1/360
        let z = Float::with_val(128, 10);
        let e = bernoulli_exponent(Parity::Odd, &z, 3).to_f64();
        assert!((e - (1.0 / 120.0 - 1.0 / 360_000.0)).abs() < 1e-17, "{e}");
        assert_eq!(bernoulli_exponent(Parity::Even, &z, 3).to_f64(), -e);
    }

    #[test]
    fn csv_header_and_rows() {
        let rows = jres_scan(Parity::Odd, 2, &[z_value(1000)], 128).unwrap();
        let csv = jres_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "z,J_real,J_imag,partial_sum,delta,delta_normalized");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("1000,"));
        assert_eq!(lines[1].split(',').count(), 6);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(jres_scan(Parity::Even, 12, &[z_value(10), z_value(5)], 128).is_err());
        assert!(jres_scan(Parity::Even, 25, &[z_value(10)], 128).is_err());
    }
}
