use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

/// A complex number over MPFR floats sharing one precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexScalar {
    pub re: Float,
    pub im: Float,
}

impl ComplexScalar {
    pub fn new(re: Float, im: Float) -> Self {
        ComplexScalar { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexScalar { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn real(x: Float) -> Self {
        let prec = x.prec();
        ComplexScalar { re: x, im: Float::new(prec) }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        ComplexScalar { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn conj(&self) -> Self {
        ComplexScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.re.square_ref()) + Float::with_val(self.prec(), self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        ComplexScalar { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sqr();
        assert!(!d.is_zero(), "complex division by zero");
        let num = self * &other.conj();
        ComplexScalar { re: num.re / &d, im: num.im / &d }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        ComplexScalar { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// e^{iy} − 1 − iy without cancellation for small |y|.
    pub fn exp_i_remainder(y: &Self) -> Self {
        let iy = &ComplexScalar::i(y.prec()) * y;
        exp_remainder(&iy)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// e^w − 1 − w, by its Taylor series when |w| < 1/2.
pub fn exp_remainder(w: &ComplexScalar) -> ComplexScalar {
    let p = w.prec();
    if w.abs() >= 0.5 {
        let one = ComplexScalar::real(Float::with_val(p, 1));
        return &(&w.exp() - &one) - w;
    }
    // Σ_{n≥2} wⁿ/n!, stopping once the term drops below 2^{−p} of the sum
    let mut term = w * w;
    term = term.scale(&Float::with_val(p, 0.5));
    let mut sum = term.clone();
    let mut n = 2u32;
    loop {
        n += 1;
        term = (&term * w).scale(&(Float::with_val(p, 1) / n));
        sum = &sum + &term;
        let size = term.abs();
        if size.is_zero() || size < Float::with_val(p, sum.abs() >> p) {
            break;
        }
    }
    sum
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec();
        ComplexScalar { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec();
        ComplexScalar { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        ComplexScalar { re, im }
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im < 0.0 {
            write!(f, "{re:e}-{:e}i", -im)
        } else {
            write!(f, "{re:e}+{im:e}i")
        }
    }
}
