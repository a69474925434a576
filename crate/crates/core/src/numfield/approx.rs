//! Fixed-point complex approximations of algebraic numbers. These only ever
//! order and print roots; no exact decision depends on them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactnum::Rat;
use crate::poly::QPoly;

/// Fractional bits carried by [`Approx`].
pub const PREC: u32 = 256;

/// A complex number `(re + i·im) / 2^PREC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    re: BigInt,
    im: BigInt,
}

impl Approx {
    pub fn zero() -> Approx {
        Approx { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rat(r: &Rat) -> Approx {
        Approx { re: (r.numer() << PREC) / r.denom(), im: BigInt::zero() }
    }

    fn from_f64(z: Complex64) -> Approx {
        let conv = |x: f64| {
            let scaled = x * 2f64.powi(60);
            BigInt::from(scaled as i128) << (PREC - 60)
        };
        Approx { re: conv(z.re), im: conv(z.im) }
    }

    pub fn to_complex(&self) -> Complex64 {
        let conv = |x: &BigInt| {
            let shift = PREC as i64 - 60;
            let top: BigInt = x >> shift as u32;
            top.to_f64().unwrap_or(f64::NAN) / 2f64.powi(60)
        };
        Complex64::new(conv(&self.re), conv(&self.im))
    }

    pub fn add(&self, o: &Approx) -> Approx {
        Approx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Approx) -> Approx {
        Approx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Approx) -> Approx {
        Approx {
            re: (&self.re * &o.re - &self.im * &o.im) >> PREC,
            im: (&self.re * &o.im + &self.im * &o.re) >> PREC,
        }
    }

    pub fn scale(&self, r: &Rat) -> Approx {
        self.mul(&Approx::from_rat(r))
    }

    pub fn div(&self, o: &Approx) -> Option<Approx> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        Some(Approx { re: (re << PREC) / &den, im: (im << PREC) / &den })
    }

    /// `max(|re|, |im|)` in units of `2^-PREC`.
    fn size(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    /// Whether the imaginary part is below `2^-(PREC/2)`.
    pub fn is_real(&self) -> bool {
        self.im.abs().bits() < u64::from(PREC / 2)
    }

    /// Canonical root order: real roots ascending, then the rest by real part
    /// ascending and imaginary part descending.
    pub fn canonical_cmp(&self, o: &Approx) -> Ordering {
        let tol_bits = u64::from(PREC / 2);
        let close = |a: &BigInt, b: &BigInt| (a - b).abs().bits() < tol_bits;
        match (self.is_real(), o.is_real()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (true, true) => {
                if close(&self.re, &o.re) {
                    Ordering::Equal
                } else {
                    self.re.cmp(&o.re)
                }
            }
            (false, false) => {
                if !close(&self.re, &o.re) {
                    self.re.cmp(&o.re)
                } else if !close(&self.im, &o.im) {
                    o.im.cmp(&self.im)
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval(p: &QPoly, z: &Approx) -> Approx {
        p.coeffs()
            .iter()
            .rev()
            .fold(Approx::zero(), |acc, c| acc.mul(z).add(&Approx::from_rat(c)))
    }

    pub fn dist_bits(&self, o: &Approx) -> u64 {
        self.sub(o).size().bits()
    }

    /// The nearest rational integer, when `self` lies within
    /// `2^-tol_bits` of it.
    pub fn nearest_integer(&self, tol_bits: u32) -> Option<BigInt> {
        let limit = u64::from(PREC - tol_bits);
        if self.im.abs().bits() > limit {
            return None;
        }
        let half = BigInt::from(1) << (PREC - 1);
        let n: BigInt = (&self.re + &half) >> PREC;
        let err = &self.re - (&n << PREC);
        (err.abs().bits() <= limit).then_some(n)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_complex();
        let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
        let (re, im) = (clean(z.re), clean(z.im));
        if self.is_real() || im == 0.0 {
            write!(f, "{re:.6}")
        } else if re == 0.0 {
            write!(f, "{im:.6}i")
        } else if im < 0.0 {
            write!(f, "{re:.6} - {:.6}i", -im)
        } else {
            write!(f, "{re:.6} + {im:.6}i")
        }
    }
}

fn dk_f64(coeffs: &[Complex64], iters: usize) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1) * bound.min(1e6)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
    for _ in 0..iters {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 1e-12);
            }
            let step = eval(z[i]) / den;
            if step.is_finite() {
                z[i] -= step;
                delta = delta.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// All complex roots of a square-free rational polynomial to about `PREC`
/// bits, in canonical order.
pub fn complex_roots(f: &QPoly) -> Vec<Approx> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let cf: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(0.0), 0.0))
        .collect();
    let start = dk_f64(&cf, 500);
    let lc = Approx::from_rat(f.leading().unwrap());
    let monic_eval = |z: &Approx| Approx::eval(f, z).div(&lc).unwrap();
    let mut z: Vec<Approx> = start.into_iter().map(Approx::from_f64).collect();
    // Durand–Kerner again in fixed point; converges quadratically from here.
    for _ in 0..200 {
        let mut worst = 0u64;
        for i in 0..n {
            let mut den = Approx::from_rat(&Rat::from_integer(1.into()));
            for j in 0..n {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            let Some(step) = monic_eval(&z[i]).div(&den) else {
                continue;
            };
            worst = worst.max(step.size().bits());
            z[i] = z[i].sub(&step);
        }
        if worst < 24 {
            break;
        }
    }
    z.sort_by(|a, b| a.canonical_cmp(b));
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_of_two() {
        let f = QPoly::from_i64(&[-2, 0, 0, 1]);
        let r = complex_roots(&f);
        assert_eq!(r.len(), 3);
        assert!(r[0].is_real());
        let c = r[0].to_complex();
        assert!((c.re - 2f64.cbrt()).abs() < 1e-12);
        assert!(r[1].to_complex().im > 0.0 && r[2].to_complex().im < 0.0);
        // residual is tiny at full precision
        for z in &r {
            assert!(Approx::eval(&f, z).size().bits() < 40);
        }
        assert_eq!(r[0].to_string(), "1.259921");
    }

    #[test]
    fn quintic_roots() {
        let f = QPoly::from_i64(&[5, -80, 0, 0, 0, 1]);
        let r = complex_roots(&f);
        assert_eq!(r.iter().filter(|z| z.is_real()).count(), 3);
    }
}
