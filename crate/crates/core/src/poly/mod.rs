//! Dense univariate polynomials over an exact [`Field`].
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector. Its degree is reported as
//! `None`, which `Option`'s ordering places below every `Some(d)`.

mod cyclotomic;
mod sturm;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::field::{Field, PrimeField, Rationals};

pub use cyclotomic::{cyclotomic, cyclotomic_uncached};
pub use sturm::{real_roots_in, sign_changes_at, sturm_real_roots, sturm_sequence, SturmPoint};

#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

pub type QPoly = Poly<Rationals>;
pub type FpPoly = Poly<PrimeField>;

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: F) -> Self {
        Poly::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// `x - c`.
    pub fn linear_root(field: F, c: &F::Elem) -> Self {
        let one = field.one();
        let nc = field.neg(c);
        Poly::new(field, vec![nc, one])
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_int(&Int::from(c))).collect();
        Poly::new(field, cs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0. Only for callers that
    /// have already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(self.field.clone(), c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(self.field.clone(), c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &F::Elem) -> Self {
        let lin = Poly::new(self.field.clone(), vec![c.clone(), self.field.one()]);
        self.compose(&lin)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &Int, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Poly::one(self.field.clone()).rem(m)?;
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_field(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let inv = f.inv(&g.lc()).unwrap();
        let mut q = vec![f.zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dg], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, gj));
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.div_rem(g)?.1)
    }

    /// Quotient when `g` is known to divide `self`.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(g)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{g} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> Result<bool> {
        Ok(f.div_rem(self)?.1.is_zero())
    }

    /// Monic gcd with Bézout cofactors: `d = a·self + b·g`.
    pub fn xgcd(&self, g: &Self) -> Result<(Self, Self, Self)> {
        self.check_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::invalid("gcd of two zero polynomials"));
        }
        let fld = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(fld.clone()), Poly::zero(fld.clone()));
        let (mut t0, mut t1) = (Poly::zero(fld.clone()), Poly::one(fld.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = fld.inv(&r0.lc()).unwrap();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, g: &Self) -> Self {
        if self.is_zero() && g.is_zero() {
            return self.clone();
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| f.mul(&f.from_int(&Int::from(k)), a))
            .collect();
        Poly::new(f.clone(), c)
    }

    /// True iff `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::invalid("separability of the zero polynomial"));
        }
        Ok(self.gcd(&self.derivative()).is_one())
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, g: &Self) -> Result<F::Elem> {
        self.check_field(g)?;
        if self.is_zero() || g.is_zero() {
            return Err(Error::invalid("resultant with the zero polynomial"));
        }
        let fld = &self.field;
        let (mut a, mut b) = (self.clone(), g.clone());
        let mut acc = fld.one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(fld.mul(&acc, &fld.pow(&b.lc(), m as u64)));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(fld.zero());
            }
            let k = r.deg();
            if (m * n) % 2 == 1 {
                acc = fld.neg(&acc);
            }
            acc = fld.mul(&acc, &fld.pow(&b.lc(), (m - k) as u64));
            a = b;
            b = r;
        }
    }

    /// Canonical order: degree, then coefficients from the constant term up.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match self.field.cmp_elem(a, b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Prints with the given variable name.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let t = self.field.coeff_text(c);
            if out.is_empty() {
                if t.negative {
                    out.push('-');
                }
            } else {
                out.push_str(if t.negative { " - " } else { " + " });
            }
            if k == 0 {
                if t.compound && !out.is_empty() && out != "-" {
                    out.push_str(&format!("({})", t.body));
                } else {
                    out.push_str(&t.body);
                }
                continue;
            }
            if !t.is_one {
                if t.compound {
                    out.push_str(&format!("({})*", t.body));
                } else {
                    out.push_str(&t.body);
                    out.push('*');
                }
            }
            out.push_str(var);
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), c)
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|a| f.neg(a)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// `f = g·h + r` with `deg r < deg g`.
pub fn div_rem<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
    f.div_rem(g)
}

/// `(d, a, b)` with `d` monic, `d = a·f + b·g`.
pub fn xgcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    f.xgcd(g)
}

pub fn derivative<F: Field>(f: &Poly<F>) -> Poly<F> {
    f.derivative()
}

pub fn is_separable<F: Field>(f: &Poly<F>) -> Result<bool> {
    f.is_separable()
}

pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<F::Elem> {
    f.resultant(g)
}

impl QPoly {
    pub fn from_rats(coeffs: Vec<Rat>) -> QPoly {
        Poly::new(Rationals, coeffs)
    }

    /// Integer-coefficient polynomial over ℚ from `c₀, c₁, …`.
    pub fn from_i64(coeffs: &[i64]) -> QPoly {
        Poly::from_ints(Rationals, coeffs)
    }

}

impl<F: Field> Poly<F> {
    /// Square-free decomposition in characteristic zero (Yun): monic `a_i`
    /// with `monic(self) = ∏ a_i^i`. Entry `k` holds `a_{k+1}`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        debug_assert_eq!(self.field.characteristic(), 0);
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a).unwrap();
            if b.deg() == 0 {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
        }
        out
    }

    /// Monic product of the distinct irreducible factors (characteristic zero).
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        f.exact_div(&f.gcd(&f.derivative())).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn div_rem_examples() {
        let f = q(&[1, 0, -2, 1]);
        let g = q(&[-3, -1, 1]);
        let (h, r) = f.div_rem(&g).unwrap();
        assert_eq!(h, q(&[-1, 1]));
        assert_eq!(r, q(&[-2, 2]));
        assert_eq!(&(&g * &h) + &r, f);
        let (h, r) = f.div_rem(&f).unwrap();
        assert!(h.is_one() && r.is_zero());
        let (h, r) = g.div_rem(&f).unwrap();
        assert!(h.is_zero());
        assert_eq!(r, g);
        assert_eq!(f.div_rem(&q(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(q(&[]).degree(), None);
        assert!(q(&[]).degree() < q(&[5]).degree());
        assert_eq!(q(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn xgcd_examples() {
        let f = q(&[2, 0, 4]);
        let (d, a, b) = f.xgcd(&q(&[])).unwrap();
        assert_eq!(d, f.monic());
        assert_eq!(a, Poly::constant(Rationals, rat(1, 4)));
        assert!(b.is_zero());
        let (d, _, _) = q(&[-2, 0, 1]).xgcd(&q(&[-3, 0, 1])).unwrap();
        assert!(d.is_one());
        assert!(q(&[]).xgcd(&q(&[])).is_err());
    }

    #[test]
    fn xgcd_over_f5() {
        // By hand: x^4+1 = (x^2+2)(x^2-2) and x^4+x^3+3x^2+2x+2 = (x^2+2)(x^2+x+1)
        // over F_5, and x^2-2, x^2+x+1 share no root there.
        let f5 = PrimeField::new(5).unwrap();
        let f = Poly::from_ints(f5, &[1, 0, 0, 0, 1]);
        let g = Poly::from_ints(f5, &[2, 2, 3, 1, 1]);
        let (d, a, b) = f.xgcd(&g).unwrap();
        assert_eq!(d, Poly::from_ints(f5, &[2, 0, 1]));
        assert_eq!(&(&a * &f) + &(&b * &g), d);
        assert!(d.divides(&f).unwrap() && d.divides(&g).unwrap());
    }

    #[test]
    fn derivative_examples() {
        assert!(q(&[7]).derivative().is_zero());
        let f3 = PrimeField::new(3).unwrap();
        // x^9 - x over F_3
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        let f = Poly::from_ints(f3, &c);
        assert_eq!(f.derivative(), Poly::from_ints(f3, &[-1]));
        let mut c = vec![0i64; 8];
        c[7] = 1;
        c[0] = -1;
        assert_eq!(q(&c).derivative(), QPoly::monomial(Rationals, rat_int(7), 6));
    }

    #[test]
    fn separability() {
        assert!(q(&[-3, 0, 1]).is_separable().unwrap());
        let f3 = PrimeField::new(3).unwrap();
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        assert!(Poly::from_ints(f3, &c).is_separable().unwrap());
        // x^6 - 1 over F_3: 3 | 6
        assert!(!Poly::from_ints(f3, &[-1, 0, 0, 0, 0, 0, 1]).is_separable().unwrap());
        assert!(q(&[]).is_separable().is_err());
    }

    #[test]
    fn resultant_examples() {
        let a = rat(3, 2);
        let b = rat(-5, 7);
        let fa = Poly::linear_root(Rationals, &a);
        let fb = Poly::linear_root(Rationals, &b);
        assert_eq!(fa.resultant(&fb).unwrap(), &a - &b);
        // ∏ (±√2 ∓ √3) = ((√2-√3)(√2+√3))^2 = (2-3)^2 = 1
        assert_eq!(q(&[-2, 0, 1]).resultant(&q(&[-3, 0, 1])).unwrap(), rat_int(1));
        // res(f, g) = ∏_{f(a)=0} g(a) for monic f with rational roots
        let f = &q(&[-1, 1]) * &q(&[-2, 1]);
        let g = q(&[1, 1, 1]);
        assert_eq!(f.resultant(&g).unwrap(), g.eval(&rat_int(1)) * g.eval(&rat_int(2)));
    }

    #[test]
    fn printing() {
        assert_eq!(q(&[5, -80, 0, 0, 0, 1]).to_string(), "x^5 - 80*x + 5");
        assert_eq!(q(&[]).to_string(), "0");
        assert_eq!(q(&[0, -1]).to_string(), "-x");
        let h = QPoly::from_rats(vec![rat(-1, 2), rat_int(0), rat(3, 2)]);
        assert_eq!(h.to_string(), "3/2*x^2 - 1/2");
        assert_eq!(q(&[1, 0, -1, 0, 1]).to_string_var("a"), "a^4 - a^2 + 1");
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)^3 (x^2+1)
        let f = &(&q(&[-1, 1]).pow(2) * &q(&[2, 1]).pow(3)) * &q(&[1, 0, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![q(&[1, 0, 1]), q(&[-1, 1]), q(&[2, 1])]);
        assert_eq!(f.squarefree_part(), &(&q(&[1, 0, 1]) * &q(&[-1, 1])) * &q(&[2, 1]));
    }

    #[test]
    fn pow_mod_matches_naive() {
        let f5 = PrimeField::new(5).unwrap();
        let m = Poly::from_ints(f5, &[2, 0, 1, 1]);
        let x = Poly::x(f5);
        let fast = x.pow_mod(&Int::from(37), &m).unwrap();
        let slow = x.pow(37).rem(&m).unwrap();
        assert_eq!(fast, slow);
    }
}
