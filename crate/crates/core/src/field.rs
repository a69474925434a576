//! Exact scalar fields that polynomials can be built over.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime_u64, Int, Rat};

/// How a coefficient should be printed inside a polynomial.
pub struct CoeffText {
    pub negative: bool,
    /// Text of the absolute value (or the whole value if it has no sign).
    pub body: String,
    pub is_one: bool,
    /// Whether `body` must be parenthesized when followed by `*x`.
    pub compound: bool,
}

/// A field with exact, canonical element representations.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &Int) -> Self::Elem;
    /// `None` if the denominator vanishes in this field.
    fn from_rat(&self, r: &Rat) -> Option<Self::Elem>;
    /// 0 or a prime.
    fn characteristic(&self) -> u64;
    /// Total order used for canonical sorting of factors.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn coeff_text(&self, a: &Self::Elem) -> CoeffText;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, n: &Int) -> Rat {
        Rat::from_integer(n.clone())
    }
    fn from_rat(&self, r: &Rat) -> Option<Rat> {
        Some(r.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn cmp_elem(&self, a: &Rat, b: &Rat) -> Ordering {
        a.cmp(b)
    }
    fn coeff_text(&self, a: &Rat) -> CoeffText {
        let abs = a.abs();
        CoeffText {
            negative: a.is_negative(),
            body: abs.to_string(),
            is_one: abs.is_one(),
            compound: false,
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rat) -> bool {
        a.is_one()
    }
}

/// The prime field `F_p`, elements stored as `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Largest modulus accepted; products are formed in `u128`.
    pub const MAX_MODULUS: u64 = 1 << 62;

    pub fn new(p: u64) -> Result<PrimeField> {
        if !is_prime_u64(p) || p > Self::MAX_MODULUS {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_int(&self, n: &Int) -> u64 {
        n.mod_floor(&Int::from(self.p)).to_u64().unwrap()
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn from_int(&self, n: &Int) -> u64 {
        self.reduce_int(n)
    }
    fn from_rat(&self, r: &Rat) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        let inv = self.inv(&d)?;
        Some(self.mul(&self.reduce_int(r.numer()), &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn cmp_elem(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
    fn coeff_text(&self, a: &u64) -> CoeffText {
        CoeffText {
            negative: false,
            body: a.to_string(),
            is_one: *a == 1,
            compound: false,
        }
    }
}

/// Field selector used by the parser and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarField {
    Rationals,
    PrimeField(u64),
}

impl ScalarField {
    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::PrimeField(p) => *p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.from_rat(&rat(1, 2)), Some(4));
        assert_eq!(f.from_rat(&rat(1, 7)), None);
        assert_eq!(f.from_int(&Int::from(-1)), 6);
        assert!(PrimeField::new(8).is_err());
    }

    #[test]
    fn rationals_are_a_field() {
        let q = Rationals;
        let vals: Vec<Rat> = (-3..=3)
            .flat_map(|n| (1..=3).map(move |d| rat(n, d)))
            .collect();
        for a in &vals {
            if !a.is_zero() {
                assert!(q.is_one(&q.mul(a, &q.inv(a).unwrap())));
            }
            for b in &vals {
                for c in &vals {
                    assert_eq!(q.add(&q.add(a, b), c), q.add(a, &q.add(b, c)));
                    assert_eq!(q.mul(a, &q.add(b, c)), q.add(&q.mul(a, b), &q.mul(a, c)));
                }
            }
        }
    }
}
