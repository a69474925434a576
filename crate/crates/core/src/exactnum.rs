//! Exact integers, rationals and residues, plus the handful of elementary
//! number-theoretic routines the rest of the crate leans on.
//!
//! Integers and rationals are [`num_bigint::BigInt`] and
//! [`num_rational::BigRational`]; both are unbounded and normalize eagerly, so
//! two equal rationals are always represented identically.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Normalized rational with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// An element of ℤ/mℤ, `0 <= value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Int,
    modulus: Int,
}

impl Residue {
    pub fn new(value: &Int, modulus: &Int) -> Result<Residue> {
        if *modulus < int(2) {
            return Err(Error::invalid(format!("modulus {modulus} must be at least 2")));
        }
        Ok(Residue {
            value: value.mod_floor(modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn value(&self) -> &Int {
        &self.value
    }

    pub fn modulus(&self) -> &Int {
        &self.modulus
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::invalid("residues with different moduli"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Residue::new(&(&self.value + &other.value), &self.modulus)
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Residue::new(&(&self.value * &other.value), &self.modulus)
    }

    /// Multiplicative inverse, if `gcd(value, modulus) = 1`.
    pub fn inverse(&self) -> Option<Residue> {
        let e = self.value.extended_gcd(&self.modulus);
        if !e.gcd.is_one() {
            return None;
        }
        Residue::new(&e.x, &self.modulus).ok()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Euler's totient: the number of `1 <= m <= n` coprime to `n`.
pub fn euler_phi(n: &Int) -> Result<Int> {
    if !n.is_positive() {
        return Err(Error::invalid("euler_phi needs n >= 1"));
    }
    let mut phi = n.clone();
    for (p, _) in factor_int(n)? {
        phi = phi / &p * (&p - 1);
    }
    Ok(phi)
}

/// Chinese remaindering of two congruences with coprime moduli.
pub fn crt(r1: &Int, m1: &Int, r2: &Int, m2: &Int) -> Result<Residue> {
    let e = m1.extended_gcd(m2);
    if !e.gcd.is_one() {
        return Err(Error::NotCoprime(m1.to_string(), m2.to_string()));
    }
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let k = ((r2 - r1) * &e.x).mod_floor(m2);
    Residue::new(&(r1 + m1 * k), &(m1 * m2))
}

/// `a^e mod m` by square-and-multiply.
pub fn pow_mod(a: &Int, e: &Int, m: &Int) -> Result<Residue> {
    if e.is_negative() {
        return Err(Error::invalid("negative exponent"));
    }
    if *m < int(2) {
        return Err(Error::invalid(format!("modulus {m} must be at least 2")));
    }
    let mut base = a.mod_floor(m);
    let mut exp = e.clone();
    let mut acc = Int::one();
    let two = int(2);
    while exp.is_positive() {
        if exp.is_odd() {
            acc = (acc * &base) % m;
        }
        base = (&base * &base) % m;
        exp /= &two;
    }
    Residue::new(&acc, m)
}

/// Prime factorization by trial division, primes strictly increasing.
pub fn factor_int(n: &Int) -> Result<Vec<(Int, u32)>> {
    if !n.is_positive() {
        return Err(Error::invalid("factor_int needs n >= 1"));
    }
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d = int(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == int(2) { 1 } else { 2 };
    }
    if m > Int::one() {
        out.push((m, 1));
    }
    Ok(out)
}

pub fn is_prime(n: &Int) -> bool {
    if *n < int(2) {
        return false;
    }
    let mut d = int(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// True iff `p` is prime and of the form `2^(2^k) + 1`.
pub fn is_fermat_prime(p: &Int) -> bool {
    if !is_prime(p) {
        return false;
    }
    let m: Int = p - 1;
    if m.is_zero() || !(&m & (&m - 1u32)).is_zero() {
        return false;
    }
    (m.bits() - 1).is_power_of_two()
}

// Small-integer helpers used by the group and field code.

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn phi_u64(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
