//! Finite fields `F_{p^n} = F_p[x]/(g)`.

use crate::error::{Error, Result};
use crate::exactnum::{divisors, factor_u64, Int};
use crate::factor::is_irreducible;
use crate::field::PrimeField;
use crate::poly::FpPoly;

/// Largest field size accepted by [`finite_field`].
pub const MAX_FF_SIZE: u64 = 1 << 20;

/// Elements are polynomials of degree below `n`.
pub type FfElement = FpPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteField {
    base: PrimeField,
    n: usize,
    modulus: FpPoly,
}

/// The fixed set of `σ^d`, where `σ` is the Frobenius map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSubfield {
    pub d: usize,
    /// Number of elements fixed by `σ^d`.
    pub size: u64,
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Number of elements, `p^n`.
    pub fn size(&self) -> u64 {
        self.characteristic().pow(self.n as u32)
    }

    /// Element number `k` in base-`p` digit order (constant term first).
    pub fn element(&self, mut k: u64) -> FfElement {
        let p = self.characteristic();
        let mut c = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            c.push(k % p);
            k /= p;
        }
        FpPoly::new(self.base, c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElement> + '_ {
        (0..self.size()).map(|k| self.element(k))
    }

    pub fn mul(&self, a: &FfElement, b: &FfElement) -> FfElement {
        (a * b).rem(&self.modulus).expect("nonzero modulus")
    }

    pub fn pow(&self, a: &FfElement, e: u64) -> FfElement {
        a.pow_mod(&Int::from(e), &self.modulus).expect("nonzero modulus")
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: &FfElement) -> FfElement {
        self.pow(a, self.characteristic())
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FfElement) -> u64 {
        let q1 = self.size() - 1;
        let mut ord = q1;
        for (r, _) in factor_u64(q1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r).is_one() {
                ord /= r;
            }
        }
        ord
    }

    /// First element in enumeration order that generates the multiplicative
    /// group.
    pub fn generator(&self) -> FfElement {
        let q1 = self.size() - 1;
        self.elements()
            .skip(1)
            .find(|a| self.element_order(a) == q1)
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// `F_{p^n}` with the least monic irreducible modulus of degree `n`, where
/// monic polynomials are enumerated with the constant term as the least
/// significant base-`p` digit.
pub fn finite_field(p: u64, n: usize) -> Result<FiniteField> {
    let base = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let size = (p as u128).checked_pow(n as u32).filter(|&s| s <= MAX_FF_SIZE as u128);
    if size.is_none() {
        return Err(Error::cap("finite field size", MAX_FF_SIZE as usize, format!("{p}^{n}")));
    }
    for k in 0..p.pow(n as u32) {
        let mut c = Vec::with_capacity(n + 1);
        let mut t = k;
        for _ in 0..n {
            c.push(t % p);
            t /= p;
        }
        c.push(1);
        let g = FpPoly::new(base, c);
        if is_irreducible(&g)? {
            let field = FiniteField { base, n, modulus: g };
            debug_assert_eq!(field.elements().count() as u64, field.size());
            return Ok(field);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {n} over F_{p}")))
}

/// Order of the Frobenius automorphism, found by iterating it on a generator.
pub fn frobenius_order(f: &FiniteField) -> usize {
    let g = f.generator();
    let mut a = f.frobenius(&g);
    let mut k = 1;
    while a != g {
        a = f.frobenius(&a);
        k += 1;
    }
    k
}

/// Subfields of `F_{p^n}` as fixed sets of Frobenius powers `σ^d`, `d | n`.
pub fn ff_subfields(p: u64, n: usize) -> Result<Vec<FrobeniusSubfield>> {
    let f = finite_field(p, n)?;
    let q = f.size();
    let mut out = Vec::new();
    for d in 1..=n {
        let pd = p.pow(d as u32);
        let size = if q <= 1 << 12 {
            f.elements().filter(|a| &f.pow(a, pd) == a).count() as u64
        } else {
            // with a generator g, g^k is fixed iff (p^d - 1)k ≡ 0 mod q - 1
            let g = f.generator();
            let gp = f.pow(&g, pd);
            let step = (q - 1) / crate::exactnum::gcd_u64(pd - 1, q - 1);
            debug_assert_eq!(f.pow(&gp, step), f.pow(&g, step));
            1 + (q - 1) / step
        };
        // σ^d fixes a subfield of size p^e for e = gcd(d, n); keep exactly the
        // d for which that subfield is new
        if size == pd {
            out.push(FrobeniusSubfield { d, size });
        }
    }
    debug_assert_eq!(out.iter().map(|s| s.d as u64).collect::<Vec<_>>(), divisors(n as u64));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_elements() {
        let f = finite_field(2, 2).unwrap();
        assert_eq!(f.size(), 4);
        assert_eq!(f.elements().count(), 4);
        assert_eq!(f.modulus(), &FpPoly::from_ints(PrimeField::new(2).unwrap(), &[1, 1, 1]));
        assert_eq!(frobenius_order(&f), 2);
    }

    #[test]
    fn prime_field_case() {
        let f = finite_field(7, 1).unwrap();
        assert_eq!(f.size(), 7);
        assert_eq!(frobenius_order(&f), 1);
        assert_eq!(ff_subfields(7, 1).unwrap(), vec![FrobeniusSubfield { d: 1, size: 7 }]);
    }

    #[test]
    fn nine_elements_cyclic_group() {
        let f = finite_field(3, 2).unwrap();
        let g = f.generator();
        let mut seen = std::collections::HashSet::new();
        let mut a = g.clone();
        for _ in 0..8 {
            seen.insert(a.coeffs().to_vec());
            a = f.mul(&a, &g);
        }
        assert_eq!(seen.len(), 8);
        assert!(a == g);
    }

    #[test]
    fn sixteen_elements() {
        let f = finite_field(2, 4).unwrap();
        assert_eq!(frobenius_order(&f), 4);
        let subs = ff_subfields(2, 4).unwrap();
        assert_eq!(subs.iter().map(|s| s.d).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(subs[1].size, 4);
        // every element satisfies a^16 = a
        for a in f.elements() {
            assert_eq!(f.pow(&a, 16), a);
        }
        let six = ff_subfields(2, 6).unwrap();
        assert_eq!(six.iter().map(|s| s.d).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn bounds() {
        assert!(finite_field(4, 2).is_err());
        assert!(finite_field(2, 21).is_err());
        assert!(finite_field(2, 20).is_ok());
    }
}
