//! Irreducibility tests and factorization over `F_p`, `ℚ` and number fields.

mod modp;
mod trager;
mod zassenhaus;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factor_int, is_prime, Int, Rat};
use crate::field::{Field, PrimeField, Rationals};
use crate::numfield::NumberField;
use crate::poly::{FpPoly, Poly, QPoly};

pub use modp::{berlekamp, berlekamp_basis, factor_mod_p, squarefree_factorization};
pub use trager::{factor_over_numberfield, factor_over_numberfield_capped, DEFAULT_TRAGER_CAP};
pub use zassenhaus::MAX_MODULAR_FACTORS;

// Integers above this many bits are not factored by trial division.
const SMALL_BITS: u64 = 40;

/// Largest degree `factor_over_q` accepts by default.
pub const DEFAULT_FACTOR_CAP: usize = 30;

/// `unit · ∏ fᵢ^mᵢ` with monic, pairwise distinct irreducible `fᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub field: F,
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    /// Puts factors in canonical order: degree, then coefficients.
    pub fn sort(&mut self) {
        self.factors
            .sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    }

    /// Multiplies everything back together.
    pub fn expand(&self) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(self.field.clone(), self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Display with a custom variable name.
    pub fn to_string_var(&self, var: &str) -> String {
        let mut parts = Vec::new();
        if !self.field.is_one(&self.unit) || self.factors.is_empty() {
            let text = Poly::constant(self.field.clone(), self.unit.clone()).to_string_var(var);
            parts.push(if text.contains(' ') { format!("({text})") } else { text });
        }
        for (g, m) in &self.factors {
            let s = format!("({})", g.to_string_var(var));
            parts.push(if *m > 1 { format!("{s}^{m}") } else { s });
        }
        parts.join("*")
    }
}

impl<F: Field> fmt::Display for Factorization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

/// Outcome of the cheap degree ≤ 3 root test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowDegree {
    Irreducible,
    Reducible,
    Inconclusive,
}

/// Clears denominators: returns the primitive integer polynomial with positive
/// leading coefficient and the rational `c` with `f = c · prim`.
pub fn integer_primitive(f: &QPoly) -> (Rat, Vec<Int>) {
    let den = f
        .coeffs()
        .iter()
        .fold(Int::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<Int> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let prim = zassenhaus::primitive_part(&ints);
    let c = f.leading().cloned().unwrap_or_default() / Rat::from_integer(prim.last().cloned().unwrap_or_else(Int::one));
    (c, prim)
}

fn qpoly_from_ints(c: &[Int]) -> QPoly {
    QPoly::from_rats(c.iter().map(|x| Rat::from_integer(x.clone())).collect())
}

/// Eisenstein's criterion at `p` for a polynomial with integer coefficients.
pub fn eisenstein(f: &QPoly, p: &Int) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let n = f.degree().filter(|&n| n >= 1).ok_or_else(|| Error::invalid("Eisenstein needs degree at least 1"))?;
    if f.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::invalid("Eisenstein needs integer coefficients"));
    }
    let a: Vec<Int> = f.coeffs().iter().map(|c| c.to_integer()).collect();
    let divides = |x: &Int| (x % p).is_zero();
    Ok(!divides(&a[n]) && a[..n].iter().all(divides) && !(&a[0] % (p * p)).is_zero())
}

/// Rational roots of a polynomial over ℚ, by the rational root theorem.
pub fn rational_roots(f: &QPoly) -> Vec<Rat> {
    let (_, prim) = integer_primitive(f);
    let mut roots = Vec::new();
    if prim.len() <= 1 {
        return roots;
    }
    if prim[0].is_zero() {
        roots.push(Rat::zero());
    }
    // strip the power of x so the constant term is nonzero
    let start = prim.iter().position(|c| !c.is_zero()).unwrap();
    let g = &prim[start..];
    if g[0].bits() > SMALL_BITS || g.last().unwrap().bits() > SMALL_BITS {
        // too large for divisor enumeration; take the linear factors instead
        let sq = qpoly_from_ints(g).squarefree_part();
        if let Ok(fs) = factor_squarefree_q(&sq) {
            roots.extend(fs.iter().filter(|h| h.deg() == 1).map(|h| -h.coeff(0)));
        }
    } else if g.len() > 1 {
        let nums = divisors_of(&g[0]);
        let dens = divisors_of(g.last().unwrap());
        let gq = qpoly_from_ints(g);
        for a in &nums {
            for b in &dens {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for r in [Rat::new(a.clone(), b.clone()), Rat::new(-a.clone(), b.clone())] {
                    if !roots.contains(&r) && gq.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors_of(n: &Int) -> Vec<Int> {
    let mut ds = vec![Int::one()];
    for (p, e) in factor_int(&n.abs()).unwrap_or_default() {
        let mut next = Vec::new();
        for d in &ds {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    ds
}

/// Fields whose polynomials can be factored completely.
pub trait FactorField: Field {
    fn factor(&self, f: &Poly<Self>) -> Result<Factorization<Self>>;

    /// Root-search verdict for degree ≤ 3.
    fn low_degree_test(&self, f: &Poly<Self>) -> Result<LowDegree>;

    /// Cheap sufficient criteria tried before a full factorization.
    fn quick_irreducible(&self, _f: &Poly<Self>) -> Result<bool> {
        Ok(false)
    }
}

impl FactorField for Rationals {
    fn factor(&self, f: &QPoly) -> Result<Factorization<Rationals>> {
        factor_over_q(f)
    }

    fn low_degree_test(&self, f: &QPoly) -> Result<LowDegree> {
        low_degree_q(f)
    }

    fn quick_irreducible(&self, f: &QPoly) -> Result<bool> {
        let (_, prim) = integer_primitive(f);
        if prim[0].is_zero() || prim[0].bits() > SMALL_BITS {
            return Ok(false);
        }
        let g = qpoly_from_ints(&prim);
        for (p, _) in factor_int(&prim[0].abs())? {
            if eisenstein(&g, &p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl FactorField for PrimeField {
    fn factor(&self, f: &FpPoly) -> Result<Factorization<PrimeField>> {
        factor_mod_p(f)
    }

    fn low_degree_test(&self, f: &FpPoly) -> Result<LowDegree> {
        let n = degree_at_least_one(f)?;
        if n > 3 {
            return Ok(LowDegree::Inconclusive);
        }
        if n == 1 {
            return Ok(LowDegree::Irreducible);
        }
        // roots in F_p are the common roots with x^p - x
        let xp = FpPoly::x(*self).pow_mod(&Int::from(self.modulus()), f)?;
        let g = f.gcd(&(&xp - &FpPoly::x(*self)));
        Ok(if g.is_one() { LowDegree::Irreducible } else { LowDegree::Reducible })
    }
}

impl FactorField for NumberField {
    fn factor(&self, f: &Poly<NumberField>) -> Result<Factorization<NumberField>> {
        trager::factor_full(self, f)
    }

    fn low_degree_test(&self, _f: &Poly<NumberField>) -> Result<LowDegree> {
        Ok(LowDegree::Inconclusive)
    }
}

fn degree_at_least_one<F: Field>(f: &Poly<F>) -> Result<usize> {
    f.degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::invalid("polynomial must have degree at least 1"))
}

fn low_degree_q(f: &QPoly) -> Result<LowDegree> {
    let n = degree_at_least_one(f)?;
    if n > 3 {
        return Ok(LowDegree::Inconclusive);
    }
    if n == 1 {
        return Ok(LowDegree::Irreducible);
    }
    Ok(if rational_roots(f).is_empty() { LowDegree::Irreducible } else { LowDegree::Reducible })
}

/// Root-search irreducibility verdict for polynomials of degree at most 3.
pub fn low_degree_test<F: FactorField>(f: &Poly<F>) -> Result<LowDegree> {
    f.field().low_degree_test(f)
}

/// Exact irreducibility over the coefficient field.
pub fn is_irreducible<F: FactorField>(f: &Poly<F>) -> Result<bool> {
    let fld = f.field();
    match fld.low_degree_test(f)? {
        LowDegree::Irreducible => return Ok(true),
        LowDegree::Reducible => return Ok(false),
        LowDegree::Inconclusive => {}
    }
    if fld.quick_irreducible(f)? {
        return Ok(true);
    }
    Ok(fld.factor(f)?.is_irreducible())
}

/// Complete factorization over ℚ, with the default degree cap.
pub fn factor_over_q(f: &QPoly) -> Result<Factorization<Rationals>> {
    factor_over_q_capped(f, DEFAULT_FACTOR_CAP)
}

pub fn factor_over_q_capped(f: &QPoly, cap: usize) -> Result<Factorization<Rationals>> {
    let n = f.degree().ok_or_else(|| Error::invalid("factorization of the zero polynomial"))?;
    if n > cap {
        return Err(Error::cap("degree for factorization over Q", cap, f.to_string()));
    }
    let unit = f.leading().unwrap().clone();
    let mut out = Factorization { field: Rationals, unit, factors: Vec::new() };
    if n == 0 {
        return Ok(out);
    }
    let monic = f.monic();
    let parts = monic.squarefree_decomposition();
    for (i, part) in parts.iter().enumerate() {
        if part.is_one() {
            continue;
        }
        for g in factor_squarefree_q(part)? {
            out.factors.push((g, i + 1));
        }
    }
    out.sort();
    Ok(out)
}

/// Monic irreducible factors of a square-free polynomial over ℚ.
pub(crate) fn factor_squarefree_q(f: &QPoly) -> Result<Vec<QPoly>> {
    let (_, prim) = integer_primitive(f);
    // powers of x are handled separately so Zassenhaus sees a nonzero constant
    let zeros = prim.iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(QPoly::x(Rationals));
    }
    let rest = &prim[zeros..];
    if rest.len() > 1 {
        for g in zassenhaus::factor_squarefree(rest)? {
            out.push(qpoly_from_ints(&g).monic());
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}
