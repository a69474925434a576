//! Algebraic number fields `ℚ(θ) ≅ ℚ[x]/(m)`, splitting fields and finite
//! fields.
//!
//! A [`NumberField`] is always presented by one primitive element `θ` with a
//! monic irreducible minimal polynomial `m` of degree `d`; elements are
//! coordinate vectors in the basis `1, θ, …, θ^{d-1}`. The rationals are the
//! degree-one field with `m = x`.

pub mod approx;
mod finite;
pub mod linalg;
mod splitting;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::factor::{factor_over_q_capped, is_irreducible};
use crate::field::{CoeffText, Field, Rationals};
use crate::poly::{Poly, QPoly};
use linalg::{solve_columns, Dependency, Matrix};

pub use finite::{ff_subfields, finite_field, frobenius_order, FfElement, MAX_FF_SIZE, FiniteField, FrobeniusSubfield};
pub use splitting::{splitting_field, splitting_field_capped, SplittingField};

/// Largest `[K:ℚ]` built by default.
pub const DEFAULT_NF_CAP: usize = 64;

/// Variable used when printing elements and minimal polynomials.
pub const FIELD_VAR: &str = "a";

struct Inner {
    minpoly: QPoly,
    /// Coefficients of `m` when they are all integers.
    int_minpoly: Option<Vec<Int>>,
    provenance: Vec<String>,
}

/// `ℚ(θ)` given by the minimal polynomial of `θ`. Cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<Inner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.describe())
    }
}

impl NumberField {
    /// The field `ℚ[x]/(m)`; `m` must be irreducible over ℚ.
    pub fn new(m: &QPoly) -> Result<NumberField> {
        let d = m.degree().filter(|&d| d >= 1).ok_or_else(|| Error::invalid("minimal polynomial must have degree at least 1"))?;
        if d > DEFAULT_NF_CAP {
            return Err(Error::cap("number field degree", DEFAULT_NF_CAP, m.to_string()));
        }
        let fac = factor_over_q_capped(m, DEFAULT_NF_CAP)?;
        if !fac.is_irreducible() {
            return Err(Error::Reducible(m.to_string()));
        }
        let m = m.monic();
        let step = format!("adjoin a root of {}", m);
        Ok(NumberField::from_minpoly_unchecked(m, vec![step]))
    }

    /// `ℚ` itself, presented by `m = x`.
    pub fn rationals() -> NumberField {
        NumberField::from_minpoly_unchecked(QPoly::x(Rationals), Vec::new())
    }

    pub(crate) fn from_minpoly_unchecked(minpoly: QPoly, provenance: Vec<String>) -> NumberField {
        debug_assert!(minpoly.is_monic());
        let int_minpoly = minpoly
            .coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect();
        NumberField(Arc::new(Inner { minpoly, int_minpoly, provenance }))
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.0.minpoly
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.deg()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// Adjunction steps that produced this presentation.
    pub fn provenance(&self) -> &[String] {
        &self.0.provenance
    }

    /// The primitive element `θ`.
    pub fn theta(&self) -> NfElement {
        self.from_poly(&QPoly::x(Rationals))
    }

    /// Element with the given coordinates, reduced modulo the minimal
    /// polynomial if there are more than `d`.
    pub fn elem(&self, coeffs: Vec<Rat>) -> NfElement {
        self.from_poly(&QPoly::from_rats(coeffs))
    }

    /// The class of `p(θ)`.
    pub fn from_poly(&self, p: &QPoly) -> NfElement {
        let d = self.degree();
        let r = if p.degree().is_some_and(|k| k >= d) {
            p.rem(self.minpoly()).expect("nonzero modulus")
        } else {
            p.clone()
        };
        let mut coeffs = r.into_coeffs();
        coeffs.resize(d, Rat::zero());
        NfElement { field: self.clone(), coeffs }
    }

    pub fn from_rat(&self, r: Rat) -> NfElement {
        let mut coeffs = vec![Rat::zero(); self.degree()];
        coeffs[0] = r;
        NfElement { field: self.clone(), coeffs }
    }

    pub fn from_i64(&self, n: i64) -> NfElement {
        self.from_rat(Rat::from_integer(n.into()))
    }

    /// A rational polynomial viewed over this field.
    pub fn lift_poly(&self, p: &QPoly) -> Poly<NumberField> {
        p.map(self, |c| self.from_rat(c.clone()))
    }

    /// Text such as `Q(a)/(a^2 - 2)`, or `Q`.
    pub fn describe(&self) -> String {
        if self.is_rationals() {
            "Q".into()
        } else {
            format!("Q({v})/({})", self.minpoly().to_string_var(FIELD_VAR), v = FIELD_VAR)
        }
    }

    /// Matrix of multiplication by `g` in the power basis (column `j` holds
    /// `g·θ^j`).
    pub fn mult_matrix(&self, g: &NfElement) -> Matrix {
        let d = self.degree();
        let cols: Vec<NfElement> = (0..d)
            .scan(self.from_i64(1), |p, _| {
                let col = g * &*p;
                *p = &*p * &self.theta();
                Some(col)
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j].coeffs[i].clone()).collect()).collect()
    }

    /// Characteristic polynomial of multiplication by `g` (Faddeev–LeVerrier).
    pub fn charpoly(&self, g: &NfElement) -> QPoly {
        let a = self.mult_matrix(g);
        let n = a.len();
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let mut m: Matrix = vec![vec![Rat::zero(); n]; n];
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I
            let mut next = mat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = mat_mul(&a, &m);
            let tr: Rat = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / Rat::from_integer(Int::from(k));
        }
        QPoly::from_rats(c)
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// An element of a [`NumberField`]: exactly `d` rational coordinates.
#[derive(Clone)]
pub struct NfElement {
    field: NumberField,
    coeffs: Vec<Rat>,
}

impl PartialEq for NfElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElement({})", self)
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_poly().to_string_var(FIELD_VAR))
    }
}

impl NfElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Coordinates in the basis `1, θ, …, θ^{d-1}`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Representative polynomial of degree below `d`.
    pub fn as_poly(&self) -> QPoly {
        QPoly::from_rats(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value if the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn inverse(&self) -> Result<NfElement> {
        nf_inverse(self)
    }

    pub fn pow(&self, mut e: u64) -> NfElement {
        let mut base = self.clone();
        let mut acc = self.field.from_i64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> NfElement {
        NfElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// `p(θ')` where this element is `p(θ)`: the image under the map sending
    /// `θ` to `image`, which may live in another field.
    pub fn substitute(&self, image: &NfElement) -> NfElement {
        let target = &image.field;
        self.coeffs
            .iter()
            .rev()
            .fold(target.from_i64(0), |acc, c| &(&acc * image) + &target.from_rat(c.clone()))
    }

    pub fn minpoly(&self) -> QPoly {
        minpoly_of(self)
    }
}

impl<'a> Add<&'a NfElement> for &'a NfElement {
    type Output = NfElement;
    fn add(self, o: &NfElement) -> NfElement {
        debug_assert!(self.field == o.field);
        NfElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a NfElement> for &'a NfElement {
    type Output = NfElement;
    fn sub(self, o: &NfElement) -> NfElement {
        debug_assert!(self.field == o.field);
        NfElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &NfElement {
    type Output = NfElement;
    fn neg(self) -> NfElement {
        NfElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for NfElement {
    type Output = NfElement;
    fn neg(self) -> NfElement {
        -&self
    }
}

impl<'a> Mul<&'a NfElement> for &'a NfElement {
    type Output = NfElement;
    fn mul(self, o: &NfElement) -> NfElement {
        debug_assert!(self.field == o.field);
        // integer convolution over a common denominator
        let d = self.coeffs.len();
        let (na, da) = clear_denominators(&self.coeffs);
        let (nb, db) = clear_denominators(&o.coeffs);
        let mut prod = vec![Int::zero(); 2 * d - 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let den = da * db;
        if let Some(m) = &self.field.0.int_minpoly {
            for k in (d..prod.len()).rev() {
                let c = std::mem::take(&mut prod[k]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !m[j].is_zero() {
                        prod[k - d + j] -= &c * &m[j];
                    }
                }
            }
            prod.truncate(d);
            let coeffs = prod.into_iter().map(|n| Rat::new(n, den.clone())).collect();
            return NfElement { field: self.field.clone(), coeffs };
        }
        let mut prod: Vec<Rat> = prod.into_iter().map(|n| Rat::new(n, den.clone())).collect();
        let m = self.field.minpoly().coeffs();
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !m[j].is_zero() {
                    prod[k - d + j] -= &c * &m[j];
                }
            }
        }
        prod.truncate(d);
        NfElement { field: self.field.clone(), coeffs: prod }
    }
}

/// Integer numerators over the least common denominator.
fn clear_denominators(c: &[Rat]) -> (Vec<Int>, Int) {
    let den = c.iter().fold(Int::one(), |l, x| {
        if x.denom().is_one() {
            l
        } else {
            num_integer::Integer::lcm(&l, x.denom())
        }
    });
    let nums = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (nums, den)
}

impl Field for NumberField {
    type Elem = NfElement;

    fn zero(&self) -> NfElement {
        self.from_i64(0)
    }
    fn one(&self) -> NfElement {
        self.from_i64(1)
    }
    fn add(&self, a: &NfElement, b: &NfElement) -> NfElement {
        a + b
    }
    fn sub(&self, a: &NfElement, b: &NfElement) -> NfElement {
        a - b
    }
    fn mul(&self, a: &NfElement, b: &NfElement) -> NfElement {
        a * b
    }
    fn neg(&self, a: &NfElement) -> NfElement {
        -a
    }
    fn inv(&self, a: &NfElement) -> Option<NfElement> {
        nf_inverse(a).ok()
    }
    fn from_int(&self, n: &Int) -> NfElement {
        self.from_rat(Rat::from_integer(n.clone()))
    }
    fn from_rat(&self, r: &Rat) -> Option<NfElement> {
        Some(NumberField::from_rat(self, r.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn cmp_elem(&self, a: &NfElement, b: &NfElement) -> Ordering {
        a.coeffs.cmp(&b.coeffs)
    }
    fn coeff_text(&self, a: &NfElement) -> CoeffText {
        match a.as_rational() {
            Some(r) => Rationals.coeff_text(&r),
            None => {
                let body = a.to_string();
                let single = !body[1..].contains(['+', '-']) && !body.starts_with('-');
                CoeffText {
                    negative: false,
                    body: if single { body } else { format!("({body})") },
                    is_one: false,
                    compound: false,
                }
            }
        }
    }
    fn is_zero(&self, a: &NfElement) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &NfElement) -> bool {
        a.is_one()
    }
}

/// Inverse through the extended gcd with the minimal polynomial.
pub fn nf_inverse(a: &NfElement) -> Result<NfElement> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (g, s, _) = a.as_poly().xgcd(a.field.minpoly())?;
    if !g.is_one() {
        return Err(Error::Internal(format!("minimal polynomial {} is not irreducible", a.field.minpoly())));
    }
    Ok(a.field.from_poly(&s))
}

/// Minimal polynomial over ℚ: the first linear dependency among `1, γ, γ², …`.
pub fn minpoly_of(g: &NfElement) -> QPoly {
    let mut dep = Dependency::new();
    let mut p = g.field.from_i64(1);
    loop {
        if let Some(c) = dep.push(p.coeffs.clone()) {
            return QPoly::from_rats(c);
        }
        p = &p * g;
    }
}

/// The map `K → L` sending the primitive element of `K` to `theta_image`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: NumberField,
    pub target: NumberField,
    pub theta_image: NfElement,
}

impl Embedding {
    pub fn apply(&self, a: &NfElement) -> NfElement {
        debug_assert!(a.field == self.source);
        a.substitute(&self.theta_image)
    }

    pub fn apply_poly(&self, p: &Poly<NumberField>) -> Poly<NumberField> {
        p.map(&self.target, |c| self.apply(c))
    }
}

/// Result of [`adjoin_root`].
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub field: NumberField,
    pub embed: Embedding,
    /// A root of the adjoined polynomial in the new field.
    pub new_root: NfElement,
    /// The new primitive element is `θ_old + shift·new_root`.
    pub shift: u64,
}

/// Adjoins a root of `p`, irreducible over `K`, and presents the result by a
/// single primitive element over ℚ.
pub fn adjoin_root(p: &Poly<NumberField>) -> Result<Adjunction> {
    adjoin_root_capped(p, DEFAULT_NF_CAP)
}

pub fn adjoin_root_capped(p: &Poly<NumberField>, cap: usize) -> Result<Adjunction> {
    let k = p.field();
    let e = p.degree().filter(|&e| e >= 1).ok_or_else(|| Error::invalid("cannot adjoin a root of a constant"))?;
    if k.degree() * e > cap {
        return Err(Error::cap("number field degree", cap, format!("{} extended by {}", k.describe(), p.to_string_var("x"))));
    }
    if !is_irreducible(p)? {
        return Err(Error::Reducible(p.to_string_var("x")));
    }
    adjoin_root_unchecked(p)
}

/// `K[y]/(p)` arithmetic: vectors of `e` coordinates over `K`.
struct Tower<'a> {
    k: &'a NumberField,
    p: Vec<NfElement>,
}

impl Tower<'_> {
    fn mul(&self, a: &[NfElement], b: &[NfElement]) -> Vec<NfElement> {
        let e = self.p.len() - 1;
        let mut prod = vec![self.k.from_i64(0); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        for t in (e..prod.len()).rev() {
            let c = prod[t].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..e {
                prod[t - e + j] = &prod[t - e + j] - &(&c * &self.p[j]);
            }
        }
        prod.truncate(e);
        prod
    }

    fn flatten(&self, a: &[NfElement]) -> Vec<Rat> {
        a.iter().flat_map(|x| x.coeffs.iter().cloned()).collect()
    }
}

/// [`adjoin_root`] without the irreducibility check or cap, for callers that
/// already know `p` is irreducible.
pub(crate) fn adjoin_root_unchecked(p: &Poly<NumberField>) -> Result<Adjunction> {
    let k = p.field().clone();
    let p = p.monic();
    let d = k.degree();
    let e = p.deg();
    let n = d * e;
    let zero = k.from_i64(0);
    let tower = Tower { k: &k, p: p.coeffs().to_vec() };
    if e == 1 {
        // the root is already in K
        let root = -&p.coeff(0);
        let embed = Embedding { source: k.clone(), target: k.clone(), theta_image: k.theta() };
        return Ok(Adjunction { field: k, embed, new_root: root, shift: 0 });
    }
    let mut theta = vec![zero.clone(); e];
    theta[0] = k.theta();
    let mut y = vec![zero.clone(); e];
    y[1] = k.from_i64(1);
    let mut one = vec![zero.clone(); e];
    one[0] = k.from_i64(1);
    for c in 0u64.. {
        let cy: Vec<NfElement> = y.iter().map(|t| t.scale(&Rat::from_integer(c.into()))).collect();
        let gamma: Vec<NfElement> = theta.iter().zip(&cy).map(|(a, b)| a + b).collect();
        let mut dep = Dependency::new();
        let mut powers = Vec::with_capacity(n);
        let mut cur = one.clone();
        let mut found = None;
        for i in 0..=n {
            let flat = tower.flatten(&cur);
            if let Some(rel) = dep.push(flat.clone()) {
                if i == n {
                    found = Some(rel);
                }
                break;
            }
            powers.push(flat);
            cur = tower.mul(&cur, &gamma);
        }
        let Some(rel) = found else { continue };
        let minpoly = QPoly::from_rats(rel);
        let sol = solve_columns(&powers, &[tower.flatten(&theta), tower.flatten(&y)])
            .ok_or_else(|| Error::Internal("primitive element does not span the tower".into()))?;
        let mut prov = k.provenance().to_vec();
        prov.push(format!("adjoin a root of {} over {}", p.to_string_var("x"), k.describe()));
        let field = NumberField::from_minpoly_unchecked(minpoly, prov);
        let theta_image = field.elem(sol[0].clone());
        let new_root = field.elem(sol[1].clone());
        let embed = Embedding { source: k.clone(), target: field.clone(), theta_image };
        debug_assert!(embed.apply_poly(&p).eval(&new_root).is_zero());
        return Ok(Adjunction { field, embed, new_root, shift: c });
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn inverses() {
        let k = NumberField::new(&q(&[-2, 0, 1])).unwrap();
        let t = k.theta();
        assert_eq!(nf_inverse(&t).unwrap(), t.scale(&rat(1, 2)));
        assert!(nf_inverse(&k.from_i64(1)).unwrap().is_one());
        assert!(matches!(nf_inverse(&k.from_i64(0)), Err(Error::DivisionByZero)));
        let c = NumberField::new(&q(&[-2, 0, 0, 1])).unwrap();
        let t = c.theta();
        assert_eq!(nf_inverse(&t).unwrap(), t.pow(2).scale(&rat(1, 2)));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(matches!(NumberField::new(&q(&[-1, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::new(&q(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(minpoly_of(&k.from_i64(5)), q(&[-5, 1]));
        assert_eq!(minpoly_of(&k.theta()), q(&[-2, 0, 0, 1]));
        // θ² = ∛4 has minimal polynomial x³ - 4
        assert_eq!(minpoly_of(&k.theta().pow(2)), q(&[-4, 0, 0, 1]));
    }

    #[test]
    fn tower_sqrt2_sqrt3() {
        let q2 = adjoin_root(&NumberField::rationals().lift_poly(&q(&[-2, 0, 1]))).unwrap();
        assert_eq!(q2.field.degree(), 2);
        let k = q2.field.clone();
        let s = adjoin_root(&k.lift_poly(&q(&[-3, 0, 1]))).unwrap();
        assert_eq!(s.field.degree(), 4);
        let sqrt2 = s.embed.apply(&q2.new_root);
        let sqrt3 = s.new_root.clone();
        assert_eq!(&sqrt2 * &sqrt2, s.field.from_i64(2));
        assert_eq!(&sqrt3 * &sqrt3, s.field.from_i64(3));
        let sum = &sqrt2 + &sqrt3;
        assert_eq!(minpoly_of(&sum), q(&[1, 0, -10, 0, 1]));
        // minpoly divides the characteristic polynomial
        for g in [&sum, &sqrt2, &(&sqrt2 * &sqrt3)] {
            let cp = s.field.charpoly(g);
            assert!(minpoly_of(g).divides(&cp).unwrap());
        }
    }

    #[test]
    fn cube_root_then_sqrt_minus_three() {
        let c = NumberField::new(&q(&[-2, 0, 0, 1])).unwrap();
        let a = adjoin_root(&c.lift_poly(&q(&[3, 0, 1]))).unwrap();
        assert_eq!(a.field.degree(), 6);
        assert!(adjoin_root(&c.lift_poly(&q(&[-1, 0, 1]))).is_err());
    }

    #[test]
    fn describe() {
        let k = NumberField::new(&q(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(k.describe(), "Q(a)/(a^4 - 10*a^2 + 1)");
        assert_eq!(NumberField::rationals().describe(), "Q");
    }
}
