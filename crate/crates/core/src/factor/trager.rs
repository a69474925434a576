//! Factorization over a number field by Trager's norm method.

use num_traits::{One, Zero};

use super::{factor_over_q_capped, Factorization};
use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::field::{Field, Rationals};
use crate::numfield::NumberField;
use crate::poly::{Poly, QPoly};

/// Largest `[K:ℚ]·deg f` accepted by default.
pub const DEFAULT_TRAGER_CAP: usize = 64;

type KPoly = Poly<NumberField>;

/// Factors a square-free polynomial over its number field.
pub fn factor_over_numberfield(f: &KPoly) -> Result<Factorization<NumberField>> {
    factor_over_numberfield_capped(f, DEFAULT_TRAGER_CAP)
}

pub fn factor_over_numberfield_capped(f: &KPoly, cap: usize) -> Result<Factorization<NumberField>> {
    let k = f.field().clone();
    let n = f.degree().ok_or_else(|| Error::invalid("factorization of the zero polynomial"))?;
    if n * k.degree() > cap {
        return Err(Error::cap(
            "norm degree for number field factorization",
            cap,
            format!("{} over {}", f.to_string_var("x"), k.describe()),
        ));
    }
    if n > 0 && !f.gcd(&f.derivative()).is_one() {
        return Err(Error::invalid("polynomial must be square-free; divide out repeated factors first"));
    }
    let unit = f.leading().unwrap().clone();
    let mut out = Factorization { field: k, unit, factors: Vec::new() };
    if n > 0 {
        out.factors = factor_squarefree_k(&f.monic(), cap)?.into_iter().map(|g| (g, 1)).collect();
    }
    out.sort();
    Ok(out)
}

/// Factorization with multiplicities, through the square-free decomposition.
pub(crate) fn factor_full(k: &NumberField, f: &KPoly) -> Result<Factorization<NumberField>> {
    let n = f.degree().ok_or_else(|| Error::invalid("factorization of the zero polynomial"))?;
    let unit = f.leading().unwrap().clone();
    let mut out = Factorization { field: k.clone(), unit, factors: Vec::new() };
    if n == 0 {
        return Ok(out);
    }
    for (i, part) in f.squarefree_decomposition().iter().enumerate() {
        if part.deg() == 0 {
            continue;
        }
        for g in factor_over_numberfield(part)?.factors {
            out.factors.push((g.0, i + 1));
        }
    }
    out.sort();
    Ok(out)
}

/// Monic irreducible factors of a monic square-free `f` over `K`.
fn factor_squarefree_k(f: &KPoly, cap: usize) -> Result<Vec<KPoly>> {
    let k = f.field().clone();
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    if k.is_rationals() {
        let fq: QPoly = f.map(&Rationals, |c| c.coeffs()[0].clone());
        let fac = factor_over_q_capped(&fq, cap)?;
        return Ok(fac.factors.into_iter().map(|(g, _)| k.lift_poly(&g)).collect());
    }
    let big_n = n * k.degree();
    let limit = 2 * big_n * big_n;
    for s in 0..=limit as u64 {
        // g(x) = f(x - sθ)
        let shift = k.theta().scale(&Rat::from_integer(Int::from(s))).clone();
        let g = f.shift(&-&shift);
        let norm = norm_poly(&g);
        if !norm.gcd(&norm.derivative()).is_one() {
            continue;
        }
        let fac = factor_over_q_capped(&norm, cap.max(big_n))?;
        if fac.factors.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        let mut out = Vec::with_capacity(fac.factors.len());
        for (ni, _) in &fac.factors {
            // gcd(f(x), N_i(x + sθ))
            let lifted = k.lift_poly(ni).shift(&shift);
            let h = f.gcd(&lifted);
            if h.deg() == 0 {
                return Err(Error::Internal(format!("norm factor {ni} has no common factor with {}", f.to_string_var("x"))));
            }
            out.push(h);
        }
        out.sort_by(|a, b| a.cmp_canonical(b));
        let prod = out.iter().fold(Poly::one(k.clone()), |acc, h| &acc * h);
        if &prod != f {
            return Err(Error::Internal("norm factors do not reassemble the polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::cap(
        "Trager shifts tried",
        limit,
        format!("no square-free norm for {} over {}", f.to_string_var("x"), k.describe()),
    ))
}

/// `Res_y(m(y), g(x, y))` where the coefficients of `g` are polynomials in
/// `θ`. Computed by evaluating at integer points, where it is the field norm
/// of `g(x₀)`, and interpolating.
pub(crate) fn norm_poly(g: &KPoly) -> QPoly {
    let k = g.field();
    let deg = g.deg() * k.degree();
    let xs: Vec<Rat> = (0..=deg as i64).map(|i| Rat::from_integer(i.into())).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x| element_norm(&g.eval(&k.from_rat(x.clone()))))
        .collect();
    interpolate(&xs, &ys)
}

/// Field norm `N_{K/ℚ}(a) = Res(m, a)` for monic `m`.
pub(crate) fn element_norm(a: &crate::numfield::NfElement) -> Rat {
    let k = a.field();
    if a.is_zero() {
        return Rat::zero();
    }
    let p = a.as_poly();
    if p.deg() == 0 {
        return Rationals.pow(&p.coeff(0), k.degree() as u64);
    }
    k.minpoly().resultant(&p).expect("nonzero polynomials")
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> QPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = QPoly::zero(Rationals);
    for i in (0..n).rev() {
        let lin = QPoly::from_rats(vec![-xs[i].clone(), Rat::one()]);
        acc = &(&acc * &lin) + &QPoly::constant(Rationals, coef[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = q(&[3, -1, 0, 2]);
        let xs: Vec<Rat> = (0..4).map(|i| Rat::from_integer(i.into())).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    #[test]
    fn norms_in_quadratic_field() {
        let k = NumberField::new(&q(&[-2, 0, 1])).unwrap();
        // N(a + b√2) = a² - 2b²
        let a = k.elem(vec![Rat::from_integer(3.into()), Rat::from_integer(5.into())]);
        assert_eq!(element_norm(&a), Rat::from_integer((9 - 50).into()));
        // norm of x - θ is the minimal polynomial
        let lin = Poly::new(k.clone(), vec![-k.theta(), k.from_i64(1)]);
        assert_eq!(norm_poly(&lin), q(&[-2, 0, 1]));
    }

    #[test]
    fn examples() {
        let k = NumberField::new(&q(&[-2, 0, 1])).unwrap();
        let f = k.lift_poly(&q(&[-3, 0, 1]));
        assert!(factor_over_numberfield(&f).unwrap().is_irreducible());
        let f = k.lift_poly(&q(&[-2, 0, 1]));
        let fac = factor_over_numberfield(&f).unwrap();
        let t = k.theta();
        let one = k.from_i64(1);
        assert_eq!(
            fac.factors,
            vec![
                (Poly::new(k.clone(), vec![-&t, one.clone()]), 1),
                (Poly::new(k.clone(), vec![t.clone(), one.clone()]), 1),
            ]
        );
        let c = NumberField::new(&q(&[-2, 0, 0, 1])).unwrap();
        let f = c.lift_poly(&q(&[-2, 0, 0, 1]));
        let fac = factor_over_numberfield(&f).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 2]);
        assert_eq!(fac.factors[0].0, Poly::new(c.clone(), vec![-c.theta(), c.from_i64(1)]));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn cap_and_squarefree_checks() {
        let k = NumberField::new(&q(&[-2, 0, 1])).unwrap();
        let f = k.lift_poly(&q(&[-2, 0, 1])).pow(2);
        assert!(factor_over_numberfield(&f).is_err());
        let fac = factor_full(&k, &f).unwrap();
        assert_eq!(fac.factors.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![2, 2]);
        let big = k.lift_poly(&QPoly::monomial(Rationals, Rat::one(), 40));
        assert!(matches!(factor_over_numberfield(&big), Err(Error::CapExceeded { .. })));
    }
}
