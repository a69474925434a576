//! Splitting fields over ℚ, built by repeated adjunction.

use super::approx::{complex_roots, Approx};
use super::{adjoin_root_unchecked, NfElement, NumberField, DEFAULT_NF_CAP};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{Int, Rat};
use crate::factor::{factor_over_numberfield_capped, factor_over_q_capped, DEFAULT_FACTOR_CAP};
use crate::field::{Field, Rationals};
use crate::poly::{Poly, QPoly};

/// A splitting field `K` of `f` over ℚ together with the roots of `f` in `K`.
#[derive(Clone, Debug)]
pub struct SplittingField {
    f: QPoly,
    squarefree: QPoly,
    field: NumberField,
    roots: Vec<NfElement>,
    labels: Vec<Approx>,
    theta_approx: Approx,
    /// Indices (into `roots`) of the roots adjoined, in adjunction order.
    adjoined: Vec<usize>,
    /// `θ = Σ weights[j] · roots[adjoined[j]]`.
    weights: Vec<Int>,
}

impl SplittingField {
    /// The input polynomial.
    pub fn poly(&self) -> &QPoly {
        &self.f
    }

    /// Monic square-free part of the input, whose roots are recorded.
    pub fn squarefree(&self) -> &QPoly {
        &self.squarefree
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Roots in canonical order: real roots ascending, then the others by
    /// real part ascending and imaginary part descending.
    pub fn roots(&self) -> &[NfElement] {
        &self.roots
    }

    /// Numerical value of each root, aligned with [`roots`](Self::roots).
    /// For ordering and display only.
    pub fn root_labels(&self) -> &[Approx] {
        &self.labels
    }

    /// Numerical value of the primitive element under the chosen embedding.
    pub fn theta_approx(&self) -> &Approx {
        &self.theta_approx
    }

    /// `(root index, weight)` pairs with `θ = Σ weight · root`.
    pub fn theta_as_roots(&self) -> Vec<(usize, Int)> {
        self.adjoined.iter().copied().zip(self.weights.iter().cloned()).collect()
    }

    /// Position of `r` in the root list.
    pub fn root_index(&self, r: &NfElement) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// Numerical value of an element under the embedding fixed by the labels.
    pub fn approximate(&self, a: &NfElement) -> Approx {
        Approx::eval(&a.as_poly(), &self.theta_approx)
    }
}

/// Splitting field with the default degree cap.
pub fn splitting_field(f: &QPoly) -> Result<SplittingField> {
    splitting_field_capped(f, DEFAULT_NF_CAP)
}

pub fn splitting_field_capped(f: &QPoly, cap: usize) -> Result<SplittingField> {
    let n = f.degree().filter(|&n| n >= 1).ok_or_else(|| Error::invalid("splitting field of a constant"))?;
    if n > DEFAULT_FACTOR_CAP {
        return Err(Error::cap("degree for factorization over Q", DEFAULT_FACTOR_CAP, f.to_string()));
    }
    let g = f.squarefree_part();
    // work with the roots c·r of a monic integral polynomial, so that every
    // field in the tower has an integral defining polynomial
    let (big, c) = integral_transform(&g);
    let numeric = complex_roots(&big);
    let mut k = NumberField::rationals();
    let mut theta_num = Approx::zero();
    let mut roots: Vec<NfElement> = Vec::new();
    let mut adjoined: Vec<usize> = Vec::new();
    let mut weights: Vec<Int> = Vec::new();
    loop {
        let gk = k.lift_poly(&big);
        let known = roots
            .iter()
            .fold(Poly::one(k.clone()), |acc, r| &acc * &Poly::new(k.clone(), vec![-r, k.from_i64(1)]));
        let h = gk.exact_div(&known)?;
        if h.deg() == 0 {
            break;
        }
        let factors: Vec<Poly<NumberField>> = if h.deg() == 1 {
            vec![h.monic()]
        } else if k.is_rationals() {
            let hq: QPoly = h.map(&Rationals, |c| c.coeffs()[0].clone());
            factor_over_q_capped(&hq, DEFAULT_FACTOR_CAP)?
                .factors
                .into_iter()
                .map(|(p, _)| k.lift_poly(&p))
                .collect()
        } else {
            let limit = cap.max(k.degree() * h.deg());
            factor_over_numberfield_capped(&h, limit)?.factors.into_iter().map(|(p, _)| p).collect()
        };
        for p in factors.iter().filter(|p| p.deg() == 1) {
            roots.push(-&p.coeff(0));
        }
        let Some(p) = factors.iter().find(|p| p.deg() > 1) else {
            continue;
        };
        if k.degree() * p.deg() > cap {
            return Err(Error::cap(
                "number field degree",
                cap,
                format!(
                    "tower so far: {}; next step adjoins a root of {} (degree {})",
                    tower_text(&k),
                    p.to_string_var("x"),
                    k.degree() * p.deg()
                ),
            ));
        }
        // pick the numerical root of p under the current embedding
        let p_num: Vec<Approx> = p.coeffs().iter().map(|c| Approx::eval(&c.as_poly(), &theta_num)).collect();
        let eval_p = |z: &Approx| p_num.iter().rev().fold(Approx::zero(), |acc, c| acc.mul(z).add(c));
        let z = numeric
            .iter()
            .min_by_key(|z| eval_p(z).dist_bits(&Approx::zero()))
            .cloned()
            .unwrap();
        let adj = adjoin_root_unchecked(p)?;
        if adj.field.degree() != k.degree() * p.deg() {
            return Err(Error::Internal("tower law violated after adjunction".into()));
        }
        theta_num = theta_num.add(&z.scale(&Rat::from_integer(adj.shift.into())));
        roots = roots.iter().map(|r| adj.embed.apply(r)).collect();
        adjoined.push(roots.len());
        weights.push(Int::from(adj.shift));
        roots.push(adj.new_root.clone());
        k = adj.field;
    }
    let inv = Rat::from_integer(c.clone()).recip();
    let roots: Vec<NfElement> = roots.iter().map(|r| r.scale(&inv)).collect();
    let weights: Vec<Int> = weights.into_iter().map(|w| w * &c).collect();
    // attach numerical labels and sort
    let mut labelled: Vec<(NfElement, Approx, usize)> = roots
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let v = Approx::eval(&r.as_poly(), &theta_num);
            (r, v, i)
        })
        .collect();
    labelled.sort_by(|a, b| a.1.canonical_cmp(&b.1));
    for w in labelled.windows(2) {
        if w[0].1.canonical_cmp(&w[1].1).is_eq() {
            return Err(Error::Internal("numerical root labels are not separated".into()));
        }
    }
    let old_to_new: Vec<usize> = {
        let mut m = vec![0; labelled.len()];
        for (new, (_, _, old)) in labelled.iter().enumerate() {
            m[*old] = new;
        }
        m
    };
    let adjoined = adjoined.into_iter().map(|i| old_to_new[i]).collect();
    let (roots, labels): (Vec<NfElement>, Vec<Approx>) = labelled.into_iter().map(|(r, v, _)| (r, v)).unzip();
    let sf = SplittingField {
        f: f.clone(),
        squarefree: g,
        field: k,
        roots,
        labels,
        theta_approx: theta_num,
        adjoined,
        weights,
    };
    check_splitting(&sf)?;
    Ok(sf)
}

/// `(G, c)` with `G = c^(n-1) g(x/c)` monic with integer coefficients, where
/// `c` is the leading coefficient of the primitive integer multiple of `g`.
fn integral_transform(g: &QPoly) -> (QPoly, Int) {
    let den = g.coeffs().iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = g.coeffs().iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let content = ints.iter().fold(Int::zero(), |a, b| a.gcd(b));
    let ints: Vec<Int> = ints.into_iter().map(|x| x / &content).collect();
    let n = ints.len() - 1;
    let c = ints[n].clone();
    let coeffs = ints
        .iter()
        .enumerate()
        .map(|(i, a)| if i == n { Rat::one() } else { Rat::from_integer(a * c.pow((n - 1 - i) as u32)) })
        .collect();
    (QPoly::from_rats(coeffs), c)
}

fn tower_text(k: &NumberField) -> String {
    if k.provenance().is_empty() {
        "Q".into()
    } else {
        format!("{} [{}]", k.describe(), k.provenance().join("; "))
    }
}

/// Every recorded root is a root, and `∏ (x - rᵢ)` is the square-free part.
fn check_splitting(sf: &SplittingField) -> Result<()> {
    let k = &sf.field;
    let g = k.lift_poly(&sf.squarefree);
    for r in &sf.roots {
        if !g.eval(r).is_zero() {
            return Err(Error::Internal(format!("recorded root {r} does not satisfy {}", sf.squarefree)));
        }
    }
    let prod = sf
        .roots
        .iter()
        .fold(Poly::one(k.clone()), |acc, r| &acc * &Poly::new(k.clone(), vec![-r, k.from_i64(1)]));
    if prod != g {
        return Err(Error::Internal("roots do not reproduce the polynomial".into()));
    }
    // θ is the recorded combination of roots
    let theta = sf
        .theta_as_roots()
        .iter()
        .fold(k.zero(), |acc, (i, w)| &acc + &sf.roots[*i].scale(&Rat::from_integer(w.clone())));
    if theta != k.theta() && !(k.is_rationals() && theta.is_zero()) {
        return Err(Error::Internal("primitive element is not the recorded combination of roots".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn degrees() {
        assert_eq!(splitting_field(&q(&[-2, 0, 1])).unwrap().degree(), 2);
        assert_eq!(splitting_field(&(&q(&[-2, 0, 1]) * &q(&[-3, 0, 1]))).unwrap().degree(), 4);
        assert_eq!(splitting_field(&q(&[-2, 0, 0, 1])).unwrap().degree(), 6);
        assert_eq!(splitting_field(&q(&[4, 0, 0, 0, 1])).unwrap().degree(), 2);
        for p in [3u64, 5, 7] {
            assert_eq!(splitting_field(&cyclotomic(p)).unwrap().degree(), p as usize - 1);
        }
        assert_eq!(splitting_field(&q(&[-1, 1])).unwrap().degree(), 1);
    }

    #[test]
    fn repeated_roots_are_recorded_once() {
        let f = &q(&[-2, 0, 1]).pow(3) * &q(&[1, 1]);
        let sf = splitting_field(&f).unwrap();
        assert_eq!(sf.roots().len(), 3);
        assert_eq!(sf.degree(), 2);
    }

    #[test]
    fn cube_root_labels() {
        let sf = splitting_field(&q(&[-2, 0, 0, 1])).unwrap();
        let l = sf.root_labels();
        assert!(l[0].is_real());
        assert!(!l[1].is_real() && l[1].to_complex().im > 0.0);
        assert!((l[0].to_complex().re - 2f64.cbrt()).abs() < 1e-12);
        // the real root generates the pure cubic field
        assert_eq!(sf.roots()[0].minpoly(), q(&[-2, 0, 0, 1]));
        for (r, z) in sf.roots().iter().zip(l) {
            assert!(sf.approximate(r).dist_bits(z) < 64);
        }
    }

    #[test]
    fn cap_reports_partial_tower() {
        let err = splitting_field_capped(&q(&[-2, 0, 0, 1]), 4).unwrap_err();
        match err {
            Error::CapExceeded { partial, .. } => assert!(partial.contains("x^3 - 2")),
            other => panic!("{other:?}"),
        }
    }
}
