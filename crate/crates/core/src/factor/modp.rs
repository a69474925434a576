//! Factorization over prime fields: square-free split plus Berlekamp.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Factorization;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::FpPoly;

// Above this modulus the splitting step uses random elements of the
// Berlekamp algebra instead of scanning every constant.
const SCAN_LIMIT: u64 = 1 << 12;

/// Full factorization over `F_p` with multiplicities.
pub fn factor_mod_p(f: &FpPoly) -> Result<Factorization<PrimeField>> {
    let fld = *f.field();
    let unit = *f.leading().ok_or_else(|| Error::invalid("factorization of the zero polynomial"))?;
    let mut factors = Vec::new();
    for (part, mult) in squarefree_factorization(&f.monic()) {
        for g in berlekamp(&part) {
            factors.push((g, mult));
        }
    }
    let mut out = Factorization { field: fld, unit, factors };
    out.sort();
    Ok(out)
}

/// Square-free decomposition of a monic polynomial over `F_p`, including the
/// `p`-th root step when the derivative vanishes.
pub fn squarefree_factorization(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let fld = *f.field();
    let p = fld.modulus() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in x^p; take its p-th root coefficientwise
        // (a ↦ a^(1/p) is the identity on F_p).
        let root: Vec<u64> = c.coeffs().iter().step_by(p).copied().collect();
        let r = FpPoly::new(fld, root);
        for (g, m) in squarefree_factorization(&r) {
            out.push((g, m * p));
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    out
}

/// Kernel basis of a matrix over `F_p` (rows × cols, row-major).
fn kernel(fld: &PrimeField, mut m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = fld.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = fld.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let v = fld.mul(&k, &m[r][j]);
                    m[i][j] = fld.sub(&m[i][j], &v);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = fld.neg(&m[i][fc]);
            }
            v
        })
        .collect()
}

/// Berlekamp subalgebra basis of a monic square-free `f`: polynomials `g`
/// with `g^p ≡ g (mod f)`. Its dimension is the number of irreducible factors.
pub fn berlekamp_basis(f: &FpPoly) -> Vec<FpPoly> {
    let fld = *f.field();
    let n = f.deg();
    let xp = FpPoly::x(fld)
        .pow_mod(&BigInt::from(fld.modulus()), f)
        .unwrap();
    // row i = x^{ip} mod f
    let mut q_rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(fld);
    for _ in 0..n {
        q_rows.push((0..n).map(|j| cur.coeff(j)).collect::<Vec<u64>>());
        cur = (&cur * &xp).rem(f).unwrap();
    }
    // Σ_i v_i (Q[i][j] - δ_ij) = 0: kernel of (Q - I)^T
    let m: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let d = if i == j { 1 } else { 0 };
                    fld.sub(&q_rows[i][j], &d)
                })
                .collect()
        })
        .collect();
    kernel(&fld, m, n)
        .into_iter()
        .map(|v| FpPoly::new(fld, v))
        .collect()
}

/// Monic irreducible factors of a monic square-free polynomial.
pub fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let fld = *f.field();
    if f.deg() <= 1 {
        return if f.deg() == 1 { vec![f.clone()] } else { Vec::new() };
    }
    let basis = berlekamp_basis(f);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    let p = fld.modulus();
    if p <= SCAN_LIMIT {
        'outer: for v in basis.iter().filter(|v| v.deg() > 0) {
            let mut k = 0;
            while k < factors.len() {
                if factors.len() == r {
                    break 'outer;
                }
                let h = factors[k].clone();
                if h.deg() <= 1 {
                    k += 1;
                    continue;
                }
                let mut split = false;
                for s in 0..p {
                    let g = h.gcd(&(v - &FpPoly::constant(fld, s)));
                    if !g.is_one() && g.deg() < h.deg() {
                        let other = h.exact_div(&g).unwrap();
                        factors[k] = g;
                        factors.push(other);
                        split = true;
                        break;
                    }
                }
                if !split {
                    k += 1;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a1015);
        let half = BigInt::from((p - 1) / 2);
        while factors.len() < r {
            let mut v = FpPoly::zero(fld);
            for b in &basis {
                let c = rng.gen_range(0..p);
                v = &v + &b.scale(&c);
            }
            let mut next = Vec::new();
            for h in factors {
                if h.deg() <= 1 {
                    next.push(h);
                    continue;
                }
                let w = v.pow_mod(&half, &h).unwrap();
                let g = h.gcd(&(&w - &FpPoly::one(fld)));
                if !g.is_one() && g.deg() < h.deg() {
                    next.push(h.exact_div(&g).unwrap());
                    next.push(g);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    let mut out: Vec<FpPoly> = factors.into_iter().map(|g| g.monic()).collect();
    out.sort_by(|a, b| a.cmp_canonical(b));
    out
}
