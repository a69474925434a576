//! Factorization of square-free primitive integer polynomials: Berlekamp
//! modulo a small prime, quadratic Hensel lifting past the Mignotte bound,
//! then naive recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::berlekamp;
use crate::error::{Error, Result};
use crate::exactnum::is_prime_u64;
use crate::field::PrimeField;
use crate::poly::FpPoly;

/// Integer polynomial, constant term first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

/// Most modular factors the subset search will accept.
pub const MAX_MODULAR_FACTORS: usize = 16;
// Primes examined when the first usable one gives too many factors.
const PRIME_TRIALS: usize = 8;

fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in `(-m/2, m/2]`.
fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial over ℤ.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

/// Exact division over ℤ, `None` if `b` does not divide `a`.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    if a.len() <= db {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if f.last().unwrap().is_negative() { -c } else { c };
    f.iter().map(|x| x / &sign).collect()
}

fn to_fp(f: &[BigInt], fld: PrimeField) -> FpPoly {
    FpPoly::new(fld, f.iter().map(|c| fld.reduce_int(c)).collect())
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Factors of a square-free primitive integer polynomial with positive
/// leading coefficient, sorted by degree then coefficients.
pub fn factor_squarefree(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f[n].clone();
    // F(x) = lc^(n-1) f(x / lc) is monic with the same splitting behaviour.
    let monic: ZPoly = if lc.is_one() {
        f.to_vec()
    } else {
        let mut pw = BigInt::one();
        let mut g = vec![BigInt::zero(); n + 1];
        for i in (0..n).rev() {
            g[i] = &f[i] * &pw;
            pw *= &lc;
        }
        g[n] = BigInt::one();
        g
    };
    let mut out: Vec<ZPoly> = zassenhaus_monic(&monic)?
        .into_iter()
        .map(|g| {
            if lc.is_one() {
                return g;
            }
            // g(lc·x), then strip content
            let mut pw = BigInt::one();
            let scaled: ZPoly = g
                .iter()
                .map(|c| {
                    let v = c * &pw;
                    pw *= &lc;
                    v
                })
                .collect();
            primitive_part(&scaled)
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Smallest suitable prime, or among the first few suitable primes the one
/// giving the fewest modular factors when the first gives too many.
fn choose_prime(f: &[BigInt]) -> (PrimeField, Vec<FpPoly>) {
    let mut best: Option<(PrimeField, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) {
            let fld = PrimeField::new(p).unwrap();
            let fp = to_fp(f, fld);
            if fp.deg() + 1 == f.len() && fp.gcd(&fp.derivative()).is_one() {
                let facs = berlekamp(&fp);
                if facs.len() <= 12 && best.is_none() {
                    return (fld, facs);
                }
                if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
                    best = Some((fld, facs));
                }
                tried += 1;
                if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|b| b.1.len() <= 12) {
                    return best.unwrap();
                }
            }
        }
        p += 2;
    }
}

fn mignotte_target(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1u32;
    // any factor's coefficients are below 2^deg · ‖f‖₂; lift past twice that
    (norm << (f.len() - 1)) * 2u32 + 1u32
}

fn zassenhaus_monic(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    let (fld, modular) = choose_prime(f);
    if modular.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }
    if modular.len() > MAX_MODULAR_FACTORS {
        return Err(Error::cap(
            "modular factors for recombination",
            MAX_MODULAR_FACTORS,
            format!("degree {} splits into {} factors mod {}", f.len() - 1, modular.len(), fld.modulus()),
        ));
    }
    let p = BigInt::from(fld.modulus());
    let target = mignotte_target(f);
    let mut modulus = p.clone();
    while modulus <= target {
        modulus = &modulus * &modulus;
    }
    let lifted = multifactor_lift(f, &modular, fld, &modulus);
    Ok(recombine(f, lifted, &modulus))
}

/// Lifts `f ≡ ∏ factors (mod p)` to a factorization modulo `target`, which
/// must be `p^(2^k)`.
fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], fld: PrimeField, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(f, target)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(fld), |acc, g| &acc * g);
    let g = prod(&factors[..mid]);
    let h = prod(&factors[mid..]);
    let (d, s, t) = g.xgcd(&h).expect("coprime modular factors");
    debug_assert!(d.is_one());
    let (gl, hl) = hensel_pair(f, &from_fp(&g), &from_fp(&h), &from_fp(&s), &from_fp(&t), fld, target);
    let mut out = multifactor_lift(&gl, &factors[..mid], fld, target);
    out.extend(multifactor_lift(&hl, &factors[mid..], fld, target));
    out
}

/// Quadratic Hensel lifting of `f ≡ g·h` with `s·g + t·h ≡ 1`, from `p` up to
/// `target`. Both factors stay monic.
fn hensel_pair(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    fld: PrimeField,
    target: &BigInt,
) -> (ZPoly, ZPoly) {
    let (mut g, mut h, mut s, mut t) = (g.to_vec(), h.to_vec(), s.to_vec(), t.to_vec());
    let mut m = BigInt::from(fld.modulus());
    while &m < target {
        let m2 = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmod(&zmul(&s, &e), &m2), &h);
        let g2 = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h2 = zmod(&zadd(&h, &r), &m2);
        let b = zmod(
            &zsub(&zadd(&zmul(&s, &g2), &zmul(&t, &h2)), &[BigInt::one()]),
            &m2,
        );
        let (c, d) = zdivrem_monic(&zmod(&zmul(&s, &b), &m2), &h2);
        let s2 = zmod(&zsub(&s, &d), &m2);
        let t2 = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g2)), &m2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m2;
    }
    (g, h)
}

/// Recombines lifted monic factors by subset search over true divisors.
fn recombine(f: &[BigInt], lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut rest = f.to_vec();
    let mut pool: Vec<ZPoly> = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in combinations(pool.len(), size) {
            // cheap filter on the constant term
            if !rest[0].is_zero() {
                let c0 = subset
                    .iter()
                    .fold(BigInt::one(), |acc, &i| (acc * &pool[i][0]).mod_floor(modulus));
                let c0 = zsym(&[c0], modulus).pop().unwrap_or_default();
                if c0.is_zero() || !(&rest[0] % &c0).is_zero() {
                    continue;
                }
            }
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmod(&zmul(&acc, &pool[i]), modulus));
            let cand = zsym(&cand, modulus);
            if let Some(q) = zdiv_exact(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn hensel_lift_is_a_factorization() {
        // x^4 - 10x^2 + 1 is irreducible over ℚ but splits mod every prime.
        let f = z(&[1, 0, -10, 0, 1]);
        let fld = PrimeField::new(5).unwrap();
        let facs = berlekamp(&to_fp(&f, fld));
        assert_eq!(facs.len(), 2);
        let m = BigInt::from(5u32).pow(16);
        let lifted = multifactor_lift(&f, &facs, fld, &m);
        let prod = lifted.iter().fold(z(&[1]), |acc, g| zmod(&zmul(&acc, g), &m));
        assert_eq!(prod, zmod(&f, &m));
        assert_eq!(factor_squarefree(&f).unwrap(), vec![f.clone()]);
    }

    #[test]
    fn splits_products() {
        let f = zmul(&z(&[-2, 0, 1]), &z(&[-3, 0, 1]));
        assert_eq!(factor_squarefree(&f).unwrap(), vec![z(&[-3, 0, 1]), z(&[-2, 0, 1])]);
        let g = zmul(&z(&[1, 2]), &z(&[-5, 0, 3]));
        assert_eq!(factor_squarefree(&g).unwrap(), vec![z(&[1, 2]), z(&[-5, 0, 3])]);
        let h = zmul(&zmul(&z(&[-1, 1]), &z(&[1, 1, 1])), &z(&[2, 0, 0, 0, 0, 1]));
        assert_eq!(
            factor_squarefree(&h).unwrap(),
            vec![z(&[-1, 1]), z(&[1, 1, 1]), z(&[2, 0, 0, 0, 0, 1])]
        );
    }

    #[test]
    fn swinnerton_dyer_degree_eight() {
        // minimal polynomial of √2+√3+√5: irreducible, splits into ≥ 4 factors
        // modulo every prime.
        let f = z(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert_eq!(factor_squarefree(&f).unwrap(), vec![f.clone()]);
    }
}
