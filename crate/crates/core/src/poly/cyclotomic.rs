//! Cyclotomic polynomials by recursive division of `x^n - 1`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::QPoly;
use crate::exactnum::divisors;
use crate::field::Rationals;

fn cache() -> &'static Mutex<HashMap<u64, QPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n`, memoized. Panics on `n = 0`.
pub fn cyclotomic(n: u64) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = compute(n, &cyclotomic);
    cache().lock().unwrap().insert(n, p.clone());
    p
}

/// `Φ_n` without touching the shared cache.
pub fn cyclotomic_uncached(n: u64) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    compute(n, &cyclotomic_uncached)
}

fn compute(n: u64, sub: &dyn Fn(u64) -> QPoly) -> QPoly {
    let mut xn1 = vec![0i64; n as usize + 1];
    xn1[0] = -1;
    xn1[n as usize] = 1;
    let mut p = QPoly::from_i64(&xn1);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        p = p.exact_div(&sub(d)).expect("Φ_d divides x^n - 1");
    }
    debug_assert_eq!(*p.field(), Rationals);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::phi_u64;
    use num_traits::{One, Signed};

    #[test]
    fn listed_values() {
        assert_eq!(cyclotomic(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), QPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(9), QPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic(10), QPoly::from_i64(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), QPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(7), QPoly::from_i64(&[1; 7]));
    }

    #[test]
    fn integrality_degree_and_constant_term() {
        for n in 1..=60 {
            let p = cyclotomic(n);
            assert_eq!(p.deg() as u64, phi_u64(n));
            assert!(p.coeffs().iter().all(|c| c.is_integer()));
            assert!(p.coeff(0).abs().is_one());
            assert!(p.is_separable().unwrap());
            assert_eq!(p, cyclotomic_uncached(n));
        }
    }

    #[test]
    fn product_over_divisors() {
        for n in 1..=60u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(QPoly::from_i64(&[1]), |acc, d| &acc * &cyclotomic(d));
            let mut c = vec![0i64; n as usize + 1];
            c[0] = -1;
            c[n as usize] = 1;
            assert_eq!(prod, QPoly::from_i64(&c), "n = {n}");
        }
    }
}
