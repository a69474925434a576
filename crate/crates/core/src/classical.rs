//! Straightedge-and-compass constructibility.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{factor_u64, is_fermat_prime, phi_u64, Int};
use crate::factor::is_irreducible;
use crate::numfield::{splitting_field_capped, DEFAULT_NF_CAP};
use crate::poly::{sturm_real_roots, QPoly};

/// Whether a regular `n`-gon is constructible, with the factorization of `n`
/// that decides it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgonVerdict {
    pub n: u64,
    pub constructible: bool,
    pub factors: Vec<(u64, u32)>,
    pub phi: u64,
}

impl fmt::Display for NgonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fac: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(
            f,
            "{}-gon: {} (n = {}, phi(n) = {})",
            self.n,
            if self.constructible { "constructible" } else { "not constructible" },
            fac.join("*"),
            self.phi
        )
    }
}

/// Regular `n`-gon test: the odd part of `n` must be a product of distinct
/// Fermat primes. Cross-checked against `φ(n)` being a power of two.
pub fn ngon_constructible(n: u64) -> Result<NgonVerdict> {
    if n < 3 {
        return Err(Error::invalid(format!("a polygon needs at least 3 sides, got {n}")));
    }
    let factors = factor_u64(n);
    let constructible = factors
        .iter()
        .all(|&(p, e)| p == 2 || (e == 1 && is_fermat_prime(&Int::from(p))));
    let phi = phi_u64(n);
    if constructible != phi.is_power_of_two() {
        return Err(Error::Internal(format!("Fermat-prime and totient criteria disagree at n = {n}")));
    }
    Ok(NgonVerdict { n, constructible, factors, phi })
}

/// Outcome of [`real_constructible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibilityVerdict {
    /// `None` when the answer could not be settled within the caps.
    pub constructible: Option<bool>,
    /// `[ℚ(α):ℚ]` is a power of two.
    pub necessary_pass: bool,
    /// The splitting field has 2-power degree; `None` if not computed.
    pub closure_pass: Option<bool>,
    pub degree: usize,
    pub closure_degree: Option<usize>,
    pub reason: String,
}

impl ConstructibilityVerdict {
    pub fn verdict_text(&self) -> &'static str {
        match self.constructible {
            Some(true) => "constructible",
            Some(false) => "not constructible",
            None => "unknown",
        }
    }
}

pub fn real_constructible(m: &QPoly) -> Result<ConstructibilityVerdict> {
    real_constructible_capped(m, DEFAULT_NF_CAP)
}

/// Constructibility of a real root of an irreducible `m`.
///
/// A degree that is not a power of two rules construction out. When it is
/// one, the answer comes from the degree of the splitting field, which must
/// itself be a power of two.
pub fn real_constructible_capped(m: &QPoly, cap: usize) -> Result<ConstructibilityVerdict> {
    let d = m.degree().filter(|&d| d >= 1).ok_or_else(|| Error::invalid("constant polynomial"))?;
    if !is_irreducible(m)? {
        return Err(Error::Reducible(m.to_string()));
    }
    if sturm_real_roots(m)? == 0 {
        return Err(Error::invalid(format!("{m} has no real root")));
    }
    let necessary_pass = d.is_power_of_two();
    if !necessary_pass {
        return Ok(ConstructibilityVerdict {
            constructible: Some(false),
            necessary_pass,
            closure_pass: None,
            degree: d,
            closure_degree: None,
            reason: format!("[Q(a):Q] = {d} is not a power of 2"),
        });
    }
    let remark = "the degree test alone would call it constructible";
    match splitting_field_capped(m, cap) {
        Ok(sf) => {
            let n = sf.degree();
            let ok = n.is_power_of_two();
            let reason = if ok {
                format!("[Q(a):Q] = {d} and the splitting field has degree {n}, both powers of 2")
            } else {
                format!("[Q(a):Q] = {d} is a power of 2 but the splitting field has degree {n}; {remark}")
            };
            Ok(ConstructibilityVerdict {
                constructible: Some(ok),
                necessary_pass,
                closure_pass: Some(ok),
                degree: d,
                closure_degree: Some(n),
                reason,
            })
        }
        Err(Error::CapExceeded { .. }) => Ok(ConstructibilityVerdict {
            constructible: None,
            necessary_pass,
            closure_pass: None,
            degree: d,
            closure_degree: None,
            reason: format!("[Q(a):Q] = {d} is a power of 2; splitting field exceeds degree cap {cap}; {remark}"),
        }),
        Err(e) => Err(e),
    }
}

/// One of the three classical problems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalProblem {
    pub name: &'static str,
    pub possible: bool,
    pub reason: String,
}

/// Squaring the circle, doubling the cube, trisecting a 60° angle.
pub fn classical_problems() -> Result<Vec<ClassicalProblem>> {
    let cube = real_constructible(&QPoly::from_i64(&[-2, 0, 0, 1]))?;
    let trisect = real_constructible(&QPoly::from_i64(&[-1, -6, 0, 8]))?;
    Ok(vec![
        ClassicalProblem {
            name: "squaring the circle",
            possible: false,
            reason: "pi is transcendental (cited, not computed)".into(),
        },
        ClassicalProblem {
            name: "doubling the cube",
            possible: cube.constructible == Some(true),
            reason: format!("cube root of 2 has minimal polynomial x^3 - 2; {}", cube.reason),
        },
        ClassicalProblem {
            name: "trisecting pi/3",
            possible: trisect.constructible == Some(true),
            reason: format!("cos(pi/9) has minimal polynomial 8*x^3 - 6*x - 1; {}", trisect.reason),
        },
    ])
}

/// `φ(n)` as reported by the exact-integer routine, for cross-checks.
pub fn phi(n: u64) -> u64 {
    crate::exactnum::euler_phi(&Int::from(n))
        .ok()
        .and_then(|v| v.to_u64())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polygons() {
        let yes = [3u64, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20, 257];
        let no = [7u64, 9, 11, 13, 14, 18, 19];
        for n in yes {
            assert!(ngon_constructible(n).unwrap().constructible, "{n}");
        }
        for n in no {
            assert!(!ngon_constructible(n).unwrap().constructible, "{n}");
        }
        assert!(ngon_constructible(2).is_err());
        assert_eq!(ngon_constructible(7).unwrap().to_string(), "7-gon: not constructible (n = 7, phi(n) = 6)");
    }

    #[test]
    fn criteria_agree() {
        for n in 3..=1000u64 {
            let v = ngon_constructible(n).unwrap();
            assert_eq!(v.phi, phi(n));
        }
    }

    #[test]
    fn real_numbers() {
        let cube = real_constructible(&QPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(cube.constructible, Some(false));
        assert!(!cube.necessary_pass);
        let trisect = real_constructible(&QPoly::from_i64(&[-1, -6, 0, 8])).unwrap();
        assert_eq!(trisect.constructible, Some(false));
        let root2 = real_constructible(&QPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(root2.constructible, Some(true));
        assert_eq!(root2.closure_pass, Some(true));
        // quartic with group S_4: degree 4 but closure degree 24
        let s4 = real_constructible(&QPoly::from_i64(&[-1, -1, 0, 0, 1])).unwrap();
        assert!(s4.necessary_pass);
        assert_eq!(s4.closure_degree, Some(24));
        assert_eq!(s4.constructible, Some(false));
        let capped = real_constructible_capped(&QPoly::from_i64(&[-1, -1, 0, 0, 1]), 8).unwrap();
        assert_eq!(capped.constructible, None);
        assert!(real_constructible(&QPoly::from_i64(&[-4, 0, 1])).is_err());
        assert!(real_constructible(&QPoly::from_i64(&[1, 0, 1])).is_err());
    }

    #[test]
    fn three_problems() {
        let ps = classical_problems().unwrap();
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|p| !p.possible));
    }
}
