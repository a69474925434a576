//! Exact real-root counting by Sturm sequences.

use num_traits::{Signed, Zero};

use super::QPoly;
use crate::error::{Error, Result};
use crate::exactnum::Rat;

/// Where to evaluate a Sturm sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum SturmPoint {
    NegInfinity,
    PosInfinity,
    At(Rat),
}

/// `f, f', -rem(f, f'), …` down to a constant.
pub fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_at(p: &QPoly, at: &SturmPoint) -> i8 {
    let v = match at {
        SturmPoint::At(x) => p.eval(x),
        SturmPoint::PosInfinity => p.leading().cloned().unwrap_or_else(Rat::zero),
        SturmPoint::NegInfinity => {
            let lc = p.leading().cloned().unwrap_or_else(Rat::zero);
            if p.deg() % 2 == 1 {
                -lc
            } else {
                lc
            }
        }
    };
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign variations of the sequence at a point, zeros skipped.
pub fn sign_changes_at(seq: &[QPoly], at: &SturmPoint) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn check_squarefree(f: &QPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::invalid("Sturm sequence of the zero polynomial"));
    }
    if !f.is_constant() && !f.gcd(&f.derivative()).is_one() {
        return Err(Error::invalid(format!("{f} is not squarefree")));
    }
    Ok(())
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn sturm_real_roots(f: &QPoly) -> Result<usize> {
    check_squarefree(f)?;
    let seq = sturm_sequence(f);
    Ok(sign_changes_at(&seq, &SturmPoint::NegInfinity) - sign_changes_at(&seq, &SturmPoint::PosInfinity))
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn real_roots_in(f: &QPoly, a: &Rat, b: &Rat) -> Result<usize> {
    check_squarefree(f)?;
    let seq = sturm_sequence(f);
    let va = sign_changes_at(&seq, &SturmPoint::At(a.clone()));
    let vb = sign_changes_at(&seq, &SturmPoint::At(b.clone()));
    Ok(va.saturating_sub(vb))
}
