//! Polynomial expression parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary | implicit)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | '(' expr ')'
//! ```
//!
//! Implicit multiplication is allowed after a numeric literal (`2x`,
//! `3(x+1)`). A literal `a/b` is a single coefficient, so `1/2x^2` is
//! `(1/2)*x^2`.

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::field::Field;
use crate::poly::Poly;

/// Parses `src` as a polynomial in `x` over `field`. Rational literals are
/// mapped into the field, so under a prime field `a/b` means `a·b⁻¹`.
pub fn parse_poly<F: Field>(src: &str, field: &F) -> Result<Poly<F>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty input"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    field: &'a F,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let (mut acc, mut numeric) = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let (u, n) = self.unary()?;
                    acc = &acc * &u;
                    numeric = n;
                }
                Some(b'x' | b'(') if numeric => {
                    let (u, n) = self.unary()?;
                    acc = &acc * &u;
                    numeric = n;
                }
                Some(c) if c.is_ascii_digit() => return Err(self.error("missing operator before number")),
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the value and whether it ended in a bare numeric literal.
    fn unary(&mut self) -> Result<(Poly<F>, bool)> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let (u, n) = self.unary()?;
                Ok((-&u, n))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<(Poly<F>, bool)> {
        let (base, numeric) = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer().ok_or_else(|| self.error("exponent must be a nonnegative integer"))?;
            let e: usize = e
                .try_into()
                .ok()
                .filter(|&e: &usize| e <= 100_000)
                .ok_or(Error::Parse { pos: start, msg: "exponent too large".into() })?;
            return Ok((base.pow(e), false));
        }
        Ok((base, numeric))
    }

    fn atom(&mut self) -> Result<(Poly<F>, bool)> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((Poly::x(self.field.clone()), false))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok((v, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.integer().expect("digit present");
                let mut r = Rat::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer().ok_or_else(|| self.error("expected denominator"))?;
                    if d == Int::from(0) {
                        return Err(Error::Parse { pos: start, msg: "zero denominator".into() });
                    }
                    r /= Rat::from_integer(d);
                }
                let c = self.field.from_rat(&r).ok_or(Error::Parse {
                    pos: start,
                    msg: format!("{r} is not defined in this field"),
                })?;
                Ok((Poly::constant(self.field.clone(), c), true))
            }
            Some(c) => Err(self.error(&format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Option<Int> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::QPoly;

    fn q(s: &str) -> QPoly {
        parse_poly(s, &Rationals).unwrap()
    }

    #[test]
    fn basics() {
        assert_eq!(q("x^5 - 80*x + 5"), QPoly::from_i64(&[5, -80, 0, 0, 0, 1]));
        assert_eq!(q("(x^2-2)*(x^2-3)"), QPoly::from_i64(&[6, 0, -5, 0, 1]));
        assert_eq!(q("x"), QPoly::from_i64(&[0, 1]));
        assert_eq!(q("2x^2 + 3(x+1)"), QPoly::from_i64(&[3, 3, 2]));
        assert_eq!(q("-x^2"), QPoly::from_i64(&[0, 0, -1]));
        assert_eq!(q("1/2x"), QPoly::from_rats(vec![Rat::from_integer(0.into()), Rat::new(1.into(), 2.into())]));
        assert_eq!(q("8x^3-6x-1"), QPoly::from_i64(&[-1, -6, 0, 8]));
    }

    #[test]
    fn modular_literals() {
        let f5 = PrimeField::new(5).unwrap();
        let p = parse_poly("1/2*x + 1", &f5).unwrap();
        assert_eq!(p, Poly::from_ints(f5, &[1, 3]));
        assert!(matches!(parse_poly("x/5", &f5), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/5", &f5), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn errors_carry_positions() {
        for (src, pos) in [("x^", 2), ("x + ", 4), ("(x", 2), ("x y", 2), ("x^-1", 2), ("", 0), ("x 2", 2)] {
            match parse_poly(src, &Rationals) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["x^5 - 80*x + 5", "x^4 - 5*x^2 + 6", "1/2*x^3 - 7/3", "x", "-x^2 + 1"] {
            let p = q(s);
            assert_eq!(q(&p.to_string()), p);
        }
    }
}
