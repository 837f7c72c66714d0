//! Canonical text form of polynomials.
//!
//! Rendering produces terms in descending order under a monomial order,
//! joined by `" + "` / `" - "`. A term is `c*x1^a1*...*xr^ar` with unit
//! exponents, zero exponents and unit coefficients elided; rationals print
//! as `p/q` and `F_p` coefficients as least non-negative residues (so no
//! minus signs appear over `F_p`). The zero polynomial is `0`.
//!
//! The parser accepts a superset of the rendered form:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | 'x' uint | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

pub fn render(f: &Polynomial, order: &MonomialOrder) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&render_term(&abs, m));
    }
    out
}

fn render_term(c: &Coeff, m: &Monomial) -> String {
    let mono = render_monomial(m);
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono
    } else {
        format!("{c}*{mono}")
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Parses a polynomial in the given ring.
pub fn parse(s: &str, ring: Ring) -> Result<Polynomial> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let k = self.uint()?;
                if k == BigInt::zero() || k > BigInt::from(self.ring.nvars) {
                    self.pos = start;
                    return Err(self.err(&format!("variable x{k} outside x1..x{}", self.ring.nvars)));
                }
                let i: usize = (&k - 1u32).try_into().expect("small index");
                Ok(Polynomial::var(self.ring, i))
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.uint()?;
                let c = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.uint()?;
                    self.ring.field.from_fraction(&num, &den).map_err(|e| self.err(&e.to_string()))?
                } else {
                    self.ring.field.from_bigint(&num)
                };
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let mut v = BigInt::zero();
        for d in digits.bytes() {
            v = v * 10u32 + u32::from(d - b'0');
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn q(n: usize) -> Ring {
        Ring::new(n, FieldConfig::Rationals)
    }

    #[test]
    fn renders_canonical_form() {
        let r = q(3);
        let f = parse("2 - x1*x3 + 3/4*x2^2 - x1^2", r).unwrap();
        assert_eq!(render(&f, &MonomialOrder::lex(3)), "-x1^2 - x1*x3 + 3/4*x2^2 + 2");
        assert_eq!(render(&f, &MonomialOrder::degrevlex(3)), "-x1^2 + 3/4*x2^2 - x1*x3 + 2");
        assert_eq!(render(&r.zero(), &MonomialOrder::lex(3)), "0");
        assert_eq!(parse("-1", r).unwrap().to_string(), "-1");
    }

    #[test]
    fn prime_field_residues() {
        let r = Ring::new(2, FieldConfig::prime(7).unwrap());
        let f = parse("x1 - 1 + 1/2*x2", r).unwrap();
        assert_eq!(f.to_string(), "x1 + 4*x2 + 6");
        assert!(parse("1/7", r).is_err());
    }

    #[test]
    fn parentheses_and_powers() {
        let r = q(2);
        let f = parse("(x1 + x2)^2 - -x2", r).unwrap();
        assert_eq!(f.to_string(), "x1^2 + 2*x1*x2 + x2^2 + x2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = q(2);
        assert!(matches!(parse("x3", r), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("x1 +", r), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("x1 x2", r), Err(Error::Parse { pos: 3, .. })));
        assert!(parse("1/0", r).is_err());
        assert!(parse("(x1", r).is_err());
        assert!(parse("", r).is_err());
    }
}
