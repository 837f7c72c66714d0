//! Prefix token encoding of polynomials.
//!
//! | token        | meaning                                   |
//! |--------------|-------------------------------------------|
//! | `+`, `*`     | binary sum / product, right-nested        |
//! | `^`          | power: `^ xk C<e>`                        |
//! | `/`          | rational constant: `/ C<p> C<q>`          |
//! | `xk`         | variable `k` (1-based)                    |
//! | `C<int>`     | integer constant, e.g. `C-3`; `C0` is zero |
//! | `<sep>`      | separates polynomials of one system       |
//! | `<io>`       | separates the `F` system from `G`         |
//!
//! Terms appear in descending Lex order; a unit coefficient is omitted.
//! Residues in `F_p` are written as integers in `[0, p)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

pub const SEP: &str = "<sep>";
pub const IO: &str = "<io>";

fn push_coeff(c: &Coeff, out: &mut Vec<String>) {
    match c {
        Coeff::Q(q) if q.is_integer() => out.push(format!("C{}", q.numer())),
        Coeff::Q(q) => {
            out.push("/".into());
            out.push(format!("C{}", q.numer()));
            out.push(format!("C{}", q.denom()));
        }
        Coeff::Fp(z) => out.push(format!("C{}", z.value())),
    }
}

fn push_term(m: &Monomial, c: &Coeff, out: &mut Vec<String>) {
    let mut factors: Vec<Vec<String>> = Vec::new();
    if !c.is_one() || m.is_one() {
        let mut t = Vec::new();
        push_coeff(c, &mut t);
        factors.push(t);
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(vec![format!("x{}", i + 1)]),
            _ => factors.push(vec!["^".into(), format!("x{}", i + 1), format!("C{e}")]),
        }
    }
    let k = factors.len();
    for (j, f) in factors.into_iter().enumerate() {
        if j + 1 < k {
            out.push("*".into());
        }
        out.extend(f);
    }
}

pub fn polynomial_tokens(f: &Polynomial) -> Vec<String> {
    if f.is_zero() {
        return vec!["C0".into()];
    }
    let mut out = Vec::new();
    let k = f.nterms();
    for (j, (m, c)) in f.terms().rev().enumerate() {
        if j + 1 < k {
            out.push("+".into());
        }
        push_term(m, c, &mut out);
    }
    out
}

pub fn system_tokens(fs: &[Polynomial]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        if i > 0 {
            out.push(SEP.into());
        }
        out.extend(polynomial_tokens(f));
    }
    out
}

/// `tokens(F) <io> tokens(G)`.
pub fn record_tokens(f: &[Polynomial], g: &[Polynomial]) -> Vec<String> {
    let mut out = system_tokens(f);
    out.push(IO.into());
    out.extend(system_tokens(g));
    out
}

struct Decoder<'a> {
    toks: &'a [String],
    pos: usize,
    ring: Ring,
}

impl Decoder<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn next(&mut self) -> Result<&str> {
        let t = self.toks.get(self.pos).ok_or_else(|| self.err("unexpected end of tokens"))?;
        self.pos += 1;
        Ok(t)
    }

    fn int(&mut self) -> Result<BigInt> {
        let t = self.next()?.to_string();
        t.strip_prefix('C')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err(format!("expected integer token, got {t:?}")))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let t = self.next()?.to_string();
        match t.as_str() {
            "+" => Ok(&self.expr()? + &self.expr()?),
            "*" => Ok(&self.expr()? * &self.expr()?),
            "^" => {
                let base = self.expr()?;
                let e = self.int()?;
                let e = u32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
                Ok(base.pow(e))
            }
            "/" => {
                let (p, q) = (self.int()?, self.int()?);
                let c = self.ring.field.from_fraction(&p, &q).map_err(|e| self.err(e.to_string()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            _ => {
                if let Some(k) = t.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
                    if k == 0 || k > self.ring.nvars {
                        return Err(self.err(format!("variable {t} outside the ring")));
                    }
                    return Ok(Polynomial::var(self.ring, k - 1));
                }
                self.pos -= 1;
                let c = self.int()?;
                Ok(Polynomial::constant(self.ring, self.ring.field.from_bigint(&c)))
            }
        }
    }
}

/// Inverse of [`polynomial_tokens`].
pub fn decode_polynomial(toks: &[String], ring: Ring) -> Result<Polynomial> {
    let mut d = Decoder { toks, pos: 0, ring };
    let f = d.expr()?;
    if d.pos != toks.len() {
        return Err(d.err("trailing tokens"));
    }
    Ok(f)
}

/// Inverse of [`record_tokens`]: returns `(F, G)`.
pub fn decode_record(toks: &[String], ring: Ring) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    let split = toks
        .iter()
        .position(|t| t == IO)
        .ok_or_else(|| Error::Parse { pos: toks.len(), msg: "missing <io>".into() })?;
    let system = |part: &[String]| {
        part.split(|t| t == SEP).map(|p| decode_polynomial(p, ring)).collect::<Result<Vec<_>>>()
    };
    Ok((system(&toks[..split])?, system(&toks[split + 1..])?))
}

/// Whether `t` belongs to the vocabulary (constants of any value allowed).
pub fn is_vocabulary_token(t: &str) -> bool {
    matches!(t, "+" | "*" | "^" | "/" | SEP | IO)
        || t.strip_prefix('x').is_some_and(|k| k.parse::<usize>().is_ok_and(|k| k >= 1))
        || t.strip_prefix('C').is_some_and(|k| k.parse::<BigInt>().is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::parse::parse;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn encodes_small_polynomials() {
        let r = Ring::new(2, FieldConfig::Rationals);
        let p = |s| polynomial_tokens(&parse(s, r).unwrap());
        assert_eq!(p("0"), toks("C0"));
        assert_eq!(p("x1"), toks("x1"));
        assert_eq!(p("-3"), toks("C-3"));
        assert_eq!(p("x1^2*x2 - 1/2"), toks("+ * ^ x1 C2 x2 / C-1 C2"));
        assert_eq!(p("2*x1*x2^3 + x2 + 1"), toks("+ * C2 * x1 ^ x2 C3 + x2 C1"));
    }

    #[test]
    fn record_layout_and_round_trip() {
        let r = Ring::new(2, FieldConfig::prime(7).unwrap());
        let f = vec![parse("x1 + 6", r).unwrap(), r.zero()];
        let g = vec![parse("3*x2^2", r).unwrap()];
        let t = record_tokens(&f, &g);
        assert_eq!(t, toks("+ x1 C6 <sep> C0 <io> * C3 ^ x2 C2"));
        assert!(t.iter().all(|s| is_vocabulary_token(s)));
        assert_eq!(decode_record(&t, r).unwrap(), (f, g));
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::new(1, FieldConfig::Rationals);
        assert!(decode_polynomial(&toks("+ x1"), r).is_err());
        assert!(decode_polynomial(&toks("x2"), r).is_err());
        assert!(decode_polynomial(&toks("x1 x1"), r).is_err());
        assert!(decode_record(&toks("x1"), r).is_err());
        assert!(!is_vocabulary_token("y1"));
    }
}
