//! Text syntax for polynomials: sums of terms like `3*x1^2*x2 - y`.
//!
//! `*` may be omitted between factors and `^1` is implied. Variable names
//! are matched greedily against the ring's declared names, so `x1x2` reads
//! as `x1*x2`. Parenthesized sub-expressions with exponents are accepted.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::poly::{PolyRing, Polynomial};

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

/// Parses `src` in `ring`. Parse errors report line 1 and a 1-based column.
pub fn parse_polynomial(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        pos: 0,
    };
    let f = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
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

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.product()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            first = false;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let mut acc = Polynomial::one(self.ring);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<u64>()
            .map_err(|_| {
                self.pos = start;
                self.error("integer out of range")
            })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.ring.field().characteristic() as u64;
                Ok(Polynomial::constant(self.ring, (v % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let rest = &self.src[self.pos..];
                let best = self
                    .ring
                    .names()
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        self.pos += n.len();
                        Ok(Polynomial::var(self.ring, i))
                    }
                    None => Err(self.error("unknown variable")),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{GroundField, MonomialOrder};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            GroundField::default(),
            vec!["x1".into(), "x2".into(), "y".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let r = ring();
        let f = parse_polynomial(&r, "3*x1^2*x2 - y + 2").unwrap();
        assert_eq!(f.to_string(), "3*x1^2*x2-y+2");
        let g = parse_polynomial(&r, "x1x2 y").unwrap();
        assert_eq!(g.to_string(), "x1*x2*y");
        let h = parse_polynomial(&r, "(x1+x2)^2").unwrap();
        assert_eq!(h.to_string(), "x1^2+2*x1*x2+x2^2");
        assert_eq!(parse_polynomial(&r, " 0 ").unwrap().to_string(), "0");
    }

    #[test]
    fn reports_column() {
        let r = ring();
        match parse_polynomial(&r, "x1 + z") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&r, "x1 +").is_err());
        assert!(parse_polynomial(&r, "x1 ^").is_err());
    }
}
