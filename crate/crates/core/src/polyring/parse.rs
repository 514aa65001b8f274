//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := nat | ident | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Integer literals are reduced mod p.

use super::monomial::Monomial;
use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};

pub fn parse(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits()?;
            let e: u64 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
            if e > u16::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let k = self.ring.field();
                let p = k.modulus() as u64;
                let value = digits
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let i = self.ring.var_index(name).ok_or_else(|| Error::UnknownVariable {
                    name: name.to_string(),
                    offset: start,
                })?;
                Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var(self.ring.nvars(), i),
                    1,
                ))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, PolyRing};
    use proptest::prelude::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn negative_coefficients_reduce_mod_p() {
        let r = ring(3, &["x1", "x2", "x3", "x4", "x5"]);
        let g = parse("x1*x4 - x2*x4", &r).unwrap();
        assert_eq!(g.len(), 2);
        let x2x4 = Monomial::from_exponents(&[0, 1, 0, 1, 0]);
        assert_eq!(g.coefficient(&x2x4).value(), 2);
    }

    #[test]
    fn zero_and_freshman() {
        let r = ring(3, &["x", "y"]);
        assert!(parse("0", &r).unwrap().is_zero());
        assert_eq!(parse("(x+y)^3", &r).unwrap(), parse("x^3 + y^3", &r).unwrap());
        assert_eq!(parse(" 3*x + 1 ", &r).unwrap(), parse("1", &r).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring(3, &["x", "y"]);
        assert_eq!(
            parse("x + zz", &r),
            Err(Error::UnknownVariable {
                name: "zz".into(),
                offset: 4
            })
        );
        assert!(matches!(
            parse("x + * y", &r),
            Err(Error::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse("(x + y", &r),
            Err(Error::Syntax { offset: 6, .. })
        ));
        assert!(matches!(parse("x y", &r), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("", &r), Err(Error::Syntax { offset: 0, .. })));
        assert_eq!(parse("x^70000", &r), Err(Error::ExponentOverflow));
        assert_eq!(parse("x^40000*x^40000", &r), Err(Error::ExponentOverflow));
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Polynomial> {
        let r = ring(p, &["x", "y", "z"]);
        proptest::collection::vec((proptest::collection::vec(0u16..5, 3), 0u32..p as u32), 0..6).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    &r,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(&e), c))
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(g in prop_oneof![arb_poly(2), arb_poly(3), arb_poly(7)]) {
            let printed = g.to_string();
            let back = parse(&printed, g.ring()).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}
