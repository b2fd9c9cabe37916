//! Recursive-descent parser for the polynomial and element text syntax.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := power (('*'|'/') power)*
//! power    := atom ['^' exponent]
//! atom     := integer | name | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer ['^' integer]] ')'
//! ```
//!
//! Names are the ring variables, plus `t` over the perfection of F_p(t) and
//! `w` over F_{p^n}. Fractional exponents must have a power of `p` as
//! denominator; `f^(a/p^e)` means the `p^e`-th root of `f^a`. Division is only
//! by nonzero constants.

use crate::error::ParseError;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::FracPolynomial;

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: FieldSpec,
    names: &'a [String],
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset + 1, |nl| offset - nl);
    (line, col)
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        let (line, col) = position(self.text, offset);
        ParseError::new(line, col, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error(start, "integer too large"))
    }

    fn expr(&mut self) -> Result<FracPolynomial, ParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
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

    fn term(&mut self) -> Result<FracPolynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.power()?;
                let c = rhs
                    .as_constant()
                    .ok_or_else(|| self.error(at, "division by a non-constant"))?;
                let inv = c.inv().map_err(|_| self.error(at, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<(i64, u64), ParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let num = self.integer()? as i64;
            let mut den = 1u64;
            if self.eat(b'/') {
                den = self.integer()?;
                if self.eat(b'^') {
                    let at = self.pos;
                    let k = self.integer()?;
                    den = u32::try_from(k)
                        .ok()
                        .and_then(|k| den.checked_pow(k))
                        .ok_or_else(|| self.error(at, "exponent denominator too large"))?;
                }
            }
            self.expect(b')')?;
            Ok((if neg { -num } else { num }, den))
        } else {
            let neg = self.eat(b'-');
            let num = self.integer()? as i64;
            Ok((if neg { -num } else { num }, 1))
        }
    }

    fn power(&mut self) -> Result<FracPolynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let (num, den) = self.exponent()?;
        if den == 0 {
            return Err(self.error(at, "zero denominator"));
        }
        let p = self.field.characteristic() as u64;
        let mut level = 0u32;
        let mut d = den;
        while d % p == 0 {
            d /= p;
            level += 1;
        }
        if d != 1 {
            return Err(self.error(at, format!("exponent denominator {den} is not a power of {p}")));
        }
        let base = if num < 0 {
            let c = base
                .as_constant()
                .ok_or_else(|| self.error(at, "negative power of a non-constant"))?;
            let inv = c.inv().map_err(|_| self.error(at, "division by zero"))?;
            FracPolynomial::constant(inv, self.nvars())
        } else {
            base
        };
        Ok(base.pow(num.unsigned_abs()).frobenius_root(level))
    }

    fn atom(&mut self) -> Result<FracPolynomial, ParseError> {
        let n = self.nvars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let p = self.field.characteristic() as u64;
                let mut v = 0u64;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    v = (v * 10 + (self.bytes[self.pos] - b'0') as u64) % p;
                    self.pos += 1;
                }
                debug_assert!(self.pos > start);
                Ok(FracPolynomial::constant(
                    FieldElement::from_int(self.field, v as i64),
                    n,
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = &self.text[start..self.pos];
                if let Some(i) = self.names.iter().position(|x| x == ident) {
                    return Ok(FracPolynomial::var(self.field, n, i));
                }
                let c = match ident {
                    "t" => FieldElement::t(self.field),
                    "w" => FieldElement::generator(self.field),
                    _ => None,
                };
                c.map(|c| FracPolynomial::constant(c, n))
                    .ok_or_else(|| self.error(start, format!("unknown name `{ident}`")))
            }
            Some(c) => Err(self.error(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(self.error(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial in the named variables.
pub fn parse_polynomial(field: FieldSpec, names: &[String], text: &str) -> Result<FracPolynomial, ParseError> {
    let mut parser = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        field,
        names,
    };
    let out = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(parser.pos, "trailing input"));
    }
    Ok(out)
}

/// Parses a constant in the element syntax.
pub fn parse_element(field: FieldSpec, text: &str) -> Result<FieldElement, ParseError> {
    let f = parse_polynomial(field, &[], text)?;
    Ok(f.as_constant().expect("no variables were available"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_syntax() {
        let k = FieldSpec::perfect_rational(3).unwrap();
        let a = parse_element(k, "t^(1/3^2)").unwrap();
        assert_eq!(a, FieldElement::t_power(k, 1, 2).unwrap());
        assert_eq!(a.to_string(), "t^(1/9)");
        let b = parse_element(k, "(t + 1)/(t^2 + 1)").unwrap();
        assert_eq!(b.to_string(), "(t + 1)/(t^2 + 1)");
        assert_eq!(parse_element(k, "(t + 1)/(t^2 + 2)").unwrap().to_string(), "1/(t + 2)");
        let f4 = FieldSpec::extension(2, 2).unwrap();
        assert_eq!(parse_element(f4, "w^2").unwrap().to_string(), "w + 1");
        assert_eq!(
            parse_element(FieldSpec::prime(5).unwrap(), "-7").unwrap().as_prime(),
            Some(3)
        );
    }

    #[test]
    fn polynomial_round_trip() {
        let k = FieldSpec::perfect_rational(3).unwrap();
        let names: Vec<String> = (1..=3).map(|i| format!("x{i}")).collect();
        let f = parse_polynomial(k, &names, "3*t*x1^2*x2 - x3^(1/3) + t^(2/9)*x1").unwrap();
        let again = parse_polynomial(k, &names, &f.to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn errors_carry_positions() {
        let f = FieldSpec::prime(3).unwrap();
        let names = vec!["x1".to_string()];
        let e = parse_polynomial(f, &names, "x1 +\n  y").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_polynomial(f, &names, "x1^(1/2)").unwrap_err();
        assert!(e.msg.contains("power of 3"));
        assert!(parse_polynomial(f, &names, "x1 / x1").is_err());
        assert!(parse_polynomial(f, &names, "1/0").is_err());
        assert!(parse_polynomial(f, &names, "(x1").is_err());
        assert!(parse_polynomial(f, &names, "x1 x1").is_err());
        assert!(parse_polynomial(f, &names, "t").is_err());
    }
}
