use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ExactError, FieldElement};

/// Recursive-descent parser for expressions over integers, `/`, `sqrt(..)` and `i`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<(), ExactError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<FieldElement, ExactError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, ExactError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.checked_div(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FieldElement, ExactError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(FieldElement::from_rational(BigRational::from_integer(n)))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(FieldElement::i())
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                let r = arg.as_rational().ok_or_else(|| self.err("sqrt argument must be rational"))?;
                Ok(FieldElement::sqrt_rational(&r))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl FromStr for FieldElement {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parses_table_entries() {
        let w: FieldElement = "-1/2 - sqrt(3)/2*i".parse().unwrap();
        assert_eq!(w.re(), FieldElement::from_rational(rat(-1, 2)));
        assert_eq!((&w * &w.conj()), FieldElement::one());
        let x: FieldElement = "sqrt(8/3)".parse().unwrap();
        assert_eq!(x, "2/3*sqrt(6)".parse().unwrap());
        let y: FieldElement = "(1 + sqrt(2))*(1 - sqrt(2))".parse().unwrap();
        assert_eq!(y, FieldElement::from_int(-1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!("sqrt(sqrt(2))".parse::<FieldElement>().is_err());
        assert!("1 +".parse::<FieldElement>().is_err());
        assert!("2 3".parse::<FieldElement>().is_err());
        assert!("1/0".parse::<FieldElement>().is_err());
    }
}
