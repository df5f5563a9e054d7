use super::{MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Parses the catalog polynomial grammar: integers, identifiers
/// `[a-z][a-z0-9]*`, binary `+ - *`, unary minus and parentheses.
/// Whitespace is ignored. There is deliberately no division.
pub fn parse_poly(src: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.unexpected());
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            Some('/') => self.error("division is not part of the polynomial grammar"),
            Some(c) => self.error(&format!("unexpected character `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        match self.peek() {
            Some(c) if Self::is_minus(c) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(match self.peek() {
                        None => self.error("missing `)`"),
                        Some(_) => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt =
                    digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MultiPoly::constant(Rational::from_int(n)))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(MultiPoly::var(&name))
            }
            _ => Err(self.unexpected()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let a = parse_poly("-x*y + 2*(x - 1)").unwrap();
        let b = parse_poly("2*x - 2 - y*x").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("--3").unwrap(), MultiPoly::from_i64(3));
    }

    #[test]
    fn identifiers_with_digits() {
        let p = parse_poly("a1*a1 - b22").unwrap();
        assert_eq!(p.vars(), &["a1".to_string(), "b22".to_string()]);
    }

    #[test]
    fn rejects_division() {
        match parse_poly("1/f") {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (1, 2));
                assert!(message.contains("division"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("X").is_err());
        assert!(parse_poly("x y").is_err());
    }
}
