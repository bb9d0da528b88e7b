//! Parser for scalar expressions: integers, `i`, identifiers, `+ - * / ^`
//! and parentheses. `p/q` literals are ordinary division.

use num_bigint::BigInt;

use super::{GaussRat, Poly, Scalar};
use crate::error::ScalarError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, ScalarError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Token::Int(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            k += 1;
        } else {
            return Err(ScalarError::Parse(format!(
                "unexpected character '{}' in \"{}\"",
                c, text
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!("{} in \"{}\"", msg, self.text))
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.primary()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::constant(GaussRat::from_big(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    Ok(Scalar::constant(GaussRat::i()))
                } else {
                    Ok(Scalar::var(&name))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            Some(tok) => Err(self.err(&format!("unexpected token {:?}", tok))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a scalar expression such as `r11^2/(2*r11-1)` or `1/2+3/4*i`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ScalarError::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        text,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial; quotients by non-constants are rejected.
pub fn parse_poly(text: &str) -> Result<Poly, ScalarError> {
    let s = parse_scalar(text)?;
    s.as_poly()
        .cloned()
        .ok_or_else(|| ScalarError::Parse(format!("\"{}\" is not a polynomial", text)))
}
