use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PolyRing, Polynomial};
use crate::error::PolyError;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                // decimal or float syntax is not a coefficient we accept
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                return Err(PolyError::BadCoefficient(text[start..j].to_string()));
            }
            if i < bytes.len() && ((bytes[i] as char).is_ascii_alphabetic() || bytes[i] == b'_') {
                return Err(PolyError::Syntax {
                    pos: i,
                    msg: "juxtaposition is not multiplication; use `*`".into(),
                });
            }
            out.push((start, Tok::Int(text[start..i].to_string())));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => return Err(PolyError::BadCoefficient(text[start..].split_whitespace().next().unwrap_or(".").to_string())),
            _ => {
                return Err(PolyError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing<F>>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := power ('*' power)*
    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    // power := atom ('^' ['-'] int)?
    fn power(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let negative = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek().cloned() {
                Some(Tok::Int(s)) => {
                    self.pos += 1;
                    let e: i64 = s.parse().map_err(|_| PolyError::Syntax {
                        pos: self.offset(),
                        msg: format!("exponent `{s}` too large"),
                    })?;
                    return base.checked_pow(if negative { -e } else { e });
                }
                _ => return self.err("expected an integer exponent after `^`"),
            }
        }
        Ok(base)
    }

    // atom := int ['/' int] | ident | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
                let mut literal = num.clone();
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) => {
                            self.pos += 1;
                            literal = format!("{num}/{den}");
                            let den: BigInt = den.parse().expect("digits");
                            if den.is_zero() {
                                return Err(PolyError::BadCoefficient(literal));
                            }
                            value /= BigRational::from_integer(den);
                        }
                        _ => return Err(PolyError::BadCoefficient(format!("{num}/..."))),
                    }
                }
                let field = self.ring.field();
                let c = field
                    .from_rational(&value)
                    .ok_or(PolyError::BadCoefficient(literal))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or(PolyError::UnknownVariable(name))?;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Slash) => self.err("`/` is only allowed inside a rational literal"),
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial over `ring`.
///
/// Grammar: integer or rational literals (`3`, `-2/5`), identifiers naming
/// ring variables, binary `+ - *`, `^` with a non-negative integer exponent and
/// parentheses. Multiplication must be written explicitly.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>, PolyError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}
