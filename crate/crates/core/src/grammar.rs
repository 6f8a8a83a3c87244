//! Text form of polynomials.
//!
//! Rationals are written `a` or `a/b`, variables `l1, l2, ...` (cochain
//! variables), `l`, `mu` and `d` (the derivation), with `+ - * / ^` and
//! parentheses, e.g. `(2/3)*l1^2*d - l2`. [`format_poly`] produces the
//! canonical spelling and [`parse_poly`] reads it back exactly.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Poly, Var};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based column of the offending token.
    pub column: usize,
    pub message: String,
}

pub fn format_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn format_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        format_rational(c)
    } else {
        format!("({})", format_rational(c))
    }
}

/// Canonical spelling, largest monomial first.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_coefficient(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(m));
        } else {
            out.push_str(&format_coefficient(&abs));
            out.push('*');
            out.push_str(&format_monomial(m));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                toks.push((
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                    col,
                ));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(text.parse().expect("digits")), col));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let v = match word.as_str() {
                    "l" => Var::AuxLambda,
                    "mu" => Var::AuxMu,
                    "d" => Var::Partial,
                    w if w.len() > 1 && w.starts_with('l') => {
                        let idx: u32 = w[1..]
                            .parse()
                            .map_err(|_| err(col, format!("unknown variable `{w}`")))?;
                        if idx == 0 {
                            return Err(err(col, "lambda variables are numbered from 1"));
                        }
                        Var::Lambda(idx)
                    }
                    w => return Err(err(col, format!("unknown variable `{w}`"))),
                };
                toks.push((Tok::Var(v), col));
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
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
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(err(col, "division by zero")),
                        None => return Err(err(col, "division by a non-constant")),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(col, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(err(col, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.col(), "expected `)`")),
                }
            }
            Some(t) => Err(err(col, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<Poly, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: s.chars().count() + 1,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn formats_the_documented_example() {
        let p = parse_poly("(2/3)*l1^2*d - l2").unwrap();
        assert_eq!(format_poly(&p), "(2/3)*l1^2*d - l2");
        let q = &Poly::lambda(1)
            .pow(2)
            .scale(&ratio(2, 3))
            * &Poly::var(Var::Partial);
        assert_eq!(p, &q - &Poly::lambda(2));
    }

    #[test]
    fn expands_products_and_powers() {
        let p = parse_poly("(l1 + 1)^2 - 2*l1").unwrap();
        assert_eq!(format_poly(&p), "l1^2 + 1");
        assert_eq!(format_poly(&parse_poly("-3/6*mu*l").unwrap()), "-(1/2)*l*mu");
        assert_eq!(format_poly(&parse_poly("0*l1").unwrap()), "0");
        assert_eq!(format_poly(&parse_poly("-7").unwrap()), "-7");
    }

    #[test]
    fn reports_columns() {
        let e = parse_poly("l1 + x").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse_poly("l1 / l2").is_err());
        assert!(parse_poly("l0").is_err());
        assert!(parse_poly("(l1").is_err());
        assert!(parse_poly("").is_err());
    }
}
