//! Evaluation of the small polynomial expressions used by the family
//! registry, such as `x^4-(t+8)x^3+(6t+19)x^2-(7t+16)x+4` or `t1+t2-2`.
//!
//! Juxtaposition multiplies, `^` takes a nonnegative constant exponent,
//! `x` is the polynomial variable and every other identifier is looked up
//! in the parameter map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Caret,
    Open,
    Close,
}

fn bad(src: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidSpec(format!("template `{src}`: {msg}"))
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '*' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '^' => out.push(Token::Caret),
            '(' | '[' | '{' => out.push(Token::Open),
            ')' | ']' | '}' => out.push(Token::Close),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            'a'..='z' | 'A'..='Z' => {
                // An identifier is one letter plus trailing digits, so `6t`
                // and `t1x` split the way the tables read.
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..=i].iter().collect()));
            }
            other => return Err(bad(src, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    params: &'a BTreeMap<String, i64>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = IntPolynomial::zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Token::Num(_) | Token::Ident(_) | Token::Open)) {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.atom()?;
        let e = constant_of(&e)
            .and_then(|v| v.to_u32())
            .ok_or_else(|| bad(self.src, "exponent must be a nonnegative constant"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        let tok = self.peek().cloned().ok_or_else(|| bad(self.src, "unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(IntPolynomial::constant(v)),
            Token::Ident(name) if name == "x" => Ok(IntPolynomial::monomial(1.into(), 1)),
            Token::Ident(name) => self
                .params
                .get(&name)
                .map(|&v| IntPolynomial::constant(v.into()))
                .ok_or_else(|| bad(self.src, format!("unknown parameter `{name}`"))),
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(bad(self.src, "unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(bad(self.src, format!("unexpected {other:?}"))),
        }
    }
}

fn constant_of(p: &IntPolynomial) -> Option<BigInt> {
    match p.degree() {
        None => Some(BigInt::zero()),
        Some(0) => Some(p.coeff(0)),
        Some(_) => None,
    }
}

/// Evaluates a template to a polynomial in `x`.
pub fn eval_poly(src: &str, params: &BTreeMap<String, i64>) -> Result<IntPolynomial> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(bad(src, "empty expression"));
    }
    let mut p = Parser {
        src,
        tokens,
        pos: 0,
        params,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(bad(src, format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Evaluates a template that must not involve `x`.
pub fn eval_int(src: &str, params: &BTreeMap<String, i64>) -> Result<i64> {
    let p = eval_poly(src, params)?;
    constant_of(&p)
        .and_then(|v| v.to_i64())
        .ok_or_else(|| bad(src, "expected an integer expression"))
}
