//! Recursive-descent parser for expressions over `n`, `θ`/`t` and `K`.

use num_bigint::BigInt;

use super::field::FieldElem;
use super::mpoly::MPoly;
use super::upoly::Q;
use crate::error::{Error, Result};

pub fn parse_expr(s: &str) -> Result<FieldElem> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected `{:?}` in `{s}`", p.tokens[p.pos])));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(text.parse().unwrap()));
            }
            'n' => out.push(Tok::Var(super::mpoly::VAR_N)),
            'θ' | 't' => out.push(Tok::Var(super::mpoly::VAR_THETA)),
            'K' => out.push(Tok::Var(super::mpoly::VAR_K)),
            '+' | '-' | '*' | '·' | '/' | '^' | '(' | ')' => out.push(Tok::Op(if c == '·' { '*' } else { c })),
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_op() {
                Some(op @ ('*' | '/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if op == '*' {
                        acc = &acc * &rhs;
                    } else {
                        if rhs.is_zero() {
                            return Err(Error::Parse("division by zero".into()));
                        }
                        acc = &acc / &rhs;
                    }
                }
                // juxtaposition: `θ(θ+K)` or `2n`
                Some('(') => {
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                None if matches!(self.tokens.get(self.pos), Some(Tok::Var(_)) | Some(Tok::Num(_))) => {
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) => u32::try_from(e.clone()).map_err(|_| Error::Parse("exponent too large".into()))?,
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            self.pos += 1;
            let mut acc = FieldElem::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElem> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(FieldElem::from_q(Q::from_integer(v)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(FieldElem::from_poly(MPoly::var(v)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
