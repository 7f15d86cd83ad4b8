//! Parser for the scalar grammar: integers, `a/b`, and polynomial
//! expressions in `q` built from `+ - * / ^ ( )`.

use super::field::{FieldElem, QSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn lex(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    mode: QSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldElem> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: i64 = n.try_into().map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return base.pow(e);
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected integer exponent after '^'".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<FieldElem> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(FieldElem::from_bigint(n, &self.mode)),
            Some(Tok::Ident(id)) if id == "q" => Ok(FieldElem::q(&self.mode)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(Tok::Ident(id)) => Err(Error::Parse {
                pos,
                msg: format!("unknown symbol '{id}' in scalar expression"),
            }),
            other => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse a scalar expression in the given mode.
pub fn parse_scalar(input: &str, mode: &QSpec) -> Result<FieldElem> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: input.len(),
        mode: mode.clone(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse {
            pos: p.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_forms() {
        let m = QSpec::Generic;
        let q = FieldElem::q(&m);
        assert_eq!(parse_scalar("q^2 - 1", &m).unwrap(),
            q.pow(2).unwrap().sub(&FieldElem::one(&m)).unwrap());
        assert_eq!(parse_scalar("1/2", &m).unwrap(),
            FieldElem::from_ratio(1, 2, &m).unwrap());
        assert_eq!(parse_scalar("(q^2 - 1)/(q - 1)", &m).unwrap(),
            q.add(&FieldElem::one(&m)).unwrap());
        assert_eq!(parse_scalar("-q", &m).unwrap(), q.neg());
    }

    #[test]
    fn roundtrip_print_parse() {
        let m = QSpec::Generic;
        let q = FieldElem::q(&m);
        let samples = [
            q.clone(),
            q.inv().unwrap(),
            q.pow(3).unwrap().sub(&FieldElem::from_ratio(5, 7, &m).unwrap()).unwrap(),
            q.add(&FieldElem::one(&m)).unwrap().div(&q.sub(&FieldElem::from_int(2, &m)).unwrap()).unwrap(),
            FieldElem::from_int(-3, &m),
            q.pow(-4).unwrap().mul(&FieldElem::from_int(2, &m)).unwrap(),
        ];
        for x in &samples {
            let printed = x.to_string();
            let back = parse_scalar(&printed, &m).unwrap();
            assert_eq!(&back, x, "roundtrip failed for {printed}");
        }
    }

    #[test]
    fn parse_error_has_position() {
        let m = QSpec::Generic;
        match parse_scalar("q + #", &m) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
