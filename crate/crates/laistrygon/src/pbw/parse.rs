//! Parser for the element grammar: terms joined by `+`/`-`, each term an
//! optional scalar coefficient times a product of generator powers, e.g.
//! `x2*x1 - x1*x2 + (1/2)*x1^2`. Parenthesized groups are scalar
//! subexpressions in the scalars grammar.

use super::{Gen, NCPoly, Word};
use crate::error::{Error, Result};
use crate::scalars::parse::{lex, Tok};
use crate::scalars::{FieldElem, QSpec};

struct EParser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    mode: QSpec,
    ghost: u32,
}

impl<'a> EParser<'a> {
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

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn parse_gen(&self, name: &str) -> Option<Result<Gen>> {
        match name {
            "x1" => Some(Ok(Gen::X1)),
            "x2" => Some(Ok(Gen::X2)),
            _ => {
                let n: u32 = name.strip_prefix('z')?.parse().ok()?;
                if n > self.ghost {
                    Some(Err(Error::IndexOutOfRange(format!(
                        "z{n} does not exist for ghost = {}",
                        self.ghost
                    ))))
                } else {
                    Some(Ok(Gen::Z(n)))
                }
            }
        }
    }

    fn element(&mut self) -> Result<NCPoly> {
        let mut acc = self.signed_term(false)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.signed_term(false)?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.add(&self.signed_term(true)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self, mut negate: bool) -> Result<NCPoly> {
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = !negate;
        }
        let mut coeff = FieldElem::one(&self.mode);
        let mut word: Vec<Gen> = Vec::new();
        loop {
            self.atom(&mut coeff, &mut word, false)?;
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Slash) => {
                    self.bump();
                    self.atom(&mut coeff, &mut word, true)?;
                    match self.peek() {
                        Some(Tok::Star) => {
                            self.bump();
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        if negate {
            coeff = coeff.neg();
        }
        let mut p = NCPoly::zero(&self.mode);
        p.add_term(Word(word), coeff);
        Ok(p)
    }

    /// One multiplicative atom: either a generator power appended to the
    /// word, or a scalar merged into the coefficient (divided when
    /// `dividing`).
    fn atom(&mut self, coeff: &mut FieldElem, word: &mut Vec<Gen>, dividing: bool) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Ident(id)) if self.parse_gen(&id).is_some() => {
                if dividing {
                    return Err(self.err("cannot divide by a generator"));
                }
                self.bump();
                let g = self.parse_gen(&id).unwrap()?;
                let e = self.optional_exponent()?.unwrap_or(1);
                if e < 0 {
                    return Err(self.err("generator exponent must be nonnegative"));
                }
                word.extend(std::iter::repeat(g).take(e as usize));
                Ok(())
            }
            _ => {
                let v = self.scalar_power()?;
                if dividing {
                    *coeff = coeff.div(&v)?;
                } else {
                    *coeff = coeff.mul(&v)?;
                }
                Ok(())
            }
        }
    }

    fn optional_exponent(&mut self) -> Result<Option<i64>> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(None);
        }
        self.bump();
        let neg = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: i64 = n
                    .try_into()
                    .map_err(|_| self.err("exponent too large"))?;
                Ok(Some(if neg { -e } else { e }))
            }
            _ => Err(self.err("expected integer exponent after '^'")),
        }
    }

    // ---- scalar subgrammar ----

    fn scalar_power(&mut self) -> Result<FieldElem> {
        let base = self.scalar_primary()?;
        match self.optional_exponent()? {
            Some(e) => base.pow(e),
            None => Ok(base),
        }
    }

    fn scalar_primary(&mut self) -> Result<FieldElem> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(FieldElem::from_bigint(n, &self.mode)),
            Some(Tok::Ident(id)) if id == "q" => Ok(FieldElem::q(&self.mode)),
            Some(Tok::LParen) => {
                let v = self.scalar_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(self.err("unclosed parenthesis")),
                }
            }
            Some(Tok::Ident(id)) => Err(self.err(format!("unknown symbol '{id}'"))),
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }

    fn scalar_expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.scalar_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.scalar_term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.scalar_term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_term(&mut self) -> Result<FieldElem> {
        let mut acc = self.scalar_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.scalar_unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.scalar_unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_unary(&mut self) -> Result<FieldElem> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.scalar_unary()?.neg());
        }
        self.scalar_power()
    }
}

/// Parse an element of the algebra from the element grammar.
pub fn parse_element(input: &str, ghost: u32, mode: &QSpec) -> Result<NCPoly> {
    let toks = lex(input)?;
    let mut p = EParser {
        toks: &toks,
        pos: 0,
        end: input.len(),
        mode: mode.clone(),
        ghost,
    };
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty element expression".into(),
        });
    }
    let e = p.element()?;
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
    use crate::pbw::{normal_form, AlgebraParams};

    #[test]
    fn parses_jordan_relation() {
        let m = QSpec::Generic;
        let p = parse_element("x2*x1 - x1*x2 + (1/2)*x1^2", 1, &m).unwrap();
        let params = AlgebraParams::new(1, m).unwrap();
        assert!(normal_form(&p, &params).unwrap().is_zero());
    }

    #[test]
    fn roundtrip_print_parse() {
        let m = QSpec::Generic;
        let params = AlgebraParams::new(2, m.clone()).unwrap();
        for src in [
            "x1*x2 - (1/2)*x1^2",
            "(1/q)*x2*z0 - (1/q)*z1",
            "z2*z1*z0",
            "q^2*x1 + 3",
            "x2^3",
        ] {
            let p = parse_element(src, 2, &m).unwrap();
            let nf = normal_form(&p, &params).unwrap();
            let printed = nf.to_string();
            let back = parse_element(&printed, 2, &m).unwrap();
            assert_eq!(back, nf, "roundtrip failed for {printed}");
        }
    }

    #[test]
    fn rejects_out_of_range_generator() {
        let m = QSpec::Generic;
        assert!(matches!(
            parse_element("z3", 2, &m),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn rejects_division_by_generator() {
        let m = QSpec::Generic;
        assert!(parse_element("x1/x2", 1, &m).is_err());
    }
}
