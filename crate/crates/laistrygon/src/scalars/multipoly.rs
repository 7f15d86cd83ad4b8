//! Small commutative multivariate polynomials over `FieldElem`, used for
//! the constraint systems on the point-module ratio variables.

use super::field::{FieldElem, QSpec};
use crate::error::Result;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector: variable name -> positive exponent.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    mode: QSpec,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(mode: &QSpec) -> Self {
        MultiPoly {
            mode: mode.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let mode = c.mode().clone();
        let mut p = MultiPoly::zero(&mode);
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn one(mode: &QSpec) -> Self {
        MultiPoly::constant(FieldElem::one(mode))
    }

    pub fn var(name: &str, mode: &QSpec) -> Self {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut p = MultiPoly::zero(mode);
        p.add_term(m, FieldElem::one(mode));
        p
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElem> {
        &self.terms
    }

    fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("same mode");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            mode: self.mode.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero(&self.mode);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, c1.mul(c2).expect("same mode"));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.mode);
        }
        MultiPoly {
            mode: self.mode.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c).expect("same mode")))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(&self.mode);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute a polynomial for every occurrence of the named variable.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Result<Self> {
        let mut out = MultiPoly::zero(&self.mode);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(name).unwrap_or(0);
            let mut term = MultiPoly {
                mode: self.mode.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            if e > 0 {
                term = term.mul(&value.pow(e));
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in m {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
