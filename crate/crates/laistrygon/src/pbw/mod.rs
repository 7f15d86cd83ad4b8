//! The free algebra on the generators of B(L_q(1, G)) and the
//! straightening rewriting system onto the PBW basis
//! x1^m1 x2^m2 z_G^nG ... z_1^n1 z_0^n0.
//!
//! The rewrite rules are oriented along the degree-lexicographic order
//! with x1 < x2 < z_G < ... < z_0; every rule strictly decreases that
//! order, so rewriting terminates. The commutations of x1 and of the z's
//! among themselves are installed as rules directly even though they are
//! derivable, which keeps straightening a single local step; the diamond
//! check in `confluence` certifies the enlarged system.

pub mod confluence;
pub mod hilbert;
pub mod identities;
pub mod parse;

use crate::error::{Error, Result};
use crate::scalars::{FieldElem, QSpec};
use std::collections::BTreeMap;
use std::fmt;

/// Default rewrite-step budget per normal-form call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The discrete and continuous parameters of B(L_q(1, G)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraParams {
    pub ghost: u32,
    pub q: QSpec,
}

impl AlgebraParams {
    pub fn new(ghost: u32, q: QSpec) -> Result<Self> {
        if ghost < 1 {
            return Err(Error::InvalidSpec("ghost must be >= 1".into()));
        }
        Ok(AlgebraParams { ghost, q })
    }

    pub fn q_elem(&self) -> FieldElem {
        FieldElem::q(&self.q)
    }

    /// All generators in PBW order.
    pub fn generators(&self) -> Vec<Gen> {
        let mut gens = vec![Gen::X1, Gen::X2];
        for n in (0..=self.ghost).rev() {
            gens.push(Gen::Z(n));
        }
        gens
    }
}

/// A generator of the algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    X1,
    X2,
    Z(u32),
}

impl Gen {
    /// Graded degree: deg x1 = deg x2 = 1, deg z_n = n + 1.
    pub fn degree(&self) -> u64 {
        match self {
            Gen::X1 | Gen::X2 => 1,
            Gen::Z(n) => *n as u64 + 1,
        }
    }

    /// Position in the PBW order x1 < x2 < z_G < ... < z_0.
    fn rank(&self) -> (u8, i64) {
        match self {
            Gen::X1 => (0, 0),
            Gen::X2 => (1, 0),
            Gen::Z(n) => (2, -(*n as i64)),
        }
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X1 => write!(f, "x1"),
            Gen::X2 => write!(f, "x2"),
            Gen::Z(n) => write!(f, "z{n}"),
        }
    }
}

/// A word in the free monoid on the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(Gen::degree).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Index of the first adjacent out-of-order pair, if any. A word with
    /// none is PBW-ordered.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn is_pbw_ordered(&self) -> bool {
        self.first_descent().is_none()
    }

    fn key(&self) -> (u64, usize, Vec<(u8, i64)>) {
        (
            self.degree(),
            self.0.len(),
            self.0.iter().map(Gen::rank).collect(),
        )
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Collapse runs into powers: x1*x1*x2 -> x1^2*x2.
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// An exponent tuple naming one PBW basis element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PBWMonomial {
    pub m1: u64,
    pub m2: u64,
    /// Exponents of z_0 .. z_G, indexed by n.
    pub n: Vec<u64>,
}

impl PBWMonomial {
    /// Graded degree m1 + m2 + sum (n+1) * n_n.
    pub fn degree(&self) -> u64 {
        self.m1
            + self.m2
            + self
                .n
                .iter()
                .enumerate()
                .map(|(k, e)| (k as u64 + 1) * e)
                .sum::<u64>()
    }

    pub fn to_word(&self) -> Word {
        let mut v = Vec::new();
        v.extend(std::iter::repeat(Gen::X1).take(self.m1 as usize));
        v.extend(std::iter::repeat(Gen::X2).take(self.m2 as usize));
        for n in (0..self.n.len()).rev() {
            v.extend(std::iter::repeat(Gen::Z(n as u32)).take(self.n[n] as usize));
        }
        Word(v)
    }

    /// Read the exponent tuple off a PBW-ordered word.
    pub fn from_word(w: &Word, ghost: u32) -> Option<Self> {
        if !w.is_pbw_ordered() {
            return None;
        }
        let mut m = PBWMonomial {
            m1: 0,
            m2: 0,
            n: vec![0; ghost as usize + 1],
        };
        for g in &w.0 {
            match g {
                Gen::X1 => m.m1 += 1,
                Gen::X2 => m.m2 += 1,
                Gen::Z(k) => {
                    if *k > ghost {
                        return None;
                    }
                    m.n[*k as usize] += 1;
                }
            }
        }
        Some(m)
    }
}

/// Finite linear combination of words with scalar coefficients; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly {
    mode: QSpec,
    terms: BTreeMap<Word, FieldElem>,
}

impl NCPoly {
    pub fn zero(mode: &QSpec) -> Self {
        NCPoly {
            mode: mode.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: &QSpec) -> Self {
        NCPoly::scalar(FieldElem::one(mode))
    }

    pub fn scalar(c: FieldElem) -> Self {
        let mode = c.mode().clone();
        let mut p = NCPoly::zero(&mode);
        p.add_term(Word::unit(), c);
        p
    }

    pub fn gen(g: Gen, mode: &QSpec) -> Self {
        let mut p = NCPoly::zero(mode);
        p.add_term(Word(vec![g]), FieldElem::one(mode));
        p
    }

    pub fn word(w: Word, mode: &QSpec) -> Self {
        let mut p = NCPoly::zero(mode);
        p.add_term(w, FieldElem::one(mode));
        p
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }

    pub fn terms(&self) -> &BTreeMap<Word, FieldElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            mode: self.mode.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut out = NCPoly::zero(&self.mode);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.mul(c).expect("same mode"));
        }
        out
    }

    /// Concatenation product in the free algebra; no rewriting.
    pub fn free_mul(&self, other: &Self) -> Self {
        let mut out = NCPoly::zero(&self.mode);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2).expect("same mode"));
            }
        }
        out
    }

    pub fn free_pow(&self, e: u32) -> Self {
        let mut acc = NCPoly::one(&self.mode);
        for _ in 0..e {
            acc = acc.free_mul(self);
        }
        acc
    }

    /// Maximum word degree, when nonzero.
    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().map(Word::degree).max()
    }

    /// True if every word has the same degree d (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Word::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            let (neg, mag) = coeff_sign_split(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let cs = coeff_str(&mag);
            if w.0.is_empty() {
                write!(f, "{cs}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{cs}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Split a canonical scalar into a sign and its magnitude. The sign is the
/// sign of the numerator's leading integer (denominators are canonically
/// positive).
fn coeff_sign_split(c: &FieldElem) -> (bool, FieldElem) {
    use num_traits::Signed;
    if c.ratfun().num().leading_coeff().is_negative() {
        (true, c.neg())
    } else {
        (false, c.clone())
    }
}

/// Print a coefficient for use in front of `*word`; anything that is not a
/// bare integer or a bare power of q gets parentheses.
fn coeff_str(c: &FieldElem) -> String {
    let s = c.to_string();
    let simple = s
        .bytes()
        .all(|b| b.is_ascii_digit() || b == b'q' || b == b'^');
    if simple {
        s
    } else {
        format!("({s})")
    }
}

/// The straightening rules for one parameter context; holds the scalar
/// constants the rules need. `jordan_coeff` is the coefficient of x1^2 in
/// the rewrite of x2*x1 (canonical value -1/2); `z_comm_sign` multiplies
/// the z-z commutation coefficient and is the knob the negative control
/// for the confluence check flips.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub ghost: u32,
    mode: QSpec,
    q_inv: FieldElem,
    q: FieldElem,
    jordan_coeff: FieldElem,
    z_comm_sign: FieldElem,
}

impl RuleSet {
    pub fn standard(params: &AlgebraParams) -> Result<Self> {
        let q = params.q_elem();
        Ok(RuleSet {
            ghost: params.ghost,
            mode: params.q.clone(),
            q_inv: q.inv()?,
            q,
            jordan_coeff: FieldElem::from_ratio(-1, 2, &params.q)?,
            z_comm_sign: FieldElem::one(&params.q),
        })
    }

    /// Perturbs the Jordan-plane coefficient from -1/2 to -1. This does
    /// NOT break confluence: the x1^2 coefficient is a gauge parameter
    /// (rescale x1), so the perturbed system is still a PBW presentation.
    /// Kept as a documented contrast to `perturbed_z_sign`.
    pub fn perturbed_jordan(params: &AlgebraParams) -> Result<Self> {
        let mut r = Self::standard(params)?;
        r.jordan_coeff = FieldElem::from_int(-1, &params.q);
        Ok(r)
    }

    /// Negative control: flips the sign of the z-z commutation rule
    /// (z_m z_n -> -q^(m-n) z_n z_m). That coefficient is forced by the
    /// overlap with the z/x2 rules, so the diamond check must fail.
    pub fn perturbed_z_sign(params: &AlgebraParams) -> Result<Self> {
        let mut r = Self::standard(params)?;
        r.z_comm_sign = FieldElem::from_int(-1, &params.q);
        Ok(r)
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }

    /// Rewrite of the out-of-order pair a*b, when one applies.
    pub fn rewrite_pair(&self, a: Gen, b: Gen) -> Option<Vec<(Word, FieldElem)>> {
        match (a, b) {
            // x2*x1 -> x1*x2 + jc*x1^2
            (Gen::X2, Gen::X1) => Some(vec![
                (Word(vec![Gen::X1, Gen::X2]), FieldElem::one(&self.mode)),
                (Word(vec![Gen::X1, Gen::X1]), self.jordan_coeff.clone()),
            ]),
            // z_n*x1 -> q^-1 x1*z_n
            (Gen::Z(n), Gen::X1) => Some(vec![(
                Word(vec![Gen::X1, Gen::Z(n)]),
                self.q_inv.clone(),
            )]),
            // z_n*x2 -> q^-1 (x2*z_n - z_{n+1}) for n < G,
            // z_G*x2 -> q^-1 x2*z_G
            (Gen::Z(n), Gen::X2) => {
                let mut out = vec![(
                    Word(vec![Gen::X2, Gen::Z(n)]),
                    self.q_inv.clone(),
                )];
                if n < self.ghost {
                    out.push((Word(vec![Gen::Z(n + 1)]), self.q_inv.neg()));
                }
                Some(out)
            }
            // z_m*z_n -> q^(m-n) z_n*z_m for m < n
            (Gen::Z(m), Gen::Z(n)) if m < n => {
                let c = self
                    .q
                    .pow(m as i64 - n as i64)
                    .expect("q is invertible")
                    .mul(&self.z_comm_sign)
                    .expect("same mode");
                Some(vec![(Word(vec![Gen::Z(n), Gen::Z(m)]), c)])
            }
            _ => None,
        }
    }

    /// True when a*b is the left-hand side of a rule.
    pub fn has_rule(&self, a: Gen, b: Gen) -> bool {
        a > b
    }
}

fn check_word_indices(w: &Word, ghost: u32) -> Result<()> {
    for g in &w.0 {
        if let Gen::Z(n) = g {
            if *n > ghost {
                return Err(Error::IndexOutOfRange(format!(
                    "z{n} does not exist for ghost = {ghost}"
                )));
            }
        }
    }
    Ok(())
}

/// Straighten a single word to its PBW normal form under the given rules.
pub fn normal_form_word(
    w: &Word,
    rules: &RuleSet,
    budget: &mut u64,
) -> Result<NCPoly> {
    check_word_indices(w, rules.ghost)?;
    let mut result = NCPoly::zero(&rules.mode);
    let mut stack: Vec<(Word, FieldElem)> =
        vec![(w.clone(), FieldElem::one(&rules.mode))];
    while let Some((word, coeff)) = stack.pop() {
        match word.first_descent() {
            None => result.add_term(word, coeff),
            Some(i) => {
                if *budget == 0 {
                    return Err(Error::BudgetExceeded(DEFAULT_BUDGET));
                }
                *budget -= 1;
                let (a, b) = (word.0[i], word.0[i + 1]);
                let repl = rules
                    .rewrite_pair(a, b)
                    .expect("descent pair must have a rule");
                for (mid, c) in repl {
                    let mut v = Vec::with_capacity(word.0.len() + mid.0.len());
                    v.extend_from_slice(&word.0[..i]);
                    v.extend_from_slice(&mid.0);
                    v.extend_from_slice(&word.0[i + 2..]);
                    stack.push((Word(v), coeff.mul(&c).expect("same mode")));
                }
            }
        }
    }
    Ok(result)
}

/// PBW normal form of an element; idempotent projection onto the span of
/// PBW-ordered words.
pub fn normal_form(p: &NCPoly, params: &AlgebraParams) -> Result<NCPoly> {
    let rules = RuleSet::standard(params)?;
    normal_form_with(p, &rules)
}

pub fn normal_form_with(p: &NCPoly, rules: &RuleSet) -> Result<NCPoly> {
    let mut budget = DEFAULT_BUDGET;
    let mut out = NCPoly::zero(rules.mode());
    for (w, c) in p.terms() {
        let nf = normal_form_word(w, rules, &mut budget)?;
        out = out.add(&nf.scale(c));
    }
    Ok(out)
}

/// Product in the algebra: concatenation followed by straightening.
pub fn multiply(a: &NCPoly, b: &NCPoly, params: &AlgebraParams) -> Result<NCPoly> {
    normal_form(&a.free_mul(b), params)
}
