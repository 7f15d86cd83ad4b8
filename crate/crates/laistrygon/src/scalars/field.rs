//! Exact scalars: rational functions in the parameter q, specialized
//! either generically, at a nonzero rational value, or at a primitive
//! root of unity (working in the cyclotomic quotient ring).

use super::intpoly::{cyclotomic, IntPoly};
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// How the symbol q is specialized.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum QSpec {
    /// q is a free transcendental parameter; scalars are rational
    /// functions and identities hold for all but finitely many q.
    Generic,
    /// q is a primitive N-th root of unity, N >= 2; scalars live in
    /// Q[q] / Phi_N(q).
    RootOfUnity(u32),
    /// q is a fixed nonzero rational; scalars are rationals.
    Numeric(BigRational),
}

impl QSpec {
    pub fn root_of_unity(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!(
                "root-of-unity order must be >= 2, got {n}"
            )));
        }
        Ok(QSpec::RootOfUnity(n))
    }

    pub fn numeric(p: i64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidSpec("q must be nonzero".into()));
        }
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(QSpec::Numeric(BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )))
    }

    pub fn numeric_big(v: BigRational) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::InvalidSpec("q must be nonzero".into()));
        }
        Ok(QSpec::Numeric(v))
    }

    /// True when q = 1 under this specialization.
    pub fn q_is_one(&self) -> bool {
        matches!(self, QSpec::Numeric(v) if v.is_one())
    }

    /// Multiplicative order of q when finite and known: N for a primitive
    /// N-th root of unity, 1 for q = 1.
    pub fn order(&self) -> Option<u32> {
        match self {
            QSpec::RootOfUnity(n) => Some(*n),
            QSpec::Numeric(v) if v.is_one() => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Generic => write!(f, "generic"),
            QSpec::RootOfUnity(n) => write!(f, "root:{n}"),
            QSpec::Numeric(v) => write!(f, "num:{v}"),
        }
    }
}

/// An exact scalar in the coefficient field determined by a `QSpec`.
///
/// Representation is always a canonical quotient of integer polynomials
/// in q; structural equality equals mathematical equality within a mode.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    rf: RatFun,
    mode: QSpec,
}

// ---- rational-coefficient helpers for the cyclotomic quotient ----

fn qp_trim(p: &mut Vec<BigRational>) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn qp_from_int(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect()
}

fn qp_rem(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    qp_trim(&mut r);
    let dm = m.len() - 1;
    let lead = &m[dm];
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r.last().unwrap() / lead;
        for (j, mc) in m.iter().enumerate() {
            let v = &c * mc;
            r[k + j] -= v;
        }
        qp_trim(&mut r);
    }
    r
}

fn qp_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qp_trim(&mut out);
    out
}

fn qp_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    qp_trim(&mut out);
    out
}

/// Inverse of `a` modulo the monic polynomial `m` over Q, via the
/// extended Euclidean algorithm. `None` when gcd(a, m) is not constant.
fn qp_inv_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // Invariants: r0 = s0 * a (mod m), r1 = s1 * a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = qp_rem(a, m);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() {
        // r0 = q * r1 + r
        let mut r = r0.clone();
        let mut q: Vec<BigRational> = vec![BigRational::zero(); r0.len()];
        let d1 = r1.len() - 1;
        let lead = r1[d1].clone();
        while r.len() > d1 {
            let k = r.len() - 1 - d1;
            let c = r.last().unwrap() / &lead;
            q[k] = c.clone();
            for (j, mc) in r1.iter().enumerate() {
                let v = &c * mc;
                r[k + j] -= v;
            }
            qp_trim(&mut r);
        }
        qp_trim(&mut q);
        let s = qp_sub(&s0, &qp_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let lead = r0[0].clone();
    let inv: Vec<BigRational> = s0.iter().map(|c| c / &lead).collect();
    Some(qp_rem(&inv, m))
}

fn qp_to_ratfun(p: &[BigRational]) -> RatFun {
    // Clear denominators into an integer polynomial over a positive
    // integer denominator.
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let coeffs: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    RatFun::new(IntPoly::from_coeffs(coeffs), IntPoly::constant(lcm))
        .expect("positive integer denominator")
}

impl FieldElem {
    /// Canonicalize a raw rational function in the given mode.
    fn canon(rf: RatFun, mode: &QSpec) -> Result<FieldElem> {
        let rf = match mode {
            QSpec::Generic => rf,
            QSpec::Numeric(v) => {
                let (p, r) = rf.eval_rational(v.numer(), v.denom())?;
                RatFun::new(IntPoly::constant(p), IntPoly::constant(r))?
            }
            QSpec::RootOfUnity(n) => {
                let phi = qp_from_int(&cyclotomic(*n));
                let num = qp_rem(&qp_from_int(rf.num()), &phi);
                let den = qp_rem(&qp_from_int(rf.den()), &phi);
                if den.is_empty() {
                    return Err(Error::NonInvertible);
                }
                let inv = qp_inv_mod(&den, &phi).ok_or(Error::NonInvertible)?;
                let red = qp_rem(&qp_mul(&num, &inv), &phi);
                qp_to_ratfun(&red)
            }
        };
        Ok(FieldElem {
            rf,
            mode: mode.clone(),
        })
    }

    pub fn zero(mode: &QSpec) -> Self {
        FieldElem {
            rf: RatFun::zero(),
            mode: mode.clone(),
        }
    }

    pub fn one(mode: &QSpec) -> Self {
        FieldElem {
            rf: RatFun::one(),
            mode: mode.clone(),
        }
    }

    /// The specialization of the symbol q itself.
    pub fn q(mode: &QSpec) -> Self {
        Self::canon(RatFun::var(), mode).expect("q is a unit in every mode")
    }

    pub fn from_int(n: i64, mode: &QSpec) -> Self {
        FieldElem {
            rf: RatFun::from_int(n),
            mode: mode.clone(),
        }
    }

    pub fn from_bigint(n: BigInt, mode: &QSpec) -> Self {
        FieldElem {
            rf: RatFun::from_bigint(n),
            mode: mode.clone(),
        }
    }

    pub fn from_ratio(p: i64, q: i64, mode: &QSpec) -> Result<Self> {
        Ok(FieldElem {
            rf: RatFun::from_ratio(p, q)?,
            mode: mode.clone(),
        })
    }

    pub fn from_ratfun(rf: RatFun, mode: &QSpec) -> Result<Self> {
        Self::canon(rf, mode)
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.rf
    }

    pub fn is_zero(&self) -> bool {
        self.rf.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rf.is_one()
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(
                self.mode.to_string(),
                other.mode.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Self::canon(self.rf.add(&other.rf), &self.mode)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Self::canon(self.rf.sub(&other.rf), &self.mode)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Self::canon(self.rf.mul(&other.rf), &self.mode)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::canon(self.rf.div(&other.rf)?, &self.mode)
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            rf: self.rf.neg(),
            mode: self.mode.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        FieldElem::one(&self.mode).div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = FieldElem::one(&self.mode);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Re-specialize a generic scalar at a numeric or root-of-unity q.
    pub fn specialize(&self, to: &QSpec) -> Result<Self> {
        match (&self.mode, to) {
            (a, b) if a == b => Ok(self.clone()),
            (QSpec::Generic, _) => Self::canon(self.rf.clone(), to),
            _ => Err(Error::ModeMismatch(self.mode.to_string(), to.to_string())),
        }
    }

    /// The rational value of a constant scalar, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.rf.is_constant() {
            Some(BigRational::new(
                self.rf.num().coeff(0),
                self.rf.den().coeff(0),
            ))
        } else {
            None
        }
    }
}

/// Exact binomial coefficient C(n, k) as a scalar; 0 when k > n.
pub fn binomial(n: u64, k: u64, mode: &QSpec) -> FieldElem {
    if k > n {
        return FieldElem::zero(mode);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    FieldElem::from_bigint(acc, mode)
}

// ---- printing ----

fn term_str(c: &BigInt, k: usize) -> String {
    debug_assert!(!c.is_zero());
    if k == 0 {
        return c.to_string();
    }
    let var = if k == 1 {
        "q".to_string()
    } else {
        format!("q^{k}")
    };
    if c.is_one() {
        var
    } else if (-c).is_one() {
        format!("-{var}")
    } else {
        format!("{c}*{var}")
    }
}

fn poly_str(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            out.push_str(&term_str(&c, k));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&term_str(&(-c), k));
        } else {
            out.push_str(" + ");
            out.push_str(&term_str(&c, k));
        }
    }
    out
}

fn poly_is_single_term(p: &IntPoly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.rf.num();
        let den = self.rf.den();
        if den.is_one() {
            return write!(f, "{}", poly_str(num));
        }
        let ns = if poly_is_single_term(num) {
            poly_str(num)
        } else {
            format!("({})", poly_str(num))
        };
        // Denominators need parentheses unless they print as a bare
        // positive integer or a bare power of q ('^' binds tighter
        // than '/', '*' does not).
        let ds_raw = poly_str(den);
        let den_simple = poly_is_single_term(den)
            && !ds_raw.contains('*')
            && !ds_raw.starts_with('-');
        let ds = if den_simple {
            ds_raw
        } else {
            format!("({ds_raw})")
        };
        write!(f, "{ns}/{ds}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_plus_one_vanishes_at_second_root_of_unity() {
        // Reduce mod Phi_2(q) = q + 1.
        let mode = QSpec::root_of_unity(2).unwrap();
        let q = FieldElem::q(&mode);
        let s = q.add(&FieldElem::one(&mode)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn root_of_unity_inverse() {
        let mode = QSpec::root_of_unity(5).unwrap();
        let q = FieldElem::q(&mode);
        // q^4 * q = q^5 = 1
        assert!(q.pow(5).unwrap().is_one());
        assert_eq!(q.inv().unwrap(), q.pow(4).unwrap());
    }

    #[test]
    fn non_invertible_detected() {
        let mode = QSpec::root_of_unity(4).unwrap();
        let q = FieldElem::q(&mode);
        // q^2 + 1 = Phi_4(q) = 0, not invertible
        let z = q.pow(2).unwrap().add(&FieldElem::one(&mode)).unwrap();
        assert!(z.is_zero());
        assert_eq!(FieldElem::one(&mode).div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn numeric_specialization() {
        let mode = QSpec::numeric(2, 1).unwrap();
        let q = FieldElem::q(&mode);
        let e = q
            .pow(2)
            .unwrap()
            .sub(&FieldElem::one(&mode))
            .unwrap()
            .div(&q.sub(&FieldElem::one(&mode)).unwrap())
            .unwrap();
        // (q^2-1)/(q-1) = q+1 = 3 at q = 2
        assert_eq!(e, FieldElem::from_int(3, &mode));
    }

    #[test]
    fn generic_cancellation() {
        let mode = QSpec::Generic;
        let q = FieldElem::q(&mode);
        let lhs = q
            .pow(2)
            .unwrap()
            .sub(&FieldElem::one(&mode))
            .unwrap()
            .div(&q.sub(&FieldElem::one(&mode)).unwrap())
            .unwrap();
        let rhs = q.add(&FieldElem::one(&mode)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_values() {
        let m = QSpec::Generic;
        assert_eq!(binomial(4, 2, &m), FieldElem::from_int(6, &m));
        assert_eq!(binomial(7, 0, &m), FieldElem::one(&m));
        assert_eq!(binomial(5, 5, &m), FieldElem::one(&m));
        assert!(binomial(3, 5, &m).is_zero());
    }

    #[test]
    fn mode_mismatch_rejected() {
        let a = FieldElem::one(&QSpec::Generic);
        let b = FieldElem::one(&QSpec::root_of_unity(3).unwrap());
        assert!(matches!(a.add(&b), Err(Error::ModeMismatch(_, _))));
    }

    #[test]
    fn display_forms() {
        let m = QSpec::Generic;
        let q = FieldElem::q(&m);
        assert_eq!(q.inv().unwrap().to_string(), "1/q");
        assert_eq!(FieldElem::from_ratio(1, 2, &m).unwrap().to_string(), "1/2");
        let e = q.add(&FieldElem::one(&m)).unwrap().div(&FieldElem::from_int(2, &m)).unwrap();
        assert_eq!(e.to_string(), "(q + 1)/2");
    }
}
