//! Rational functions in one variable over the rationals, stored as a
//! quotient of integer polynomials in canonical form.
//!
//! Canonical form: gcd(num, den) = 1 (including integer content) and the
//! leading coefficient of the denominator is positive. With that
//! normalization structural equality coincides with equality of rational
//! functions, so `RatFun` derives `PartialEq`/`Hash` directly.

use super::intpoly::IntPoly;
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: IntPoly,
    den: IntPoly,
}

impl RatFun {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFun {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFun {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFun {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self, Error> {
        RatFun::new(
            IntPoly::constant(BigInt::from(p)),
            IntPoly::constant(BigInt::from(q)),
        )
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFun {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// The variable of the function field.
    pub fn var() -> Self {
        RatFun {
            num: IntPoly::var(),
            den: IntPoly::one(),
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when this is a constant (degree-zero) rational function.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self, Error> {
        RatFun::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RatFun::reduced(
            self.num.pow(e as u32),
            self.den.pow(e as u32),
        ))
    }

    /// Equality by cross multiplication, independent of canonicalization.
    pub fn cross_eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Evaluate at the rational point p/r; errors if the denominator
    /// vanishes there.
    pub fn eval_rational(&self, p: &BigInt, r: &BigInt) -> Result<(BigInt, BigInt), Error> {
        let (dn, dd) = self.den.eval_rational(p, r);
        if dn.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (nn, nd) = self.num.eval_rational(p, r);
        // (nn/nd) / (dn/dd) = nn*dd / (nd*dn)
        let mut num = nn * dd;
        let mut den = nd * dn;
        let g = num_integer::Integer::gcd(&num, &den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        Ok((num, den))
    }
}

/// Checks the alternating partial-fraction identity
/// sum_{i=0..n} (-1)^i C(n,i)/(t-i) = (-1)^n n! / (t (t-1) ... (t-n))
/// as an exact identity of rational functions in t.
pub fn partial_fraction_identity(n: u32) -> bool {
    assert!(n >= 1);
    let t = RatFun::var();
    let mut lhs = RatFun::zero();
    let mut binom = BigInt::one();
    for i in 0..=n {
        let term = t
            .sub(&RatFun::from_int(i as i64))
            .inv()
            .expect("t - i is nonzero as a rational function");
        let mut c = RatFun::from_bigint(binom.clone());
        if i % 2 == 1 {
            c = c.neg();
        }
        lhs = lhs.add(&c.mul(&term));
        // C(n, i+1) = C(n, i) * (n-i) / (i+1)
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let mut den = RatFun::one();
    for i in 0..=n {
        den = den.mul(&t.sub(&RatFun::from_int(i as i64)));
    }
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    if n % 2 == 1 {
        fact = -fact;
    }
    let rhs = RatFun::from_bigint(fact)
        .div(&den)
        .expect("product of distinct linear factors is nonzero");
    lhs == rhs
}
