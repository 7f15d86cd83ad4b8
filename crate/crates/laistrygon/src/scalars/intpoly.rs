//! Dense univariate polynomials over the integers.
//!
//! These are the building blocks for the rational-function field: a scalar
//! is a quotient of two integer polynomials in canonical form. Gcds are
//! computed with the primitive polynomial remainder sequence, so all
//! intermediate arithmetic stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial in one variable with `BigInt` coefficients, lowest degree
/// first. The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gcd of all coefficients (nonnegative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact division; panics if `other` does not divide `self` exactly.
    /// Only used internally where divisibility is guaranteed.
    pub fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dn = other.coeffs.len();
        let lead = other.leading_coeff();
        assert!(rem.len() >= dn);
        let mut quot = vec![BigInt::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dn - 1].clone();
            let (q, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "inexact polynomial division");
            if !q.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::from_coeffs(quot)
    }

    /// Pseudo-remainder of `self` by `other` (lead(other)^(d+1) * self mod other).
    fn pseudo_rem(&self, other: &Self) -> Self {
        let d_other = other.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let lead = other.leading_coeff();
        while let Some(d_r) = r.degree() {
            if d_r < d_other {
                break;
            }
            let shift = d_r - d_other;
            let rl = r.leading_coeff();
            // r := lead * r - rl * x^shift * other
            let mut next = r.mul_scalar(&lead);
            let sub = other.mul(&IntPoly::monomial(rl, shift));
            next = next.sub(&sub);
            debug_assert!(next.degree().map_or(true, |d| d < d_r));
            r = next;
        }
        r
    }

    /// Primitive gcd; result is primitive with positive leading coefficient,
    /// except that gcd of two constants is the integer gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part_or_abs();
        }
        if other.is_zero() {
            return self.primitive_part_or_abs();
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.is_constant() {
            IntPoly::constant(content)
        } else {
            a.mul_scalar(&content)
        }
    }

    fn primitive_part_or_abs(&self) -> Self {
        if self.is_constant() {
            IntPoly::constant(self.leading_coeff().abs())
        } else {
            self.primitive_part()
        }
    }

    /// Evaluate at a rational point p/r, returned as (num, den) of the value
    /// times nothing: value = sum c_k (p/r)^k = (sum c_k p^k r^(n-k)) / r^n.
    pub fn eval_rational(&self, p: &BigInt, r: &BigInt) -> (BigInt, BigInt) {
        if self.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        let n = self.coeffs.len() - 1;
        // value = (sum_k c_k p^k r^(n-k)) / r^n
        let mut acc = BigInt::zero();
        let mut rpow = BigInt::one();
        let mut ppows = Vec::with_capacity(n + 1);
        let mut pp = BigInt::one();
        for _ in 0..=n {
            ppows.push(pp.clone());
            pp *= p;
        }
        for k in (0..=n).rev() {
            acc += &self.coeffs[k] * &ppows[k] * &rpow;
            if k > 0 {
                rpow *= r;
            }
        }
        (acc, r.pow(n as u32))
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPoly::constant(c.clone()));
        }
        acc
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({:?})", self.coeffs)
    }
}

/// The N-th cyclotomic polynomial, computed by exact division of x^N - 1 by
/// the cyclotomic polynomials of the proper divisors of N.
pub fn cyclotomic(n: u32) -> IntPoly {
    assert!(n >= 1);
    let mut num = {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n as usize] = BigInt::one();
        IntPoly::from_coeffs(coeffs)
    };
    for d in 1..n {
        if n % d == 0 {
            num = num.div_exact(&cyclotomic(d));
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (x^2 - 1) and (x - 1) share (x - 1)
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_of_constants_is_integer_gcd() {
        assert_eq!(p(&[6]).gcd(&p(&[4])), p(&[2]));
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, 1, 4]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn eval_rational_homogeneous() {
        // x^2 + 1 at 1/2 -> 5/4
        let (n, d) = p(&[1, 0, 1]).eval_rational(&BigInt::from(1), &BigInt::from(2));
        assert_eq!((n, d), (BigInt::from(5), BigInt::from(4)));
    }
}
