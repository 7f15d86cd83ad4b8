//! Verification of the derived identities of the algebra: the Jordan
//! commutation of x1 past powers of x2, the q-commutations of x1 and of
//! the z's, the mixed z/x2 identity, and the expansions of z_n in terms
//! of x2 and z0 together with the top-degree vanishing sum.

use super::{normal_form, AlgebraParams, Gen, NCPoly, Word};
use crate::error::{Error, Result};
use crate::par;
use crate::scalars::{binomial, FieldElem};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            let bad = self
                .checks
                .iter()
                .find(|c| !c.ok)
                .map(|c| c.name.clone())
                .unwrap_or_default();
            Err(Error::IdentityFailure(bad))
        }
    }
}

fn gen(g: Gen, params: &AlgebraParams) -> NCPoly {
    NCPoly::gen(g, &params.q)
}

fn word(gens: Vec<Gen>, params: &AlgebraParams) -> NCPoly {
    NCPoly::word(Word(gens), &params.q)
}

/// x1 x2^j - (x2 + 1/2 x1)^j x1, which must normalize to zero.
pub fn jordan_power_identity(params: &AlgebraParams, j: u32) -> Result<NCPoly> {
    let x1 = gen(Gen::X1, params);
    let x2 = gen(Gen::X2, params);
    let half = FieldElem::from_ratio(1, 2, &params.q)?;
    let lhs = x1.free_mul(&x2.free_pow(j));
    let rhs = x2.add(&x1.scale(&half)).free_pow(j).free_mul(&x1);
    normal_form(&lhs.sub(&rhs), params)
}

/// x1 z_n - q z_n x1.
pub fn x1_z_commutation(params: &AlgebraParams, n: u32) -> Result<NCPoly> {
    let q = params.q_elem();
    let lhs = word(vec![Gen::X1, Gen::Z(n)], params);
    let rhs = word(vec![Gen::Z(n), Gen::X1], params).scale(&q);
    normal_form(&lhs.sub(&rhs), params)
}

/// z_m z_n - q^(m-n) z_n z_m for m < n.
pub fn z_z_commutation(params: &AlgebraParams, m: u32, n: u32) -> Result<NCPoly> {
    let c = params.q_elem().pow(m as i64 - n as i64)?;
    let lhs = word(vec![Gen::Z(m), Gen::Z(n)], params);
    let rhs = word(vec![Gen::Z(n), Gen::Z(m)], params).scale(&c);
    normal_form(&lhs.sub(&rhs), params)
}

/// z_{G-1} x2^j - q^-j x2^j z_{G-1} + j q^-j x2^(j-1) z_G.
pub fn z_gm1_x2_power_identity(params: &AlgebraParams, j: u32) -> Result<NCPoly> {
    assert!(j >= 1);
    let g = params.ghost;
    let x2 = gen(Gen::X2, params);
    let q_mj = params.q_elem().pow(-(j as i64))?;
    let jq = FieldElem::from_int(j as i64, &params.q).mul(&q_mj)?;
    let lhs = gen(Gen::Z(g - 1), params).free_mul(&x2.free_pow(j));
    let t1 = x2
        .free_pow(j)
        .free_mul(&gen(Gen::Z(g - 1), params))
        .scale(&q_mj);
    let t2 = x2
        .free_pow(j - 1)
        .free_mul(&gen(Gen::Z(g), params))
        .scale(&jq);
    normal_form(&lhs.sub(&t1).add(&t2), params)
}

/// The binomial expansion of z_n in x2 and z0:
/// z_n - sum_{k=0..n} C(n,k) (-q)^k x2^(n-k) z0 x2^k.
pub fn z_expansion(params: &AlgebraParams, n: u32) -> NCPoly {
    let mut p = NCPoly::gen(Gen::Z(n), &params.q);
    p = p.sub(&z_expansion_sum(params, n));
    p
}

/// sum_{k=0..n} C(n,k) (-q)^k x2^(n-k) z0 x2^k in the free algebra.
pub fn z_expansion_sum(params: &AlgebraParams, n: u32) -> NCPoly {
    let x2 = gen(Gen::X2, params);
    let z0 = gen(Gen::Z(0), params);
    let minus_q = params.q_elem().neg();
    let mut sum = NCPoly::zero(&params.q);
    for k in 0..=n {
        let c = binomial(n as u64, k as u64, &params.q)
            .mul(&minus_q.pow(k as i64).expect("nonneg power"))
            .expect("same mode");
        let t = x2
            .free_pow(n - k)
            .free_mul(&z0)
            .free_mul(&x2.free_pow(k))
            .scale(&c);
        sum = sum.add(&t);
    }
    sum
}

/// The vanishing top sum: sum_{i=0..G+1} C(G+1,i) (-q)^i x2^(G+1-i) z0 x2^i.
pub fn top_vanishing_sum(params: &AlgebraParams) -> NCPoly {
    z_expansion_sum(params, params.ghost + 1)
}

/// Run the whole derived-identity battery with exponents up to `jmax`.
pub fn verify_derived_identities(params: &AlgebraParams, jmax: u32) -> Result<IdentityReport> {
    let g = params.ghost;
    enum Item {
        Jordan(u32),
        X1Z(u32),
        ZZ(u32, u32),
        ZgX2(u32),
        ZExp(u32),
        TopSum,
    }
    let mut items = Vec::new();
    for j in 1..=jmax {
        items.push(Item::Jordan(j));
        items.push(Item::ZgX2(j));
    }
    for n in 0..=g {
        items.push(Item::X1Z(n));
    }
    for m in 0..g {
        for n in (m + 1)..=g {
            items.push(Item::ZZ(m, n));
        }
    }
    for n in 1..=g {
        items.push(Item::ZExp(n));
    }
    items.push(Item::TopSum);

    let checks = par::map_collect(items, |item| -> Result<IdentityCheck> {
        let (name, nf) = match item {
            Item::Jordan(j) => (
                format!("x1*x2^{j} = (x2 + (1/2)*x1)^{j}*x1"),
                jordan_power_identity(params, j)?,
            ),
            Item::X1Z(n) => (format!("x1*z{n} = q*z{n}*x1"), x1_z_commutation(params, n)?),
            Item::ZZ(m, n) => (
                format!("z{m}*z{n} = q^({m}-{n})*z{n}*z{m}"),
                z_z_commutation(params, m, n)?,
            ),
            Item::ZgX2(j) => (
                format!("z{}*x2^{j} = q^-{j}*x2^{j}*z{} - {j}*q^-{j}*x2^{}*z{}", g - 1, g - 1, j - 1, g),
                z_gm1_x2_power_identity(params, j)?,
            ),
            Item::ZExp(n) => (
                format!("z{n} = sum_k C({n},k)(-q)^k x2^({n}-k)*z0*x2^k"),
                normal_form(&z_expansion(params, n), params)?,
            ),
            Item::TopSum => (
                format!("sum_i C({},i)(-q)^i x2^({}-i)*z0*x2^i = 0", g + 1, g + 1),
                normal_form(&top_vanishing_sum(params), params)?,
            ),
        };
        Ok(IdentityCheck {
            name,
            ok: nf.is_zero(),
        })
    });
    let checks = checks.into_iter().collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.ok);
    Ok(IdentityReport { checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::multiply;
    use crate::scalars::QSpec;

    fn params(g: u32) -> AlgebraParams {
        AlgebraParams::new(g, QSpec::Generic).unwrap()
    }

    #[test]
    fn jordan_power_j2() {
        assert!(jordan_power_identity(&params(1), 2).unwrap().is_zero());
    }

    #[test]
    fn top_sum_ghost_one_explicit() {
        // G = 1: x2^2 z0 - 2q x2 z0 x2 + q^2 z0 x2^2 -> 0
        let p = params(1);
        let nf = normal_form(&top_vanishing_sum(&p), &p).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn z_expansion_at_top_index() {
        let p = params(3);
        for n in 1..=3 {
            assert!(
                normal_form(&z_expansion(&p, n), &p).unwrap().is_zero(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn full_battery_small() {
        let rep = verify_derived_identities(&params(2), 3).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn multiply_is_associative_spot_check() {
        let p = params(2);
        let a = NCPoly::word(Word(vec![Gen::Z(0), Gen::X2]), &p.q);
        let b = NCPoly::word(Word(vec![Gen::Z(1), Gen::X1]), &p.q);
        let c = NCPoly::word(Word(vec![Gen::X2, Gen::X1]), &p.q);
        let ab_c = multiply(&multiply(&a, &b, &p).unwrap(), &c, &p).unwrap();
        let a_bc = multiply(&a, &multiply(&b, &c, &p).unwrap(), &p).unwrap();
        assert_eq!(ab_c, a_bc);
    }
}
