//! The iterated Ore structure: adjoining z_G to the Jordan plane and then
//! z_{G-1}, ..., z_0, each with its automorphism sigma and sigma-derivation
//! delta. Every claim is verified inside the rewriting engine: sigma
//! respects the subalgebra relations, delta obeys the twisted Leibniz
//! rule, and X r = sigma(r) X + delta(r) holds for the adjoined X.

use crate::error::{Error, Result};
use crate::par;
use crate::pbw::{multiply, normal_form, AlgebraParams, Gen, NCPoly, Word};
use crate::scalars::FieldElem;
use serde::Serialize;

/// One stage of the Ore tower: `ZG` adjoins z_G to the Jordan plane
/// R_2 = k<x1, x2>; `J(j)` with 0 <= j <= G-1 adjoins z_j to
/// R_{G+2-j} = k<x1, x2, z_G, ..., z_{j+1}>.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OreStage {
    ZG,
    J(u32),
}

impl std::fmt::Display for OreStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OreStage::ZG => write!(f, "z_G"),
            OreStage::J(j) => write!(f, "j={j}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OreCheck {
    pub stage: String,
    pub property: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OreReport {
    pub checks: Vec<OreCheck>,
    pub pass: bool,
}

impl OreReport {
    pub fn into_result(self) -> Result<Self> {
        match self.checks.iter().find(|c| !c.ok) {
            None => Ok(self),
            Some(bad) => Err(Error::OreFailure {
                stage: bad.stage.clone(),
                generator: bad.property.clone(),
                detail: "does not normalize to zero".into(),
            }),
        }
    }
}

/// The (sigma, delta) data of one stage, acting on the coefficient
/// subalgebra.
struct StageMaps<'a> {
    params: &'a AlgebraParams,
    stage: OreStage,
    /// Generators of the coefficient subalgebra, and the adjoined one.
    coeff_gens: Vec<Gen>,
    adjoined: Gen,
}

impl<'a> StageMaps<'a> {
    fn new(params: &'a AlgebraParams, stage: OreStage) -> Result<Self> {
        let g = params.ghost;
        let (coeff_gens, adjoined) = match stage {
            OreStage::ZG => (vec![Gen::X1, Gen::X2], Gen::Z(g)),
            OreStage::J(j) => {
                if j >= g {
                    return Err(Error::IndexOutOfRange(format!(
                        "Ore stage j = {j} must satisfy j <= {}",
                        g - 1
                    )));
                }
                let mut gens = vec![Gen::X1, Gen::X2];
                for i in ((j + 1)..=g).rev() {
                    gens.push(Gen::Z(i));
                }
                (gens, Gen::Z(j))
            }
        };
        Ok(StageMaps {
            params,
            stage,
            coeff_gens,
            adjoined,
        })
    }

    /// The scalar sigma multiplies each generator by; sigma is diagonal
    /// on generators at every stage.
    fn sigma_scalar(&self, g: Gen) -> FieldElem {
        let q = self.params.q_elem();
        match (self.stage, g) {
            (_, Gen::X1) | (_, Gen::X2) => q.inv().expect("q invertible"),
            (OreStage::ZG, Gen::Z(_)) => unreachable!("R_2 has no z generators"),
            (OreStage::J(j), Gen::Z(i)) => q.pow(j as i64 - i as i64).expect("q invertible"),
        }
    }

    /// delta on a generator: nonzero only on x2 at the J(j) stages.
    fn delta_gen(&self, g: Gen) -> NCPoly {
        match (self.stage, g) {
            (OreStage::J(j), Gen::X2) => {
                let c = self
                    .params
                    .q_elem()
                    .inv()
                    .expect("q invertible")
                    .neg();
                NCPoly::gen(Gen::Z(j + 1), &self.params.q).scale(&c)
            }
            _ => NCPoly::zero(&self.params.q),
        }
    }

    /// sigma extended multiplicatively to linear combinations of words;
    /// each word picks up the product of its generators' scalars.
    fn sigma(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(&self.params.q);
        for (w, c) in p.terms() {
            let mut s = c.clone();
            for &g in &w.0 {
                s = s.mul(&self.sigma_scalar(g)).expect("same mode");
            }
            out.add_term(w.clone(), s);
        }
        out
    }

    /// delta extended by the twisted Leibniz rule
    /// delta(g1...gk) = sum_p sigma(g1...g_{p-1}) delta(g_p) g_{p+1}...gk,
    /// applied termwise and normal-formed.
    fn delta(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero(&self.params.q);
        for (w, c) in p.terms() {
            for pos in 0..w.0.len() {
                let dg = self.delta_gen(w.0[pos]);
                if dg.is_zero() {
                    continue;
                }
                let mut prefix_scalar = c.clone();
                for &g in &w.0[..pos] {
                    prefix_scalar = prefix_scalar.mul(&self.sigma_scalar(g))?;
                }
                let prefix = NCPoly::word(Word(w.0[..pos].to_vec()), &self.params.q);
                let suffix = NCPoly::word(Word(w.0[pos + 1..].to_vec()), &self.params.q);
                let term = prefix.free_mul(&dg).free_mul(&suffix).scale(&prefix_scalar);
                out = out.add(&term);
            }
        }
        normal_form(&out, self.params)
    }
}

/// Verify one stage of the Ore tower.
pub fn ore_verify(stage: OreStage, params: &AlgebraParams) -> Result<OreReport> {
    let maps = StageMaps::new(params, stage)?;
    let mode = &params.q;
    let stage_name = stage.to_string();
    let mut checks = Vec::new();

    // (i) sigma is an algebra endomorphism of the coefficient subalgebra:
    // it respects the straightening of every generator pair. Being
    // diagonal with nonzero scalars it is then automatically bijective.
    for &a in &maps.coeff_gens {
        for &b in &maps.coeff_gens {
            let ab = multiply(&NCPoly::gen(a, mode), &NCPoly::gen(b, mode), params)?;
            let lhs = normal_form(&maps.sigma(&ab), params)?;
            let rhs = multiply(
                &maps.sigma(&NCPoly::gen(a, mode)),
                &maps.sigma(&NCPoly::gen(b, mode)),
                params,
            )?;
            checks.push(OreCheck {
                stage: stage_name.clone(),
                property: format!("sigma({a}*{b}) = sigma({a})*sigma({b})"),
                ok: lhs == rhs,
            });
        }
    }

    // (ii) delta is a (sigma, 1)-derivation: applying the Leibniz
    // extension to the straightened product of each generator pair agrees
    // with sigma(a) delta(b) + delta(a) b.
    for &a in &maps.coeff_gens {
        for &b in &maps.coeff_gens {
            let ab = multiply(&NCPoly::gen(a, mode), &NCPoly::gen(b, mode), params)?;
            let lhs = maps.delta(&ab)?;
            let t1 = maps
                .sigma(&NCPoly::gen(a, mode))
                .free_mul(&maps.delta(&NCPoly::gen(b, mode))?);
            let t2 = maps
                .delta(&NCPoly::gen(a, mode))?
                .free_mul(&NCPoly::gen(b, mode));
            let rhs = normal_form(&t1.add(&t2), params)?;
            checks.push(OreCheck {
                stage: stage_name.clone(),
                property: format!("delta({a}*{b}) = sigma({a})delta({b}) + delta({a}){b}"),
                ok: lhs == rhs,
            });
        }
    }

    // (iii) the Ore commutation X r = sigma(r) X + delta(r) for the
    // adjoined generator X against every coefficient generator.
    let x = NCPoly::gen(maps.adjoined, mode);
    for &r in &maps.coeff_gens {
        let lhs = multiply(&x, &NCPoly::gen(r, mode), params)?;
        let rhs = normal_form(
            &maps
                .sigma(&NCPoly::gen(r, mode))
                .free_mul(&x)
                .add(&maps.delta_gen(r)),
            params,
        )?;
        checks.push(OreCheck {
            stage: stage_name.clone(),
            property: format!("{}*{r} = sigma({r})*{} + delta({r})", maps.adjoined, maps.adjoined),
            ok: lhs == rhs,
        });
    }

    let pass = checks.iter().all(|c| c.ok);
    Ok(OreReport { checks, pass })
}

/// Verify the whole tower: the z_G stage followed by j = G-1, ..., 0.
pub fn ore_verify_all(params: &AlgebraParams) -> Result<OreReport> {
    let mut stages = vec![OreStage::ZG];
    for j in (0..params.ghost).rev() {
        stages.push(OreStage::J(j));
    }
    let reports = par::map_collect(stages, |s| ore_verify(s, params));
    let mut checks = Vec::new();
    for r in reports {
        checks.extend(r?.checks);
    }
    let pass = checks.iter().all(|c| c.ok);
    Ok(OreReport { checks, pass })
}
