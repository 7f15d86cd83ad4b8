//! The verify-all battery: one entry point that runs every structural
//! check of the engine for a given ghost/q configuration, with seeded
//! randomized draws and a stable, name-sorted report.

use crate::error::Result;
use crate::maps::braiding::{
    braid_equation_check, braiding_matrix, twist_braiding, BraidingParams, TwistParams,
};
use crate::maps::ore::ore_verify_all;
use crate::par;
use crate::pbw::confluence::confluence_check_with;
use crate::pbw::hilbert::hilbert_coeffs;
use crate::pbw::identities::verify_derived_identities;
use crate::pbw::{AlgebraParams, RuleSet};
use crate::point::{classify_truncated, continue_by_recurrence, propagate, verify_truncated, ProjPoint};
use crate::repr::{
    build_qp_module, is_simple, lemma34_block_infeasibility, pullback, rep_check,
    solve_characters, QPModuleSpec,
};
use crate::scalars::{partial_fraction_identity, FieldElem, QSpec};
use crate::systems::{elimination_identities, system_check, SystemMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ghost: u32,
    pub q: QSpec,
    pub seed: u64,
    /// Flip the sign of the z-z commutation rule: the deliberate
    /// corruption that must make the confluence check fail.
    pub negative_control: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
    pub pass: bool,
}

fn check(name: &str, outcome: Result<bool>) -> SuiteCheck {
    match outcome {
        Ok(ok) => SuiteCheck {
            name: name.to_string(),
            ok,
            detail: None,
        },
        Err(e) => SuiteCheck {
            name: name.to_string(),
            ok: false,
            detail: Some(e.to_string()),
        },
    }
}

/// A nonzero rational scalar, small enough to keep arithmetic cheap.
fn draw_nonzero(rng: &mut impl Rng, mode: &QSpec) -> FieldElem {
    loop {
        let p = rng.gen_range(-9i64..=9);
        if p != 0 {
            return FieldElem::from_int(p, mode);
        }
    }
}

/// A numeric q specialization avoiding 0 and the rational roots of
/// unity +-1.
pub fn draw_numeric_q(rng: &mut impl Rng) -> QSpec {
    loop {
        let p = rng.gen_range(-9i64..=9);
        let r = rng.gen_range(1i64..=9);
        if p != 0 && (p, r) != (1, 1) && (p, r) != (-1, 1) && p != r && p != -r {
            return QSpec::numeric(p, r).expect("valid numeric q");
        }
    }
}

/// Run the full battery. Checks execute in parallel (when the `parallel`
/// feature is on) and the report is sorted by check name, so identical
/// configurations give identical output.
pub fn verify_all(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let params = AlgebraParams::new(cfg.ghost, cfg.q.clone())?;
    let g = cfg.ghost;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    type Job = Box<dyn FnOnce() -> SuiteCheck + Send>;
    let mut jobs: Vec<Job> = Vec::new();

    // 1. Confluence of the rewriting system (or its corrupted variant).
    {
        let p = params.clone();
        let corrupted = cfg.negative_control;
        jobs.push(Box::new(move || {
            check(
                "1 pbw: rewriting system is confluent",
                (|| {
                    let rules = if corrupted {
                        RuleSet::perturbed_z_sign(&p)?
                    } else {
                        RuleSet::standard(&p)?
                    };
                    Ok(confluence_check_with(&p, &rules)?.pass)
                })(),
            )
        }));
    }

    // 2. Derived identities.
    {
        let p = params.clone();
        jobs.push(Box::new(move || {
            check(
                "2 identities: derived identity battery (jmax 4)",
                verify_derived_identities(&p, 4).map(|r| r.pass),
            )
        }));
    }

    // 3. Hilbert data against the product-series oracle.
    {
        let p = params.clone();
        jobs.push(Box::new(move || {
            let got = hilbert_coeffs(&p, 12);
            let want = product_series_coeffs(p.ghost, 12);
            check("3 hilbert: enumeration matches product series to degree 12", Ok(got == want))
        }));
    }

    // 4. Iterated Ore structure.
    {
        let p = params.clone();
        jobs.push(Box::new(move || {
            check(
                "4 ore: sigma/delta/commutation at every stage",
                ore_verify_all(&p).map(|r| r.pass),
            )
        }));
    }

    // 5. Characters and simple modules.
    {
        let p = params.clone();
        let beta = draw_nonzero(&mut rng, &cfg.q);
        let gamma = draw_nonzero(&mut rng, &cfg.q);
        jobs.push(Box::new(move || {
            check(
                "5 simples: character variety matches quantum-plane pullbacks",
                characters_match_pullbacks(&p, &beta, &gamma),
            )
        }));
    }
    if let QSpec::RootOfUnity(n) = &cfg.q {
        let n = *n;
        for t in 0..3u32 {
            let p = params.clone();
            let a = draw_nonzero(&mut rng, &cfg.q);
            let b = draw_nonzero(&mut rng, &cfg.q);
            jobs.push(Box::new(move || {
                check(
                    &format!("5 simples: cyclic module draw {t} is a simple representation"),
                    cyclic_module_simple(&p, &a, &b, n),
                )
            }));
        }
    }
    {
        jobs.push(Box::new(move || {
            check(
                "5 simples: Lemma 3.4 block infeasibility trace coefficient",
                (|| {
                    Ok(lemma34_block_infeasibility(2, 1)? == 2
                        && lemma34_block_infeasibility(3, 1)? == 3)
                })(),
            )
        }));
    }

    // 6. Braiding and twist.
    {
        let p12s: Vec<QSpec> = (0..5).map(|_| draw_numeric_q(&mut rng)).collect();
        let ghost = g;
        jobs.push(Box::new(move || {
            check(
                "6 braiding: braid equation at 5 random numeric q",
                (|| {
                    for qn in &p12s {
                        let bp = BraidingParams::laistrygonian(ghost, qn)?;
                        if !braid_equation_check(&bp)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })(),
            )
        }));
    }
    {
        let mode = cfg.q.clone();
        let ghost = g;
        jobs.push(Box::new(move || {
            check(
                "6 twist: p12 = q'/q transports the braiding matrix exactly",
                twist_transports(ghost, &mode),
            )
        }));
    }

    // 7. Point modules.
    {
        let p = params.clone();
        let b0 = draw_nonzero(&mut rng, &cfg.q);
        let c0 = draw_nonzero(&mut rng, &cfg.q);
        jobs.push(Box::new(move || {
            check(
                "7 point: propagate/verify round-trips on all three branches",
                point_round_trips(&p, &b0, &c0),
            )
        }));
    }
    {
        let class_q = match &cfg.q {
            QSpec::Numeric(_) if cfg.q.order().is_none() => cfg.q.clone(),
            _ => draw_numeric_q(&mut rng),
        };
        let ghost = g;
        jobs.push(Box::new(move || {
            check(
                "7 point: classification equals V(X0*X2)",
                (|| {
                    let p = AlgebraParams::new(ghost, class_q)?;
                    let cls = classify_truncated(&p, ghost as usize + 4)?;
                    Ok(cls.pass && cls.variety == "V(X0*X2)")
                })(),
            )
        }));
    }

    // 8. Systems and scalar identities.
    {
        let mode = cfg.q.clone();
        let sg = g.min(4).max(1);
        jobs.push(Box::new(move || {
            check(
                &format!("8 systems: closed form solves (S_{sg})"),
                system_check(sg, sg + 4, SystemMode::ClosedForm, &mode).map(|r| r.pass),
            )
        }));
        let mode = cfg.q.clone();
        jobs.push(Box::new(move || {
            check(
                "8 systems: elimination identities (i)-(iv)",
                elimination_identities(sg, &mode).map(|r| r.pass),
            )
        }));
        jobs.push(Box::new(move || {
            check(
                "8 scalars: partial-fraction identity for n <= 8",
                Ok((1..=8).all(partial_fraction_identity)),
            )
        }));
    }

    let mut checks = par::map_collect(jobs, |job| job());
    checks.sort_by(|x, y| x.name.cmp(&y.name));
    let pass = checks.iter().all(|c| c.ok);
    Ok(SuiteReport { checks, pass })
}

/// Coefficients of 1/((1-t)^2 prod_{n=0..G} (1-t^(n+1))) to degree
/// `max_deg`, by convolving geometric series — independent of the PBW
/// monomial enumeration.
pub fn product_series_coeffs(ghost: u32, max_deg: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; max_deg + 1];
    coeffs[0] = 1;
    let mut weights = vec![1usize, 1];
    weights.extend((0..=ghost).map(|n| n as usize + 1));
    for w in weights {
        // Multiply by 1/(1 - t^w) in place.
        for d in w..=max_deg {
            coeffs[d] += coeffs[d - w];
        }
    }
    coeffs
}

fn characters_match_pullbacks(
    params: &AlgebraParams,
    beta: &FieldElem,
    gamma: &FieldElem,
) -> Result<bool> {
    let fams = solve_characters(params)?;
    if params.q.q_is_one() {
        if fams.families.len() != 1 {
            return Ok(false);
        }
        let ch = fams.families[0].instantiate(&[beta.clone(), gamma.clone()], params)?;
        return ch.check(params);
    }
    if fams.families.len() != 2 {
        return Ok(false);
    }
    let x2_line = fams.families[0].instantiate(&[beta.clone()], params)?;
    let from_x = pullback(&build_qp_module(&QPModuleSpec::CharX(beta.clone()), &params.q)?, params)?;
    let z0_line = fams.families[1].instantiate(&[gamma.clone()], params)?;
    let from_y = pullback(&build_qp_module(&QPModuleSpec::CharY(gamma.clone()), &params.q)?, params)?;
    Ok(from_x.as_character() == Some(x2_line) && from_y.as_character() == Some(z0_line))
}

fn cyclic_module_simple(
    params: &AlgebraParams,
    a: &FieldElem,
    b: &FieldElem,
    n: u32,
) -> Result<bool> {
    let spec = QPModuleSpec::Cyclic {
        a: a.clone(),
        b: b.clone(),
        n,
    };
    let rep = pullback(&build_qp_module(&spec, &params.q)?, params)?;
    Ok(rep_check(&rep)?.pass && is_simple(&rep)?)
}

fn twist_transports(ghost: u32, mode: &QSpec) -> Result<bool> {
    let bp = BraidingParams::laistrygonian(ghost, mode)?;
    let q = FieldElem::q(mode);
    let q_prime = q.pow(2)?;
    let tp = TwistParams::new(q_prime.div(&q)?, FieldElem::one(mode))?;
    let tw = twist_braiding(&bp, &tp)?;
    // The twisted braiding must be the Laistrygonian one at q' — except
    // for the block parameter a, which the twist does not touch and
    // which does not depend on q anyway.
    let at_q_prime = BraidingParams::new(
        bp.q11.clone(),
        q_prime.clone(),
        q_prime.inv()?,
        bp.q22.clone(),
        bp.a.clone(),
    )?;
    Ok(braiding_matrix(&tw)? == braiding_matrix(&at_q_prime)? && braid_equation_check(&tw)?)
}

fn point_round_trips(params: &AlgebraParams, b0: &FieldElem, c0: &FieldElem) -> Result<bool> {
    let mode = &params.q;
    let d = params.ghost as usize + 4;
    let starts = [
        ProjPoint::new(FieldElem::one(mode), b0.clone(), FieldElem::zero(mode))?,
        ProjPoint::new(FieldElem::zero(mode), FieldElem::one(mode), c0.clone())?,
        ProjPoint::new(FieldElem::zero(mode), FieldElem::zero(mode), FieldElem::one(mode))?,
    ];
    for p0 in &starts {
        let seq = propagate(p0, params, d)?;
        if !verify_truncated(&seq)?.pass {
            return Ok(false);
        }
    }
    // Off-variety control: the recurrence continuation of (1:b:c), c != 0
    // must fail verification, and only at the top-degree relation.
    let bad = ProjPoint::new(FieldElem::one(mode), b0.clone(), c0.clone())?;
    let rep = verify_truncated(&continue_by_recurrence(&bad, params, d)?)?;
    Ok(!rep.pass && rep.checks.iter().all(|c| c.ok || c.relation == "(5.2)"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_generic() {
        let cfg = SuiteConfig {
            ghost: 1,
            q: QSpec::Generic,
            seed: 7,
            negative_control: false,
        };
        let rep = verify_all(&cfg).unwrap();
        assert!(rep.pass, "{:#?}", rep.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
    }

    #[test]
    fn battery_passes_root_of_unity() {
        let cfg = SuiteConfig {
            ghost: 1,
            q: QSpec::root_of_unity(2).unwrap(),
            seed: 1,
            negative_control: false,
        };
        let rep = verify_all(&cfg).unwrap();
        assert!(rep.pass, "{:#?}", rep.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
        assert!(rep.checks.iter().any(|c| c.name.contains("cyclic module")));
    }

    #[test]
    fn negative_control_fails_at_confluence() {
        let cfg = SuiteConfig {
            ghost: 2,
            q: QSpec::Generic,
            seed: 7,
            negative_control: true,
        };
        let rep = verify_all(&cfg).unwrap();
        assert!(!rep.pass);
        let bad: Vec<_> = rep.checks.iter().filter(|c| !c.ok).collect();
        assert!(bad.iter().all(|c| c.name.starts_with("1 pbw")));
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = SuiteConfig {
            ghost: 1,
            q: QSpec::numeric(3, 2).unwrap(),
            seed: 42,
            negative_control: false,
        };
        let a = serde_json::to_string(&verify_all(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_all(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn series_oracle_prefix() {
        assert_eq!(product_series_coeffs(1, 4), vec![1, 3, 7, 13, 22]);
    }
}
