//! The acceptance battery: eight structural criteria, each printed as a
//! single pass/fail line. Every criterion must pass.

use laistrygon::maps::braiding::{
    braid_equation_check, braiding_matrix, twist_braiding, BraidingParams, TwistParams,
};
use laistrygon::maps::ore::ore_verify_all;
use laistrygon::pbw::confluence::{confluence_check, confluence_check_with};
use laistrygon::pbw::hilbert::hilbert_coeffs;
use laistrygon::pbw::identities::verify_derived_identities;
use laistrygon::pbw::{AlgebraParams, RuleSet};
use laistrygon::point::{classify_truncated, continue_by_recurrence, propagate, verify_truncated, ProjPoint};
use laistrygon::repr::{build_qp_module, is_simple, pullback, rep_check, solve_characters, QPModuleSpec};
use laistrygon::scalars::{partial_fraction_identity, FieldElem, QSpec};
use laistrygon::suite::{draw_numeric_q, product_series_coeffs};
use laistrygon::systems::{elimination_identities, system_check, SystemMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(g: u32, q: QSpec) -> AlgebraParams {
    AlgebraParams::new(g, q).unwrap()
}

fn nonzero(rng: &mut impl Rng, mode: &QSpec) -> FieldElem {
    loop {
        let v = rng.gen_range(-9i64..=9);
        if v != 0 {
            return FieldElem::from_int(v, mode);
        }
    }
}

fn criterion_1_confluence() -> bool {
    for g in 1..=4 {
        let p = params(g, QSpec::Generic);
        if !confluence_check(&p).unwrap().pass {
            return false;
        }
    }
    // Negative control: the corrupted rule set must fail.
    let p = params(2, QSpec::Generic);
    let bad = RuleSet::perturbed_z_sign(&p).unwrap();
    !confluence_check_with(&p, &bad).unwrap().pass
}

fn criterion_2_identities() -> bool {
    (1..=4).all(|g| {
        verify_derived_identities(&params(g, QSpec::Generic), 5)
            .unwrap()
            .pass
    })
}

fn criterion_3_hilbert() -> bool {
    let prefix_ok =
        hilbert_coeffs(&params(1, QSpec::Generic), 4) == vec![1, 3, 7, 13, 22];
    prefix_ok
        && (1..=4)
            .all(|g| hilbert_coeffs(&params(g, QSpec::Generic), 15) == product_series_coeffs(g, 15))
}

fn criterion_4_ore() -> bool {
    (1..=3).all(|g| ore_verify_all(&params(g, QSpec::Generic)).unwrap().pass)
}

fn criterion_5_simples() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // Cyclic quantum-plane modules pull back to simple representations.
    for n in 2..=5u32 {
        let mode = QSpec::root_of_unity(n).unwrap();
        let p = params(1, mode.clone());
        for _ in 0..10 {
            let a = nonzero(&mut rng, &mode);
            let b = nonzero(&mut rng, &mode);
            let qp = build_qp_module(&QPModuleSpec::Cyclic { a, b, n }, &mode).unwrap();
            let rep = pullback(&qp, &p).unwrap();
            if !rep_check(&rep).unwrap().pass || !is_simple(&rep).unwrap() {
                return false;
            }
        }
    }
    // Character variety at 20 random q != 1: exactly the two
    // one-parameter families, matching the quantum-plane pullbacks.
    for _ in 0..20 {
        let mode = draw_numeric_q(&mut rng);
        let p = params(2, mode.clone());
        let fams = solve_characters(&p).unwrap();
        if fams.q_is_one || fams.families.len() != 2 {
            return false;
        }
        let beta = nonzero(&mut rng, &mode);
        let gamma = nonzero(&mut rng, &mode);
        let x2_line = fams.families[0].instantiate(&[beta.clone()], &p).unwrap();
        let z0_line = fams.families[1].instantiate(&[gamma.clone()], &p).unwrap();
        let from_x = pullback(
            &build_qp_module(&QPModuleSpec::CharX(beta), &mode).unwrap(),
            &p,
        )
        .unwrap();
        let from_y = pullback(
            &build_qp_module(&QPModuleSpec::CharY(gamma), &mode).unwrap(),
            &p,
        )
        .unwrap();
        if from_x.as_character() != Some(x2_line) || from_y.as_character() != Some(z0_line) {
            return false;
        }
    }
    // q = 1: the two-parameter plane.
    let p = params(1, QSpec::numeric(1, 1).unwrap());
    let fams = solve_characters(&p).unwrap();
    fams.q_is_one && fams.families.len() == 1 && fams.families[0].free.len() == 2
}

fn criterion_6_twist() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // p12 = q'/q transports the braiding at q to the one at q', exactly.
    let mode = QSpec::Generic;
    let q = FieldElem::q(&mode);
    for e in [2i64, 3, -1] {
        let bp = BraidingParams::laistrygonian(2, &mode).unwrap();
        let q_prime = q.pow(e).unwrap();
        let tp = TwistParams::new(q_prime.div(&q).unwrap(), FieldElem::one(&mode)).unwrap();
        let tw = twist_braiding(&bp, &tp).unwrap();
        let target = BraidingParams::new(
            FieldElem::one(&mode),
            q_prime.clone(),
            q_prime.inv().unwrap(),
            FieldElem::one(&mode),
            bp.a.clone(),
        )
        .unwrap();
        if braiding_matrix(&tw).unwrap() != braiding_matrix(&target).unwrap() {
            return false;
        }
    }
    // Braid equation (27x27 exact identity) at 10 random numeric q.
    for _ in 0..10 {
        let mode = draw_numeric_q(&mut rng);
        let bp = BraidingParams::laistrygonian(rng.gen_range(1..=4), &mode).unwrap();
        if !braid_equation_check(&bp).unwrap() {
            return false;
        }
    }
    true
}

fn criterion_7_point_modules() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // Round trips on all three branches, G <= 4, D = G+4, 10 draws.
    for g in 1..=4u32 {
        let mode = draw_numeric_q(&mut rng);
        let p = params(g, mode.clone());
        let d = g as usize + 4;
        for _ in 0..10 {
            let b0 = nonzero(&mut rng, &mode);
            let c0 = nonzero(&mut rng, &mode);
            let one = FieldElem::one(&mode);
            let zero = FieldElem::zero(&mode);
            let starts = [
                ProjPoint::new(one.clone(), b0.clone(), zero.clone()).unwrap(),
                ProjPoint::new(zero.clone(), one.clone(), c0.clone()).unwrap(),
                ProjPoint::new(zero.clone(), zero.clone(), one.clone()).unwrap(),
            ];
            for p0 in &starts {
                let seq = propagate(p0, &p, d).unwrap();
                if !verify_truncated(&seq).unwrap().pass {
                    return false;
                }
            }
            // (1:b:c), c != 0: rejected, with the recurrence continuation
            // failing only at the degree G+2 relation.
            let bad = ProjPoint::new(one, b0, c0).unwrap();
            if propagate(&bad, &p, d).is_ok() {
                return false;
            }
            let rep = verify_truncated(&continue_by_recurrence(&bad, &p, d).unwrap()).unwrap();
            if rep.pass || !rep.checks.iter().all(|c| c.ok || c.relation == "(5.2)") {
                return false;
            }
        }
    }
    // Classification equals V(X0 X2) at 5 random non-root-of-unity q.
    for (g, d) in [(1u32, 5usize), (2, 6), (3, 7)] {
        for _ in 0..5 {
            let mode = draw_numeric_q(&mut rng);
            let cls = classify_truncated(&params(g, mode), d).unwrap();
            if !cls.pass || cls.variety != "V(X0*X2)" {
                return false;
            }
        }
    }
    true
}

fn criterion_8_systems() -> bool {
    let q = QSpec::Generic;
    (1..=4).all(|g| {
        system_check(g, g + 4, SystemMode::ClosedForm, &q)
            .unwrap()
            .pass
    }) && (1..=2).all(|g| elimination_identities(g, &q).unwrap().pass)
        && (1..=8).all(partial_fraction_identity)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> bool); 8] = [
        ("1 confluence/PBW (G 1-4 + negative control)", criterion_1_confluence),
        ("2 derived identities (jordan/commutation/expansion)", criterion_2_identities),
        ("3 hilbert data vs product series", criterion_3_hilbert),
        ("4 iterated Ore structure (G 1-3)", criterion_4_ore),
        ("5 simple modules and character variety", criterion_5_simples),
        ("6 braiding twist and braid equation", criterion_6_twist),
        ("7 point modules: round trips and classification", criterion_7_point_modules),
        ("8 systems and elimination identities", criterion_8_systems),
    ];
    let mut all_ok = true;
    for (name, f) in criteria {
        let ok = f();
        println!("criterion {name}: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }
    assert!(all_ok, "at least one acceptance criterion failed");
}
