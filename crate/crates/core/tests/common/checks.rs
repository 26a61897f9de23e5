//! Property bodies shared by the test suites and the acceptance run.

use logsurf_core::classification::zariski;
use logsurf_core::peeling::{compute_bark, nef_class, strongly_minimalize};
use logsurf_core::rational::int;
use logsurf_core::{BaseSurface, BlowUpTarget, DivisorClass, Rational, SurfaceModel};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::oracle::{oracle_bark, twig_model};

// ---- bark

pub fn twig_weights() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (proptest::collection::vec(2i64..=6, 1..=6), -1i64..=2)
}

pub fn bark_matches_oracle(weights: &[i64], a_self: i64) -> Result<(), TestCaseError> {
    let m = twig_model(weights, a_self);
    let p = compute_bark(&m).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let names: Vec<String> = (1..=weights.len()).map(|i| format!("Z{i}")).collect();
    prop_assert_eq!(p.twigs.len(), 1);
    prop_assert_eq!(&p.twigs[0].components, &names);
    prop_assert_eq!(p.twigs[0].attachment.as_str(), "A");
    let expected = oracle_bark(&m, &names);
    for (n, b) in names.iter().zip(&expected) {
        prop_assert_eq!(&p.bark.coefficient(n), b);
        prop_assert!(b.is_positive() && *b < Rational::one());
    }
    prop_assert!(p.bark.coefficient("A").is_zero());
    // K + D# is orthogonal to every twig component
    let nef = nef_class(&m, &p.dsharp).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for n in &names {
        prop_assert!(m.pairing(&nef, m.class(n).unwrap()).unwrap().is_zero());
    }
    Ok(())
}

// ---- blow-up round trips

/// One random step: `kind` picks free / one curve / two meeting curves,
/// `a` and `b` index into the tracked curves.
#[derive(Debug, Clone)]
pub struct Step {
    kind: u8,
    a: usize,
    b: usize,
    boundary: bool,
}

pub fn steps() -> impl Strategy<Value = Vec<Step>> {
    proptest::collection::vec(
        (0u8..3, 0usize..64, 0usize..64, any::<bool>()).prop_map(|(kind, a, b, boundary)| Step {
            kind,
            a,
            b,
            boundary,
        }),
        0..=5,
    )
}

fn target_for(m: &SurfaceModel, step: &Step) -> BlowUpTarget {
    let names: Vec<&str> = m.curves().iter().map(|c| c.name.as_str()).collect();
    let a = names[step.a % names.len()];
    match step.kind {
        0 => BlowUpTarget::Free,
        1 => BlowUpTarget::On(vec![a.to_string()]),
        _ => {
            let partners: Vec<&str> = names
                .iter()
                .copied()
                .filter(|&b| b != a && m.intersect(a, b).unwrap().is_positive())
                .collect();
            if partners.is_empty() {
                BlowUpTarget::On(vec![a.to_string()])
            } else {
                let b = partners[step.b % partners.len()];
                BlowUpTarget::On(vec![a.to_string(), b.to_string()])
            }
        }
    }
}

pub const START_MODELS: usize = 4;

pub fn start_model(i: usize) -> SurfaceModel {
    match i {
        0 => super::example_sharp(),
        1 => super::double_section(),
        2 => super::elliptic_ruled(),
        _ => SurfaceModel::on_base(BaseSurface::Hirzebruch(2))
            .with_curve("S", &[0, 1], 0, true)
            .unwrap()
            .with_curve("F", &[1, 0], 0, true)
            .unwrap(),
    }
}

/// Blows up along `plan`, checking each step, then contracts the new curves
/// in reverse and checks that every intermediate model comes back exactly.
pub fn blowup_round_trip(start: usize, plan: &[Step]) -> Result<(), TestCaseError> {
    let original = start_model(start);
    let mut models = vec![original.clone()];
    let mut exceptional = Vec::new();
    for (i, step) in plan.iter().enumerate() {
        let cur = models.last().unwrap();
        let target = target_for(cur, step);
        let targets: Vec<String> = match &target {
            BlowUpTarget::Free => vec![],
            BlowUpTarget::On(t) => t.clone(),
        };
        let name = format!("X{i}");
        let next = cur.blow_up(&name, target, step.boundary).unwrap();

        // K² drops by one
        let (k0, k1) = (cur.canonical_class(), next.canonical_class());
        prop_assert_eq!(next.pairing(&k1, &k1).unwrap(), cur.pairing(&k0, &k0).unwrap() - int(1));
        // intersections survive, except that each targeted pair meets once less
        for a in cur.curves() {
            for b in cur.curves() {
                let before = cur.intersect(&a.name, &b.name).unwrap();
                let after = next.intersect(&a.name, &b.name).unwrap();
                let hit = targets.contains(&a.name) && targets.contains(&b.name);
                let expected = if hit { before - int(1) } else { before };
                prop_assert_eq!(after, expected, "{} . {}", a.name, b.name);
            }
            let on_e = next.intersect(&a.name, &name).unwrap();
            prop_assert_eq!(on_e, int(i64::from(targets.contains(&a.name))));
        }
        prop_assert!(next.is_minus_one_curve(&name).unwrap());
        models.push(next);
        exceptional.push(name);
    }

    let mut cur = models.pop().unwrap();
    while let Some(name) = exceptional.pop() {
        let expected = models.pop().unwrap();
        let (prev, map) = cur.contract_with_map(&name).unwrap();
        let e = map.exceptional.clone();
        let n = prev.rank();

        // σ^* is an isometry onto e^⊥
        for i in 0..n {
            let bi = DivisorClass::unit(n, i);
            let pi = map.pullback(&bi);
            prop_assert_eq!(cur.pairing(&pi, &e).unwrap(), int(0));
            for j in 0..n {
                let bj = DivisorClass::unit(n, j);
                prop_assert_eq!(cur.pairing(&pi, &map.pullback(&bj)).unwrap(), prev.pairing(&bi, &bj).unwrap());
            }
        }
        // p(x) = x + (x·e)e, with p(x)·p(y) = x·y + (x·e)(y·e)
        for a in cur.curves().iter().filter(|c| c.name != name) {
            for b in cur.curves().iter().filter(|c| c.name != name) {
                let (x, y) = (&a.class, &b.class);
                let xe = cur.pairing(x, &e).unwrap();
                let ye = cur.pairing(y, &e).unwrap();
                let px = x + &e.scaled(&xe);
                let py = y + &e.scaled(&ye);
                let expected_pairing: Rational = cur.pairing(x, y).unwrap() + &xe * &ye;
                prop_assert_eq!(cur.pairing(&px, &py).unwrap(), expected_pairing.clone());
                prop_assert_eq!(prev.intersect(&a.name, &b.name).unwrap(), expected_pairing);
            }
            // the image pulls back to the total transform
            let img = prev.class(&a.name).unwrap();
            let xe = cur.pairing(&a.class, &e).unwrap();
            prop_assert_eq!(map.pullback(img), &a.class + &e.scaled(&xe));
        }
        prop_assert_eq!(&prev, &expected);
        cur = prev;
    }
    prop_assert_eq!(cur, original);
    Ok(())
}

// ---- peeling and Zariski invariants

/// `D# + Bk = D`, bark from the dense oracle and `(K + D#)·Z = 0` on every
/// twig component.
pub fn peeling_invariants(model: &SurfaceModel) -> Result<(), String> {
    let p = compute_bark(model).map_err(|e| e.to_string())?;
    if p.dsharp.plus(&p.bark) != model.boundary() {
        return Err("D# + Bk(D) != D".into());
    }
    let nef = nef_class(model, &p.dsharp).map_err(|e| e.to_string())?;
    for t in &p.twigs {
        let expected = oracle_bark(model, &t.components);
        for (z, b) in t.components.iter().zip(&expected) {
            if &p.bark.coefficient(z) != b {
                return Err(format!("bark of {z} differs from the dense solve"));
            }
            if !model.pairing(&nef, model.class(z).unwrap()).unwrap().is_zero() {
                return Err(format!("(K + D#)·{z} != 0"));
            }
        }
    }
    Ok(())
}

/// `P + N = K + D`, `N` negative definite and orthogonal to `P`, and `P`
/// nonnegative on every tracked curve.
pub fn zariski_invariants(model: &SurfaceModel) -> Result<(), String> {
    let z = zariski(model).map_err(|e| e.to_string())?;
    let support: Vec<&str> = z.negative_part.support().map(String::as_str).collect();
    if !model.is_negative_definite(&support).unwrap() {
        return Err("negative part is not negative definite".into());
    }
    for s in &support {
        if !model.pairing(&z.nef_part, model.class(s).unwrap()).unwrap().is_zero() {
            return Err(format!("positive part not orthogonal to {s}"));
        }
    }
    let n = model.class_of(&z.negative_part).unwrap();
    let kd = &model.canonical_class() + &model.class_of(&model.boundary()).unwrap();
    if &z.nef_part + &n != kd {
        return Err("P + N != K + D".into());
    }
    for c in model.curves() {
        if model.pairing(&z.nef_part, &c.class).unwrap().is_negative() {
            return Err(format!("positive part is negative on {}", c.name));
        }
    }
    Ok(())
}

/// Kappa and `(K + D#)²` before and after strong minimalization; errors if
/// no step fires, so callers only pass models where one does.
pub fn kappa_invariance(model: &SurfaceModel) -> Result<(), String> {
    let before = zariski(model).map_err(|e| e.to_string())?;
    let (sm, log) = strongly_minimalize(model).map_err(|e| e.to_string())?;
    if log.is_empty() {
        return Err("no strong minimalization step fired".into());
    }
    let after = zariski(&sm).map_err(|e| e.to_string())?;
    if before.kappa != after.kappa || before.nef_self_intersection != after.nef_self_intersection {
        return Err(format!("kappa {} became {}", before.kappa, after.kappa));
    }
    Ok(())
}

/// Models on which a strong minimalization step fires: each example with a
/// (−1)-curve blown up on a horizontal boundary curve away from the rest.
pub fn models_with_neutral_curves() -> Vec<(&'static str, SurfaceModel)> {
    vec![
        ("sharp + X on H1", super::blow(super::example_sharp(), "X", &["H1"], false)),
        ("sharp + X on H2", super::blow(super::example_sharp(), "X", &["H2"], false)),
        ("double section + X on H", super::blow(super::double_section(), "X", &["H"], false)),
    ]
}
