mod common;

use logsurf_core::peeling::{
    almost_minimalize, compute_bark, find_superfluous_exceptional, is_almost_minimal, is_superfluous,
    maximal_admissible_twigs, nef_class, strongly_minimalize, ContractionReason, PeelingError,
};
use logsurf_core::rational::{int, q};
use logsurf_core::{BaseSurface, BlowUpTarget, BigInt, DivisorClass, SurfaceModel};
use num_traits::Zero;
use proptest::prelude::*;

use common::checks::{bark_matches_oracle, peeling_invariants, twig_weights};
use common::oracle::twig_model;

#[test]
fn twig_model_has_the_intended_intersections() {
    let m = twig_model(&[3, 2], 0);
    assert_eq!(m.self_intersection("Z1").unwrap(), int(-3));
    assert_eq!(m.intersect("Z2", "A").unwrap(), int(1));
    assert_eq!(m.intersect("Z1", "A").unwrap(), int(0));
    for c in m.curves() {
        assert_eq!(m.lattice().adjunction_pa(&c.class).unwrap(), int(0));
    }
}

#[test]
fn chains_of_minus_two_curves_have_closed_form_bark() {
    for r in 1..=6usize {
        let m = twig_model(&vec![2; r], 0);
        let p = compute_bark(&m).unwrap();
        assert_eq!(p.twigs.len(), 1);
        for i in 0..r {
            let expected = q((r - i) as i64, r as i64 + 1);
            assert_eq!(p.bark.coefficient(&format!("Z{}", i + 1)), expected, "r = {r}");
        }
    }
}

#[test]
fn minus_three_tip_has_bark_one_third() {
    let m = twig_model(&[3], 0);
    let p = compute_bark(&m).unwrap();
    assert_eq!(p.bark.coefficient("Z1"), q(1, 3));
    assert_eq!(p.dsharp.coefficient("Z1"), q(2, 3));
    assert_eq!(p.dsharp.coefficient("A"), int(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bark_matches_the_dense_oracle((weights, a_self) in twig_weights()) {
        bark_matches_oracle(&weights, a_self)?;
    }
}

#[test]
fn peeling_invariants_on_the_examples() {
    for (label, m) in common::all_examples() {
        peeling_invariants(&m).unwrap_or_else(|e| panic!("{label}: {e}"));
        let p = compute_bark(&m).unwrap();
        assert_eq!(p.dsharp.ceil(), m.boundary(), "{label}");
        assert!(is_almost_minimal(&m).unwrap(), "{label}");
        let (am, log) = almost_minimalize(&m).unwrap();
        assert!(log.is_empty(), "{label}");
        assert_eq!(am, m);
    }
}

#[test]
fn example_twigs_and_bark() {
    let m = common::example_sharp();
    let p = compute_bark(&m).unwrap();
    let twigs: Vec<(Vec<String>, String)> =
        p.twigs.iter().map(|t| (t.components.clone(), t.attachment.clone())).collect();
    let t = |c: &[&str], a: &str| (c.iter().map(|s| s.to_string()).collect::<Vec<_>>(), a.to_string());
    // boundary graph: H1 - F1 - H2 with D1, D4 on H1 and D3 - D2, D5 on H2
    assert_eq!(
        twigs,
        vec![t(&["D1"], "H1"), t(&["D3", "D2"], "H2"), t(&["D4"], "H1"), t(&["D5"], "H2")]
    );
    assert_eq!(p.bark.coefficient("D1"), q(1, 3));
    assert_eq!(p.bark.coefficient("D3"), q(2, 3));
    assert_eq!(p.bark.coefficient("D2"), q(1, 3));
    assert_eq!(p.bark.coefficient("D4"), q(1, 2));
    assert_eq!(p.bark.coefficient("D5"), q(1, 2));
    assert_eq!(p.bark.len(), 5);
}

#[test]
fn superfluous_component_is_contracted_first() {
    let base = common::example_sharp();
    let m = common::blow(base.clone(), "S", &["D1", "H1"], true);
    assert!(is_superfluous(&m, "S").unwrap());
    assert_eq!(find_superfluous_exceptional(&m).unwrap().as_deref(), Some("S"));
    assert!(!is_almost_minimal(&m).unwrap());
    let (am, log) = almost_minimalize(&m).unwrap();
    assert_eq!(log.len(), 1);
    assert_eq!(log[0].curve, "S");
    assert_eq!(log[0].reason, ContractionReason::Superfluous);
    assert_eq!(am, base);
}

#[test]
fn tip_exceptional_component_is_superfluous() {
    let m = common::blow(common::example_sharp(), "S", &["H1"], true);
    assert!(is_superfluous(&m, "S").unwrap());
}

#[test]
fn superfluous_candidate_skipped_when_image_is_not_snc() {
    // two (1,1)-curves meet in two points; after blowing up one of them the
    // exceptional curve meets both, and contracting it back would restore a
    // double intersection
    let m = SurfaceModel::on_base(BaseSurface::Quadric)
        .with_curve("C1", &[1, 1], 0, true)
        .unwrap()
        .with_curve("C2", &[1, 1], 0, true)
        .unwrap();
    let m = common::blow(m, "X", &["C1", "C2"], true);
    assert_eq!(m.intersect("C1", "C2").unwrap(), int(1));
    assert!(!is_superfluous(&m, "X").unwrap());
    // with a single meeting point it is superfluous
    let m = SurfaceModel::on_base(BaseSurface::Quadric)
        .with_curve("C1", &[0, 1], 0, true)
        .unwrap()
        .with_curve("C2", &[1, 0], 0, true)
        .unwrap();
    let m = common::blow(m, "X", &["C1", "C2"], true);
    assert!(is_superfluous(&m, "X").unwrap());
    // a non-boundary (-1)-curve never is
    let m = common::blow(common::example_sharp(), "Y", &["H1"], false);
    assert!(!is_superfluous(&m, "Y").unwrap());
}

#[test]
fn negative_curve_and_twig_follow_up() {
    let base = common::example_sharp();
    let m = common::blow(base.clone(), "T", &["H2"], true);
    let m = common::blow(m, "U", &["T"], false);
    let p = compute_bark(&m).unwrap();
    assert_eq!(p.bark.coefficient("T"), q(1, 2));
    let nef = nef_class(&m, &p.dsharp).unwrap();
    assert_eq!(m.pairing(&nef, m.class("U").unwrap()).unwrap(), q(-1, 2));
    let (am, log) = almost_minimalize(&m).unwrap();
    let steps: Vec<(&str, ContractionReason)> = log.iter().map(|c| (c.curve.as_str(), c.reason)).collect();
    assert_eq!(
        steps,
        vec![("U", ContractionReason::NegativeOnNefPart), ("T", ContractionReason::TwigFollowUp)]
    );
    assert_eq!(am, base);
}

#[test]
fn strongly_minimalize_contracts_a_neutral_curve() {
    let base = common::example_sharp();
    let m = common::blow(base.clone(), "X", &["H1"], false);
    let p = compute_bark(&m).unwrap();
    let nef = nef_class(&m, &p.dsharp).unwrap();
    assert!(m.pairing(&nef, m.class("X").unwrap()).unwrap().is_zero());
    assert!(is_almost_minimal(&m).unwrap());
    let (am, log) = almost_minimalize(&m).unwrap();
    assert!(log.is_empty());
    assert_eq!(am, m);
    let (sm, log) = strongly_minimalize(&m).unwrap();
    assert_eq!(log.len(), 1);
    assert_eq!(log[0].curve, "X");
    assert_eq!(log[0].reason, ContractionReason::NefPartNeutral);
    assert_eq!(sm, base);
    for (label, m) in common::all_examples() {
        let (sm, log) = strongly_minimalize(&m).unwrap();
        assert!(log.is_empty(), "{label}");
        assert_eq!(sm, m);
    }
}

#[test]
fn admissible_rod_is_not_big() {
    let m = SurfaceModel::on_base(BaseSurface::Quadric)
        .with_curve("F", &[1, 0], 0, true)
        .unwrap()
        .blow_up("X1", BlowUpTarget::On(vec!["F".into()]), false)
        .unwrap()
        .blow_up("X2", BlowUpTarget::On(vec!["F".into()]), false)
        .unwrap();
    assert_eq!(m.self_intersection("F").unwrap(), int(-2));
    assert_eq!(compute_bark(&m), Err(PeelingError::NotBig { shape: "rod" }));
    assert!(maximal_admissible_twigs(&m).is_err());
}

#[test]
fn invalid_models_are_refused() {
    let mut m = common::example_sharp();
    m.add_curve(logsurf_core::Curve::new("bad", DivisorClass::from_integers(&vec![BigInt::zero(); m.rank()]), 0, true))
        .unwrap();
    assert!(matches!(almost_minimalize(&m), Err(PeelingError::InvalidModel(_))));
}
