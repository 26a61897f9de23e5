mod common;

use logsurf_core::rational::int;
use logsurf_core::{BlowUpTarget, ModelError};
use proptest::prelude::*;

use common::checks::{blowup_round_trip, steps, START_MODELS};

#[test]
fn blow_up_changes_the_canonical_square_by_one() {
    let m = common::example_sharp();
    let k = m.canonical_class();
    let before = m.pairing(&k, &k).unwrap();
    let b = common::blow(m, "X", &["H1", "F1"], false);
    let k2 = b.canonical_class();
    assert_eq!(b.pairing(&k2, &k2).unwrap(), before - int(1));
    let c = b.contract("X").unwrap();
    let k3 = c.canonical_class();
    assert_eq!(c.pairing(&k3, &k3).unwrap(), b.pairing(&k2, &k2).unwrap() + int(1));
}

#[test]
fn blow_up_rejects_bad_targets() {
    let m = common::example_sharp();
    assert!(matches!(
        m.blow_up("H1", BlowUpTarget::Free, false),
        Err(ModelError::DuplicateCurve(_))
    ));
    assert!(matches!(
        m.blow_up("X", common::at(&["H1", "H2"]), false),
        Err(ModelError::CurvesDisjoint(..))
    ));
    assert!(m.blow_up("X", common::at(&["nope"]), false).is_err());
    assert!(m.contract("D1").is_err());
    // D3 is a (-2)-curve; H1 is a legitimate (-1)-curve
    assert!(m.contract("D3").is_err());
    assert!(m.contract("H1").is_ok());
}

#[test]
fn contracting_a_non_final_exceptional_curve() {
    // E2 was not the last blow-up, so the result lives on an abstract lattice
    let m = common::example_sharp();
    let (c, map) = m.contract_with_map("E2").unwrap();
    assert_eq!(c.rank(), m.rank() - 1);
    assert_eq!(c.self_intersection("D1").unwrap(), int(-2));
    assert_eq!(c.self_intersection("D3").unwrap(), int(-1));
    assert_eq!(c.intersect("D1", "D3").unwrap(), int(1));
    for x in c.curves() {
        let old = m.class(&x.name).unwrap();
        let e = &map.exceptional;
        let k = m.pairing(old, e).unwrap();
        // σ^* of the image is the total transform
        assert_eq!(map.pullback(&x.class), old + &e.scaled(&k), "{}", x.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn blow_up_then_contract_in_reverse_is_the_identity(start in 0..START_MODELS, plan in steps()) {
        blowup_round_trip(start, &plan)?;
    }
}
