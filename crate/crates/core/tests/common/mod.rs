#![allow(dead_code)]

pub mod checks;
pub mod oracle;

use logsurf_core::extraction::{FiberAssignment, FiberGroup, Horizontal};
use logsurf_core::{BaseSurface, BlowUpTarget, IntersectionLattice, SurfaceModel};

pub fn at(names: &[&str]) -> BlowUpTarget {
    BlowUpTarget::On(names.iter().map(|s| s.to_string()).collect())
}

pub fn blow(m: SurfaceModel, ex: &str, on: &[&str], boundary: bool) -> SurfaceModel {
    m.blow_up(ex, at(on), boundary).unwrap()
}

/// Two disjoint sections and three fibers on P1 x P1; the second and third
/// fibers become chains of multiplicity 3 and 2.
pub fn example_sharp() -> SurfaceModel {
    let m = SurfaceModel::on_base(BaseSurface::Quadric)
        .with_curve("H1", &[0, 1], 0, true)
        .unwrap()
        .with_curve("H2", &[0, 1], 0, true)
        .unwrap()
        .with_curve("F1", &[1, 0], 0, true)
        .unwrap()
        .with_curve("D2", &[1, 0], 0, true)
        .unwrap()
        .with_curve("D4", &[1, 0], 0, true)
        .unwrap();
    let m = blow(m, "D1", &["D2", "H1"], true);
    let m = blow(m, "D3", &["D1", "D2"], true);
    let m = blow(m, "E2", &["D1", "D3"], false);
    let m = blow(m, "D5", &["D4", "H2"], true);
    let mut m = blow(m, "E3", &["D5", "D4"], false);
    m.affine_claimed = true;
    m
}

pub fn example_sharp_fibers() -> FiberAssignment {
    FiberAssignment {
        base_genus: 0,
        horizontal: Horizontal::TwoSections("H1".into(), "H2".into()),
        fibers: vec![
            group("F1", 2, &[("F1", 1)]),
            group("F2", 2, &[("D2", 1), ("D3", 2), ("E2", 3), ("D1", 1)]),
            group("F3", 2, &[("D4", 1), ("E3", 2), ("D5", 1)]),
        ],
    }
}

/// A double section H ~ f + 2s with two degenerate boundary fibers.
pub fn double_section() -> SurfaceModel {
    let m = SurfaceModel::on_base(BaseSurface::Quadric)
        .with_curve("H", &[1, 2], 0, true)
        .unwrap()
        .with_curve("D2", &[1, 0], 0, true)
        .unwrap()
        .with_curve("D4", &[1, 0], 0, true)
        .unwrap()
        .with_curve("F", &[1, 0], 0, false)
        .unwrap()
        .with_curve("H1", &[0, 1], 0, false)
        .unwrap()
        .with_curve("H2", &[0, 1], 0, false)
        .unwrap();
    let m = blow(m, "D1", &["D2", "H", "H1"], true);
    let m = blow(m, "D3", &["D1", "D2"], true);
    let m = blow(m, "E1", &["D1", "D3"], false);
    let m = blow(m, "D5", &["D4", "H", "H2"], true);
    let mut m = blow(m, "E2", &["D5", "D4"], false);
    m.affine_claimed = true;
    m
}

pub fn double_section_fibers() -> FiberAssignment {
    FiberAssignment {
        base_genus: 0,
        horizontal: Horizontal::Separable {
            curve: "H".into(),
            branch_points: 2,
        },
        fibers: vec![
            group("F1", 2, &[("D2", 1), ("D3", 2), ("E1", 3), ("D1", 1)]),
            group("F2", 2, &[("D4", 1), ("E2", 2), ("D5", 1)]),
        ],
    }
}

/// Ruled surface over an elliptic curve with an inseparable double section
/// H tangent to the fiber D1.
pub fn elliptic_ruled() -> SurfaceModel {
    let lattice = IntersectionLattice::from_i64(&["f", "c0"], &[&[0, 1], &[1, 0]], &[0, -2]).unwrap();
    let m = SurfaceModel::on_lattice(lattice)
        .with_curve("H", &[0, 2], 1, true)
        .unwrap()
        .with_curve("D1", &[1, 0], 0, true)
        .unwrap();
    let m = blow(m, "D2", &["H", "D1"], true);
    let mut m = blow(m, "E1", &["H", "D1", "D2"], true);
    m.affine_claimed = true;
    m.base_genus_hint = Some(1);
    m
}

pub fn elliptic_ruled_fibers() -> FiberAssignment {
    FiberAssignment {
        base_genus: 1,
        horizontal: Horizontal::Inseparable("H".into()),
        fibers: vec![group("F1", 1, &[("D1", 1), ("E1", 2), ("D2", 1)])],
    }
}

pub fn group(label: &str, branch: u8, comps: &[(&str, u64)]) -> FiberGroup {
    FiberGroup {
        label: label.into(),
        branch_count: branch,
        components: comps.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
    }
}

pub fn all_examples() -> Vec<(&'static str, SurfaceModel)> {
    vec![
        ("sharp", example_sharp()),
        ("double_section", double_section()),
        ("elliptic_ruled", elliptic_ruled()),
    ]
}
