//! Independent reference implementations used to check the library.

use std::collections::{BTreeMap, BTreeSet};

use logsurf_core::fibration::{HorizontalType, Multiplicity};
use logsurf_core::rational::int;
use logsurf_core::{IntersectionLattice, Rational, Rational64, SurfaceModel};
use num_traits::{Signed, Zero};

// ---- linear algebra

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return int(1);
    }
    let mut total = Rational::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Negative definite iff elimination without pivoting meets only negative
/// pivots (an LDLᵀ factorization with negative D).
pub fn nd_by_ldl(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_negative() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    true
}

/// Negative definite iff every principal minor of `-m` is positive.
pub fn nd_by_principal_minors(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| -&m[i][j]).collect()).collect();
        det_cofactor(&sub).is_positive()
    })
}

pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize <= k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Gauss-Jordan elimination with row swaps.
pub fn dense_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

// ---- peeling

/// Bark on a set of curves: the unique `B` supported on them with
/// `(K + D − B)·Z = 0` for every `Z` in the set.
pub fn oracle_bark(model: &SurfaceModel, twig: &[String]) -> Vec<Rational> {
    let k_plus_d = &model.canonical_class() + &model.class_of(&model.boundary()).unwrap();
    let a: Vec<Vec<Rational>> = twig
        .iter()
        .map(|zi| twig.iter().map(|zj| model.intersect(zi, zj).unwrap()).collect())
        .collect();
    let b: Vec<Rational> = twig
        .iter()
        .map(|z| model.pairing(&k_plus_d, model.class(z).unwrap()).unwrap())
        .collect();
    dense_solve(a, b)
}

/// A chain `Z1 - ... - Zr - A` with weights `-w_i` and `A² = a`, built on a
/// unimodular lattice with basis {Z_i, A, W_i, W_A} and Gram [[G, I], [I, 0]].
pub fn twig_model(weights: &[i64], a_self: i64) -> SurfaceModel {
    let r = weights.len();
    let n = r + 1;
    let mut gram = vec![vec![0i64; 2 * n]; 2 * n];
    for i in 0..n {
        gram[i][i] = if i < r { -weights[i] } else { a_self };
        if i + 1 < n {
            gram[i][i + 1] = 1;
            gram[i + 1][i] = 1;
        }
        gram[i][n + i] = 1;
        gram[n + i][i] = 1;
    }
    // K·C = -2 - C² on the rational curves C, and K·W = 0
    let mut canonical = vec![0i64; 2 * n];
    for i in 0..n {
        canonical[n + i] = -2 - gram[i][i];
    }
    let mut names: Vec<String> = (0..r).map(|i| format!("z{i}")).collect();
    names.push("a".into());
    names.extend((0..n).map(|i| format!("w{i}")));
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rows: Vec<&[i64]> = gram.iter().map(Vec::as_slice).collect();
    let lattice = IntersectionLattice::from_i64(&name_refs, &rows, &canonical).unwrap();
    let mut m = SurfaceModel::on_lattice(lattice);
    for i in 0..n {
        let label = if i < r { format!("Z{}", i + 1) } else { "A".into() };
        let mut class = vec![0i64; 2 * n];
        class[i] = 1;
        m = m.with_curve(&label, &class, 0, true).unwrap();
    }
    m
}

// ---- fibration numerics

pub const INF: Multiplicity = Multiplicity::Infinite;

/// `d` straight from the definition.
pub fn oracle_d(branch: u8, m: Multiplicity) -> Rational64 {
    let inv = match m {
        Multiplicity::Infinite => Rational64::zero(),
        Multiplicity::Finite(k) => Rational64::new(1, k as i64),
    };
    let base = Rational64::from_integer(1) - inv;
    if branch == 2 {
        base
    } else {
        base / 2
    }
}

pub fn oracle_eps(g: u32, t: i64, fibers: &[(u8, Multiplicity)]) -> Rational64 {
    fibers
        .iter()
        .fold(Rational64::from_integer(2 * i64::from(g) - 2 + t), |acc, &(b, k)| acc + oracle_d(b, k))
}

pub fn oracle_degree(g: u32, t: i64, fibers: &[(u8, Multiplicity)], m: u64) -> i64 {
    let m = m as i64;
    let mut deg = m * (2 * i64::from(g) - 2 + t);
    for &(b, k) in fibers {
        deg += (Rational64::from_integer(m) * oracle_d(b, k)).floor().to_integer();
    }
    deg
}

pub fn oracle_fails(g: u32, t: i64, fibers: &[(u8, Multiplicity)], m: u64) -> bool {
    oracle_degree(g, t, fibers, m) < 2 * i64::from(g) + 1
}

fn positive_part(fibers: &[(u8, Multiplicity)]) -> Vec<(u8, Multiplicity)> {
    fibers.iter().copied().filter(|&(b, k)| !oracle_d(b, k).is_zero()).collect()
}

pub fn oracle_realizable(g: u32, t: i64, h: HorizontalType, fibers: &[(u8, Multiplicity)]) -> bool {
    let fibers = positive_part(fibers);
    if !oracle_eps(g, t, &fibers).is_positive() {
        return false;
    }
    let ones = fibers.iter().filter(|f| f.0 == 1).count() as i64;
    let has_full = fibers.contains(&(2, INF));
    match h {
        HorizontalType::TwoSections => t >= 0 && ones == 0 && (t > 0 || has_full),
        HorizontalType::Separable => t >= 0 && !(g == 0 && t == 0) && ones <= 2 * t,
        HorizontalType::Inseparable => t == 1 - i64::from(g) && ones as usize == fibers.len(),
    }
}

/// The family an instance falls in, as a lookup keyed by the data shape.
pub fn oracle_case(g: u32, t: i64, h: HorizontalType, fibers: &[(u8, Multiplicity)]) -> &'static str {
    use HorizontalType::*;
    let fibers = positive_part(fibers);
    let s = fibers.len();
    let ones = fibers.iter().filter(|f| f.0 == 1).count();
    if t >= 3 {
        return "1";
    }
    if g >= 2 {
        return if t < 0 { "2-2" } else { "2-1" };
    }
    match (g, t, h) {
        (1, 2, _) => "3-1",
        (1, 1, _) => "3-2",
        (1, _, TwoSections) => "4-1",
        (1, _, Separable) => "4-2",
        (1, _, Inseparable) => "4-3",
        (0, 2, TwoSections) => "5-1",
        (0, 2, Separable) if ones < s => "5-2-1",
        (0, 2, Separable) => "5-2-2",
        (0, 2, Inseparable) => "5-3",
        (0, 1, TwoSections) if s >= 3 => "6-1-1",
        (0, 1, TwoSections) => "6-1-2",
        (0, 1, Separable) => ["6-2-1", "6-2-2", "6-2-3"][ones.min(2)],
        (0, 1, Inseparable) => "6-3",
        (0, _, TwoSections) if s >= 4 => "7-1-1",
        (0, _, TwoSections) => "7-1-2",
        _ => "7-2",
    }
}

/// {(2, k) : 2 ≤ k ≤ 12} together with (2, ∞) and (1, ∞).
pub fn grid_choices() -> Vec<(u8, Multiplicity)> {
    let mut out = vec![(2, INF), (1, INF)];
    out.extend((2..=12).map(|k| (2, Multiplicity::Finite(k))));
    out
}

/// All multisets of size at most `max` over `0..n`, as sorted index lists.
pub fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for v in &frontier {
            let start = v.last().copied().unwrap_or(0);
            for i in start..n {
                let mut w = v.clone();
                w.push(i);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// One realizable grid instance.
pub struct GridInstance {
    pub g: u32,
    pub t: i64,
    pub horizontal: HorizontalType,
    pub fibers: Vec<(u8, Multiplicity)>,
    pub case: &'static str,
}

/// Every realizable instance with g ≤ 5, t in 0..=4 (t = 1 − g for
/// inseparable H) and at most six fibers from [`grid_choices`].
pub fn grid() -> Vec<GridInstance> {
    let choices = grid_choices();
    let sets = multisets(choices.len(), 6);
    let mut out = Vec::new();
    for g in 0..=5u32 {
        for h in [HorizontalType::TwoSections, HorizontalType::Separable, HorizontalType::Inseparable] {
            let ts: Vec<i64> = match h {
                HorizontalType::Inseparable => vec![1 - i64::from(g)],
                _ => (0..=4).collect(),
            };
            for t in ts {
                for set in &sets {
                    let fibers: Vec<(u8, Multiplicity)> = set.iter().map(|&i| choices[i]).collect();
                    if oracle_realizable(g, t, h, &fibers) {
                        let case = oracle_case(g, t, h, &fibers);
                        out.push(GridInstance { g, t, horizontal: h, fibers, case });
                    }
                }
            }
        }
    }
    out
}

/// Families with a failing grid instance, for each m in `ms`.
pub fn grid_failures(grid: &[GridInstance], ms: std::ops::RangeInclusive<u64>) -> BTreeMap<u64, BTreeSet<&'static str>> {
    let mut out: BTreeMap<u64, BTreeSet<&'static str>> = ms.clone().map(|m| (m, BTreeSet::new())).collect();
    for inst in grid {
        for m in ms.clone() {
            if oracle_fails(inst.g, inst.t, &inst.fibers, m) {
                out.get_mut(&m).unwrap().insert(inst.case);
            }
        }
    }
    out
}
