//! Twigs, bark and the minimalization procedures, all relative to the
//! tracked curves of a model.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{DivisorClass, QDivisor};
use crate::model::{ContractionMap, DualGraph, ModelError, SurfaceModel};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelingError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("boundary not big (an admissible rational {shape}): not an affine completion")]
    NotBig { shape: &'static str },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A maximal admissible rational twig, tip first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twig {
    pub components: Vec<String>,
    /// The boundary component met by the last component of the twig.
    pub attachment: String,
}

impl Twig {
    pub fn tip(&self) -> &str {
        &self.components[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingResult {
    pub dsharp: QDivisor,
    pub bark: QDivisor,
    pub twigs: Vec<Twig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionReason {
    /// A superfluous exceptional component of the boundary.
    Superfluous,
    /// A (−1)-curve off the boundary on which `K + D^#` is negative.
    NegativeOnNefPart,
    /// A twig component that became contractible after an earlier step.
    TwigFollowUp,
    /// A (−1)-curve off `⌊D^#⌋` on which `K + D^#` vanishes.
    NefPartNeutral,
    /// A bark component that became contractible after a neutral step.
    BarkFollowUp,
}

impl ContractionReason {
    pub fn label(&self) -> &'static str {
        match self {
            ContractionReason::Superfluous => "superfluous boundary component",
            ContractionReason::NegativeOnNefPart => "(-1)-curve negative on K + D#",
            ContractionReason::TwigFollowUp => "twig component made contractible",
            ContractionReason::NefPartNeutral => "(-1)-curve orthogonal to K + D#",
            ContractionReason::BarkFollowUp => "bark component made contractible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub curve: String,
    pub reason: ContractionReason,
}

fn require_valid(model: &SurfaceModel) -> Result<(), PeelingError> {
    match model.validate().first() {
        None => Ok(()),
        Some(v) => Err(PeelingError::InvalidModel(v.to_string())),
    }
}

fn self_int(model: &SurfaceModel, name: &str) -> Result<Rational, PeelingError> {
    Ok(model.self_intersection(name)?)
}

/// Rational with self-intersection at most −2.
fn admissible_component(model: &SurfaceModel, name: &str) -> Result<bool, PeelingError> {
    let c = model.get(name)?;
    Ok(c.pa == 0 && self_int(model, name)? <= rational::int(-2))
}

fn unit_neighbors(graph: &DualGraph, v: usize) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (u, w) in graph.neighbors(v) {
        if !w.is_one() {
            return None;
        }
        out.push(u);
    }
    Some(out)
}

/// Walks from a tip along the boundary graph while `accept` holds and the
/// next vertex is a chain vertex. Returns the walked vertices and the vertex
/// they attach to, or `None` when the walk covers a whole chain.
fn walk_from_tip(
    graph: &DualGraph,
    tip: usize,
    mut accept: impl FnMut(usize) -> Result<bool, PeelingError>,
) -> Result<Option<(Vec<usize>, usize)>, PeelingError> {
    if !accept(tip)? {
        return Ok(None);
    }
    let mut chain = alloc::vec![tip];
    let mut prev = tip;
    let mut next = match unit_neighbors(graph, tip).as_deref() {
        Some([n]) => *n,
        _ => return Ok(None),
    };
    loop {
        let Some(ns) = unit_neighbors(graph, next) else {
            return Ok(Some((chain, next)));
        };
        match ns.len() {
            // the chain ends here: taking it would swallow a whole component
            1 => return Ok(Some((chain, next))),
            2 if accept(next)? => {
                let after = if ns[0] == prev { ns[1] } else { ns[0] };
                chain.push(next);
                prev = next;
                next = after;
            }
            _ => return Ok(Some((chain, next))),
        }
    }
}

fn tips(graph: &DualGraph) -> Vec<usize> {
    let mut out: Vec<usize> = (0..graph.vertices.len())
        .filter(|&v| matches!(unit_neighbors(graph, v).as_deref(), Some([_])))
        .collect();
    out.sort_by(|a, b| graph.vertices[*a].cmp(&graph.vertices[*b]));
    out
}

fn check_not_rod_or_fork(model: &SurfaceModel, graph: &DualGraph) -> Result<(), PeelingError> {
    for comp in graph.components() {
        let names: Vec<&str> = comp.iter().map(|&i| graph.vertices[i].as_str()).collect();
        let sub = DualGraph {
            vertices: names.iter().map(|s| s.to_string()).collect(),
            edges: graph
                .edges
                .iter()
                .filter(|(i, j, _)| comp.contains(i) && comp.contains(j))
                .map(|(i, j, w)| {
                    let pi = comp.iter().position(|x| x == i).unwrap();
                    let pj = comp.iter().position(|x| x == j).unwrap();
                    (pi, pj, w.clone())
                })
                .collect(),
        };
        let shape = if sub.is_chain() {
            "rod"
        } else if sub.is_fork() {
            "fork"
        } else {
            continue;
        };
        let mut all = true;
        for n in &names {
            all &= admissible_component(model, n)?;
        }
        if all && model.is_negative_definite(&names)? {
            return Err(PeelingError::NotBig { shape });
        }
    }
    Ok(())
}

/// All maximal admissible rational twigs of the boundary, ordered by tip.
pub fn maximal_admissible_twigs(model: &SurfaceModel) -> Result<Vec<Twig>, PeelingError> {
    let graph = model.boundary_dual_graph();
    check_not_rod_or_fork(model, &graph)?;
    let mut out = Vec::new();
    for tip in tips(&graph) {
        let walked = walk_from_tip(&graph, tip, |v| admissible_component(model, &graph.vertices[v]))?;
        let Some((chain, attach)) = walked else {
            continue;
        };
        let names: Vec<String> = chain.iter().map(|&v| graph.vertices[v].clone()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        if !model.is_negative_definite(&refs)? {
            return Err(PeelingError::Internal(format!(
                "chain of (-2)-or-less curves {} is not negative definite",
                names.join(", ")
            )));
        }
        out.push(Twig {
            components: names,
            attachment: graph.vertices[attach].clone(),
        });
    }
    Ok(out)
}

/// Maximal rational twigs that are not admissible. These are legitimate
/// only when the log Kodaira dimension is negative, so they are surfaced
/// as warnings.
pub fn non_admissible_rational_twigs(model: &SurfaceModel) -> Result<Vec<Vec<String>>, PeelingError> {
    let graph = model.boundary_dual_graph();
    let mut out = Vec::new();
    for tip in tips(&graph) {
        let walked = walk_from_tip(&graph, tip, |v| Ok(model.get(&graph.vertices[v])?.pa == 0))?;
        let Some((chain, _)) = walked else {
            continue;
        };
        let names: Vec<String> = chain.iter().map(|&v| graph.vertices[v].clone()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut admissible = model.is_negative_definite(&refs)?;
        for n in &refs {
            admissible &= self_int(model, n)? != -Rational::one();
        }
        if !admissible {
            out.push(names);
        }
    }
    Ok(out)
}

/// `(D − Z)·Z` for a boundary component `Z`.
fn boundary_degree(model: &SurfaceModel, name: &str) -> Result<Rational, PeelingError> {
    let mut deg = Rational::zero();
    for c in model.boundary_curves() {
        if c.name != name {
            deg += model.intersect(&c.name, name)?;
        }
    }
    Ok(deg)
}

/// Solves a tridiagonal system by forward elimination and back substitution.
/// `lower[i]` couples rows `i` and `i + 1`; the matrix is symmetric.
pub fn solve_symmetric_tridiagonal(
    diag: &[Rational],
    off: &[Rational],
    rhs: &[Rational],
) -> Option<Vec<Rational>> {
    let n = diag.len();
    if rhs.len() != n || off.len() + 1 != n.max(1) {
        return None;
    }
    let mut d = diag.to_vec();
    let mut r = rhs.to_vec();
    for i in 1..n {
        if d[i - 1].is_zero() {
            return None;
        }
        let f = &off[i - 1] / &d[i - 1];
        d[i] = &d[i] - &f * &off[i - 1];
        r[i] = &r[i] - &f * &r[i - 1];
    }
    let mut x = alloc::vec![Rational::zero(); n];
    for i in (0..n).rev() {
        if d[i].is_zero() {
            return None;
        }
        let mut v = r[i].clone();
        if i + 1 < n {
            v -= &off[i] * &x[i + 1];
        }
        x[i] = v / &d[i];
    }
    Some(x)
}

/// Bark of every maximal admissible twig, and `D^# = D − Bk(D)`.
pub fn compute_bark(model: &SurfaceModel) -> Result<PeelingResult, PeelingError> {
    let twigs = maximal_admissible_twigs(model)?;
    let mut bark = QDivisor::new();
    for twig in &twigs {
        let z = &twig.components;
        let mut diag = Vec::with_capacity(z.len());
        let mut rhs = Vec::with_capacity(z.len());
        for name in z {
            diag.push(self_int(model, name)?);
            // (K + D)·Z = 2pa − 2 + (D − Z)·Z, with pa = 0 on twigs
            rhs.push(boundary_degree(model, name)? - rational::int(2));
        }
        let off = z
            .windows(2)
            .map(|w| model.intersect(&w[0], &w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        let b = solve_symmetric_tridiagonal(&diag, &off, &rhs).ok_or_else(|| {
            PeelingError::Internal(format!("singular twig block {}", z.join(", ")))
        })?;
        for (name, coeff) in z.iter().zip(b) {
            bark.add_term(name, coeff);
        }
    }
    let dsharp = model.boundary().minus(&bark);
    let result = PeelingResult {
        dsharp,
        bark,
        twigs,
    };
    check_peeling(model, &result)?;
    Ok(result)
}

fn check_peeling(model: &SurfaceModel, p: &PeelingResult) -> Result<(), PeelingError> {
    let fail = |what: String| Err(PeelingError::Internal(what));
    if p.dsharp.plus(&p.bark) != model.boundary() {
        return fail("D# + Bk(D) differs from D".into());
    }
    if p.dsharp.ceil() != model.boundary() {
        return fail("the round-up of D# differs from D".into());
    }
    for (name, b) in p.bark.iter() {
        if !(b.is_positive() && *b < Rational::one()) {
            return fail(format!("bark coefficient of {name} is {}", rational::fmt_rational(b)));
        }
    }
    let nef = nef_class(model, &p.dsharp)?;
    for twig in &p.twigs {
        for z in &twig.components {
            let v = model.pairing(&nef, model.class(z)?)?;
            if !v.is_zero() {
                return fail(format!("(K + D#)·{z} = {}", rational::fmt_rational(&v)));
            }
        }
    }
    Ok(())
}

/// The class of `K + dsharp`.
pub fn nef_class(model: &SurfaceModel, dsharp: &QDivisor) -> Result<DivisorClass, ModelError> {
    Ok(&model.canonical_class() + &model.class_of(dsharp)?)
}

/// Whether a boundary curve is a superfluous exceptional component: a
/// (−1)-curve `E` with `E·(D − E) ≤ 2` meeting distinct components once
/// each. Candidates whose contraction would make two boundary components
/// meet twice are skipped, since the image would not be SNC.
pub fn is_superfluous(model: &SurfaceModel, name: &str) -> Result<bool, PeelingError> {
    let c = model.get(name)?;
    if !c.in_boundary || !model.is_minus_one_curve(name)? {
        return Ok(false);
    }
    let mut met = Vec::new();
    for other in model.boundary_curves() {
        if other.name == name {
            continue;
        }
        let w = model.intersect(&other.name, name)?;
        if w.is_zero() {
            continue;
        }
        if w != Rational::one() {
            return Ok(false);
        }
        met.push(other.name.as_str());
    }
    match met.as_slice() {
        [] | [_] => Ok(true),
        [a, b] => Ok(model.intersect(a, b)?.is_zero()),
        _ => Ok(false),
    }
}

/// The first superfluous exceptional component by name, if any.
pub fn find_superfluous_exceptional(model: &SurfaceModel) -> Result<Option<String>, PeelingError> {
    let mut names: Vec<&str> = model.boundary_curves().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    for n in names {
        if is_superfluous(model, n)? {
            return Ok(Some(n.to_string()));
        }
    }
    Ok(None)
}

fn sorted_names(model: &SurfaceModel) -> Vec<String> {
    let mut names: Vec<String> = model.curves().iter().map(|c| c.name.clone()).collect();
    names.sort_unstable();
    names
}

/// `U ∪ Supp Bk(D)` negative definite.
fn definite_with_bark(model: &SurfaceModel, name: &str, bark: &QDivisor) -> Result<bool, PeelingError> {
    let mut names: Vec<&str> = bark.support().map(String::as_str).collect();
    if !names.contains(&name) {
        names.push(name);
    }
    Ok(model.is_negative_definite(&names)?)
}

/// Candidates for the step that contracts a (−1)-curve `U ⊄ D` with
/// `U·(K + D^#) < 0` and `U + Supp Bk(D)` negative definite.
fn negative_candidate(model: &SurfaceModel, peel: &PeelingResult) -> Result<Option<String>, PeelingError> {
    let nef = nef_class(model, &peel.dsharp)?;
    for name in sorted_names(model) {
        let c = model.get(&name)?;
        if c.in_boundary || !model.is_minus_one_curve(&name)? {
            continue;
        }
        if !model.pairing(&nef, &c.class)?.is_negative() {
            continue;
        }
        if definite_with_bark(model, &name, &peel.bark)? {
            return Ok(Some(name));
        }
    }
    Ok(None)
}

/// Contracts superfluous components among `watch` until none is left.
fn follow_up(
    mut model: SurfaceModel,
    watch: &[String],
    reason: ContractionReason,
    log: &mut Vec<Contraction>,
    maps: &mut Vec<ContractionMap>,
) -> Result<SurfaceModel, PeelingError> {
    loop {
        let mut next = None;
        let mut sorted: Vec<&String> = watch.iter().collect();
        sorted.sort();
        for n in sorted {
            if model.curve(n).is_some() && is_superfluous(&model, n)? {
                next = Some(n.clone());
                break;
            }
        }
        let Some(n) = next else {
            return Ok(model);
        };
        let (m, map) = model.contract_with_map(&n)?;
        model = m;
        maps.push(map);
        log.push(Contraction { curve: n, reason });
    }
}

/// Runs the peeling operations until none applies: contract superfluous
/// boundary components, recompute the bark, then contract a (−1)-curve
/// negative on `K + D^#` together with the twig components that become
/// contractible after it. Ties are broken by curve name.
pub fn almost_minimalize(
    model: &SurfaceModel,
) -> Result<(SurfaceModel, Vec<Contraction>), PeelingError> {
    require_valid(model)?;
    let budget = model.rank();
    let mut model = model.clone();
    let mut log = Vec::new();
    let mut maps = Vec::new();
    loop {
        if log.len() > budget {
            return Err(PeelingError::Internal("contraction budget exceeded".into()));
        }
        if let Some(e) = find_superfluous_exceptional(&model)? {
            model = model.contract(&e)?;
            log.push(Contraction {
                curve: e,
                reason: ContractionReason::Superfluous,
            });
            continue;
        }
        let peel = compute_bark(&model)?;
        let Some(u) = negative_candidate(&model, &peel)? else {
            return Ok((model, log));
        };
        let mut watch = Vec::new();
        for twig in &peel.twigs {
            let mut meets = false;
            for z in &twig.components {
                meets |= !model.intersect(&u, z)?.is_zero();
            }
            if meets {
                watch.extend(twig.components.iter().cloned());
            }
        }
        model = model.contract(&u)?;
        log.push(Contraction {
            curve: u,
            reason: ContractionReason::NegativeOnNefPart,
        });
        model = follow_up(model, &watch, ContractionReason::TwigFollowUp, &mut log, &mut maps)?;
    }
}

/// True when no step of [`almost_minimalize`] applies.
pub fn is_almost_minimal(model: &SurfaceModel) -> Result<bool, PeelingError> {
    require_valid(model)?;
    if find_superfluous_exceptional(model)?.is_some() {
        return Ok(false);
    }
    let peel = compute_bark(model)?;
    Ok(negative_candidate(model, &peel)?.is_none())
}

fn neutral_candidate(model: &SurfaceModel, peel: &PeelingResult) -> Result<Option<String>, PeelingError> {
    let nef = nef_class(model, &peel.dsharp)?;
    let floor = peel.dsharp.floor();
    for name in sorted_names(model) {
        if !floor.coefficient(&name).is_zero() || !model.is_minus_one_curve(&name)? {
            continue;
        }
        if !model.pairing(&nef, model.class(&name)?)?.is_zero() {
            continue;
        }
        if definite_with_bark(model, &name, &peel.bark)? {
            return Ok(Some(name));
        }
    }
    Ok(None)
}

/// Pulls a class back through contractions listed in the order performed.
pub fn pull_back(maps: &[ContractionMap], class: &DivisorClass) -> DivisorClass {
    maps.iter().rev().fold(class.clone(), |acc, m| m.pullback(&acc))
}

/// Runs [`almost_minimalize`], then repeatedly contracts a (−1)-curve `E`
/// off `⌊D^#⌋` with `E·(K + D^#) = 0` and `E + Supp Bk(D)` negative
/// definite, followed by the bark components this makes contractible.
///
/// Each step checks `E·D = E·⌊D^#⌋ = 1` beforehand, and afterwards that
/// `(K + D^#)²` is unchanged and that `K + D^#` is the pullback of the new
/// `K + D^#`.
pub fn strongly_minimalize(
    model: &SurfaceModel,
) -> Result<(SurfaceModel, Vec<Contraction>), PeelingError> {
    let (mut model, mut log) = almost_minimalize(model)?;
    let budget = model.rank();
    let mut steps = 0;
    loop {
        let peel = compute_bark(&model)?;
        let Some(e) = neutral_candidate(&model, &peel)? else {
            return Ok((model, log));
        };
        steps += 1;
        if steps > budget {
            return Err(PeelingError::Internal("contraction budget exceeded".into()));
        }
        let e_class = model.class(&e)?.clone();
        let e_d = model.pairing(&e_class, &model.class_of(&model.boundary())?)?;
        let e_floor = model.pairing(&e_class, &model.class_of(&peel.dsharp.floor())?)?;
        if e_d != Rational::one() || e_floor != Rational::one() {
            return Err(PeelingError::Internal(format!(
                "neutral (-1)-curve {e} violates E·D = E·floor(D#) = 1 (E·D = {}, E·floor(D#) = {})",
                rational::fmt_rational(&e_d),
                rational::fmt_rational(&e_floor)
            )));
        }
        let before = nef_class(&model, &peel.dsharp)?;
        let before_sq = model.pairing(&before, &before)?;
        let watch: Vec<String> = peel.bark.support().cloned().collect();

        let mut maps = Vec::new();
        let (m, map) = model.contract_with_map(&e)?;
        maps.push(map);
        log.push(Contraction {
            curve: e.clone(),
            reason: ContractionReason::NefPartNeutral,
        });
        model = follow_up(m, &watch, ContractionReason::BarkFollowUp, &mut log, &mut maps)?;

        let after_peel = compute_bark(&model)?;
        let after = nef_class(&model, &after_peel.dsharp)?;
        if model.pairing(&after, &after)? != before_sq {
            return Err(PeelingError::Internal(format!(
                "(K + D#)^2 changed when contracting {e}"
            )));
        }
        if pull_back(&maps, &after) != before {
            return Err(PeelingError::Internal(format!(
                "K + D# is not the pullback of its image after contracting {e}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn tridiagonal_solver_on_a_two_chain() {
        let x = solve_symmetric_tridiagonal(&[int(-2), int(-2)], &[int(1)], &[int(-1), int(0)])
            .unwrap();
        assert_eq!(x, alloc::vec![q(2, 3), q(1, 3)]);
        assert_eq!(
            solve_symmetric_tridiagonal(&[int(-3)], &[], &[int(-1)]).unwrap(),
            alloc::vec![q(1, 3)]
        );
        assert!(solve_symmetric_tridiagonal(&[int(-1), int(-1)], &[int(1)], &[int(0), int(0)]).is_none());
    }
}
