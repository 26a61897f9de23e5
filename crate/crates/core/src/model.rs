//! Combinatorial SNC pairs: an intersection lattice, a list of tracked
//! curves, and the blow-up history that produced them.
//!
//! Every statement that in geometry quantifies over all curves on the
//! surface is restricted here to the tracked curves.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{DivisorClass, IntersectionLattice, LatticeError, QDivisor};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("duplicate curve name `{0}`")]
    DuplicateCurve(String),
    #[error("curves `{0}` and `{1}` do not meet")]
    CurvesDisjoint(String, String),
    #[error("curve `{name}` cannot be contracted: {reason}")]
    NotContractible { name: String, reason: String },
    #[error("basis label `{0}` already in use")]
    BasisNameClash(String),
    #[error("class of `{name}` has {found} coordinates, lattice rank is {expected}")]
    ClassRank {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The surface a blow-up history starts from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSurface {
    ProjectivePlane,
    /// ℙ¹ × ℙ¹ with basis (f, s): f the fibre of the first projection.
    Quadric,
    /// The Hirzebruch surface 𝔽ₙ with basis (f, s), s the negative section.
    Hirzebruch(u32),
    /// A user-supplied lattice.
    Abstract,
}

impl BaseSurface {
    /// The standard lattice of a named base. `None` for [`BaseSurface::Abstract`].
    pub fn standard_lattice(&self) -> Option<IntersectionLattice> {
        let lattice = match self {
            BaseSurface::ProjectivePlane => IntersectionLattice::from_i64(&["l"], &[&[1]], &[-3]),
            BaseSurface::Quadric => {
                IntersectionLattice::from_i64(&["f", "s"], &[&[0, 1], &[1, 0]], &[-2, -2])
            }
            BaseSurface::Hirzebruch(n) => {
                let n = i64::from(*n);
                IntersectionLattice::from_i64(&["f", "s"], &[&[0, 1], &[1, -n]], &[-(n + 2), -2])
            }
            BaseSurface::Abstract => return None,
        };
        Some(lattice.expect("standard lattices are valid"))
    }
}

/// Where a blow-up happens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowUpTarget {
    /// A point on no tracked curve.
    Free,
    /// A point lying on each of the named curves (one, two, or more curves
    /// through a common point). Each is assumed smooth there.
    On(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpRecord {
    pub exceptional: String,
    pub target: BlowUpTarget,
    pub in_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub base: BaseSurface,
    pub blowups: Vec<BlowUpRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub class: DivisorClass,
    pub pa: i64,
    pub in_boundary: bool,
}

impl Curve {
    pub fn new(name: impl Into<String>, class: DivisorClass, pa: i64, in_boundary: bool) -> Self {
        Self {
            name: name.into(),
            class,
            pa,
            in_boundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    DuplicateName,
    ClassRank,
    NonIntegralClass,
    NegativeGenus,
    GenusMismatch,
    NegativeIntersection,
    NonSncTangency,
    BoundaryNotConnected,
}

impl ViolationKind {
    pub fn label(&self) -> &'static str {
        match self {
            ViolationKind::DuplicateName => "duplicate curve name",
            ViolationKind::ClassRank => "class rank mismatch",
            ViolationKind::NonIntegralClass => "non-integral class",
            ViolationKind::NegativeGenus => "negative arithmetic genus",
            ViolationKind::GenusMismatch => "adjunction genus mismatch",
            ViolationKind::NegativeIntersection => "negative intersection of distinct curves",
            ViolationKind::NonSncTangency => "non-SNC tangency",
            ViolationKind::BoundaryNotConnected => "boundary not connected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub curves: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.kind.label(), self.curves.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Weighted dual graph of the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<String>,
    /// `(i, j, C_i · C_j)` for `i < j` with nonzero intersection.
    pub edges: Vec<(usize, usize, BigInt)>,
}

impl DualGraph {
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.edges.iter().filter_map(move |(i, j, w)| {
            if *i == v {
                Some((*j, w))
            } else if *j == v {
                Some((*i, w))
            } else {
                None
            }
        })
    }

    /// Sum of the intersection numbers with the other vertices.
    pub fn weighted_degree(&self, v: usize) -> BigInt {
        self.neighbors(v).map(|(_, w)| w.clone()).sum()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Connectivity through positive edges. The empty graph is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for (u, w) in self.neighbors(v) {
                    if *w > BigInt::zero() && !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A simple path in which consecutive vertices meet once.
    pub fn is_chain(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        self.edges.len() == n - 1
            && self.edges.iter().all(|(_, _, w)| w.is_one())
            && (0..n).all(|v| self.neighbors(v).count() <= 2)
            && self.is_connected()
    }

    /// A tree with exactly one vertex of degree three and all others of
    /// degree at most two, every edge of weight one.
    pub fn is_fork(&self) -> bool {
        let n = self.vertices.len();
        if n < 4 || self.edges.len() != n - 1 || !self.is_connected() {
            return false;
        }
        if self.edges.iter().any(|(_, _, w)| !w.is_one()) {
            return false;
        }
        let degrees: Vec<usize> = (0..n).map(|v| self.neighbors(v).count()).collect();
        degrees.iter().filter(|&&d| d == 3).count() == 1 && degrees.iter().all(|&d| d <= 3)
    }
}

/// Linear maps attached to one contraction `σ: V → W` of a (−1)-curve `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    /// New basis vectors, written in the old coordinates. They span `e^⊥`.
    pub basis: Vec<Vec<BigInt>>,
    /// Class of the contracted curve in the old lattice.
    pub exceptional: DivisorClass,
}

impl ContractionMap {
    /// `σ^*`: new coordinates to the old lattice.
    pub fn pullback(&self, y: &DivisorClass) -> DivisorClass {
        let n = self.exceptional.len();
        let mut out = DivisorClass::zero(n);
        for (col, coeff) in self.basis.iter().zip(y.coeffs()) {
            for (o, b) in out.0.iter_mut().zip(col) {
                *o += coeff * Rational::from_integer(b.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    lattice: IntersectionLattice,
    curves: Vec<Curve>,
    provenance: Provenance,
    pub affine_claimed: bool,
    pub base_genus_hint: Option<u32>,
}

impl SurfaceModel {
    /// An empty model on a standard base surface.
    pub fn on_base(base: BaseSurface) -> Self {
        let lattice = base
            .standard_lattice()
            .unwrap_or_else(|| IntersectionLattice::from_i64(&[], &[], &[]).unwrap());
        Self {
            lattice,
            curves: Vec::new(),
            provenance: Provenance {
                base,
                blowups: Vec::new(),
            },
            affine_claimed: false,
            base_genus_hint: None,
        }
    }

    /// An empty model on a user-supplied lattice.
    pub fn on_lattice(lattice: IntersectionLattice) -> Self {
        Self {
            lattice,
            curves: Vec::new(),
            provenance: Provenance {
                base: BaseSurface::Abstract,
                blowups: Vec::new(),
            },
            affine_claimed: false,
            base_genus_hint: None,
        }
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn add_curve(&mut self, curve: Curve) -> Result<(), ModelError> {
        if self.curve(&curve.name).is_some() {
            return Err(ModelError::DuplicateCurve(curve.name));
        }
        if curve.class.len() != self.rank() {
            return Err(ModelError::ClassRank {
                name: curve.name,
                expected: self.rank(),
                found: curve.class.len(),
            });
        }
        self.curves.push(curve);
        Ok(())
    }

    /// Builder-style [`SurfaceModel::add_curve`] for integer classes.
    pub fn with_curve(
        mut self,
        name: &str,
        class: &[i64],
        pa: i64,
        in_boundary: bool,
    ) -> Result<Self, ModelError> {
        self.add_curve(Curve::new(name, DivisorClass::from_i64(class), pa, in_boundary))?;
        Ok(self)
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn get(&self, name: &str) -> Result<&Curve, ModelError> {
        self.curve(name)
            .ok_or_else(|| ModelError::UnknownCurve(name.to_string()))
    }

    pub fn class(&self, name: &str) -> Result<&DivisorClass, ModelError> {
        Ok(&self.get(name)?.class)
    }

    pub fn boundary_curves(&self) -> impl Iterator<Item = &Curve> {
        self.curves.iter().filter(|c| c.in_boundary)
    }

    pub fn is_boundary(&self, name: &str) -> bool {
        self.curve(name).is_some_and(|c| c.in_boundary)
    }

    /// `D`: the reduced boundary as a divisor.
    pub fn boundary(&self) -> QDivisor {
        QDivisor::from_terms(self.boundary_curves().map(|c| (c.name.clone(), Rational::one())))
    }

    pub fn canonical_class(&self) -> DivisorClass {
        self.lattice.canonical_class()
    }

    pub fn class_of(&self, d: &QDivisor) -> Result<DivisorClass, ModelError> {
        let mut out = DivisorClass::zero(self.rank());
        for (name, c) in d.iter() {
            out = &out + &self.class(name)?.scaled(c);
        }
        Ok(out)
    }

    pub fn pairing(&self, x: &DivisorClass, y: &DivisorClass) -> Result<Rational, ModelError> {
        Ok(self.lattice.pairing(x, y)?)
    }

    pub fn intersect(&self, a: &str, b: &str) -> Result<Rational, ModelError> {
        self.pairing(self.class(a)?, self.class(b)?)
    }

    pub fn self_intersection(&self, name: &str) -> Result<Rational, ModelError> {
        self.intersect(name, name)
    }

    /// A smooth rational curve with self-intersection −1.
    pub fn is_minus_one_curve(&self, name: &str) -> Result<bool, ModelError> {
        let c = self.get(name)?;
        Ok(c.pa == 0 && self.self_intersection(name)? == -Rational::one())
    }

    pub fn intersection_matrix(&self, names: &[&str]) -> Result<linalg::Matrix, ModelError> {
        let classes = names
            .iter()
            .map(|n| self.class(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.lattice.gram_of(&classes)?)
    }

    /// Negative definiteness of the intersection matrix of distinct tracked
    /// curves, decided by Sylvester's criterion. The empty set qualifies.
    pub fn is_negative_definite(&self, names: &[&str]) -> Result<bool, ModelError> {
        let mut seen = BTreeSet::new();
        for n in names {
            if !seen.insert(*n) {
                return Err(ModelError::DuplicateCurve((*n).to_string()));
            }
        }
        Ok(linalg::is_negative_definite(&self.intersection_matrix(names)?))
    }

    pub fn boundary_dual_graph(&self) -> DualGraph {
        let vertices: Vec<String> = self.boundary_curves().map(|c| c.name.clone()).collect();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let w = self
                    .intersect(&vertices[i], &vertices[j])
                    .expect("boundary curves are tracked");
                if !w.is_zero() {
                    // non-integral intersections are reported by `validate`
                    edges.push((i, j, rational::floor(&w)));
                }
            }
        }
        DualGraph { vertices, edges }
    }

    /// Every broken invariant, in a deterministic order. Empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut names = BTreeSet::new();
        for c in &self.curves {
            if !names.insert(c.name.as_str()) {
                out.push(Violation {
                    kind: ViolationKind::DuplicateName,
                    curves: alloc::vec![c.name.clone()],
                    detail: String::new(),
                });
            }
        }
        let mut well_formed = Vec::new();
        for c in &self.curves {
            if c.class.len() != self.rank() {
                out.push(Violation {
                    kind: ViolationKind::ClassRank,
                    curves: alloc::vec![c.name.clone()],
                    detail: format!("{} coordinates, rank {}", c.class.len(), self.rank()),
                });
                continue;
            }
            well_formed.push(c);
            if !c.class.is_integral() {
                out.push(Violation {
                    kind: ViolationKind::NonIntegralClass,
                    curves: alloc::vec![c.name.clone()],
                    detail: format!("{}", c.class),
                });
            }
            if c.pa < 0 {
                out.push(Violation {
                    kind: ViolationKind::NegativeGenus,
                    curves: alloc::vec![c.name.clone()],
                    detail: format!("pa = {}", c.pa),
                });
            }
            let pa = self.lattice.adjunction_pa(&c.class).expect("rank checked");
            if pa != rational::int(c.pa) {
                out.push(Violation {
                    kind: ViolationKind::GenusMismatch,
                    curves: alloc::vec![c.name.clone()],
                    detail: format!(
                        "declared pa = {}, adjunction gives {}",
                        c.pa,
                        rational::fmt_rational(&pa)
                    ),
                });
            }
        }
        for (i, a) in well_formed.iter().enumerate() {
            for b in &well_formed[i + 1..] {
                let w = self.lattice.pairing(&a.class, &b.class).expect("rank checked");
                if rational::sign(&w) < 0 {
                    out.push(Violation {
                        kind: ViolationKind::NegativeIntersection,
                        curves: alloc::vec![a.name.clone(), b.name.clone()],
                        detail: format!("intersection {}", rational::fmt_rational(&w)),
                    });
                } else if a.in_boundary && b.in_boundary && w > Rational::one() {
                    out.push(Violation {
                        kind: ViolationKind::NonSncTangency,
                        curves: alloc::vec![a.name.clone(), b.name.clone()],
                        detail: format!("intersection {}", rational::fmt_rational(&w)),
                    });
                }
            }
        }
        if self.affine_claimed && well_formed.len() == self.curves.len() {
            let graph = self.boundary_dual_graph();
            if !graph.is_connected() {
                let comps = graph.components();
                out.push(Violation {
                    kind: ViolationKind::BoundaryNotConnected,
                    curves: graph.vertices.clone(),
                    detail: format!("{} connected components", comps.len()),
                });
            }
        }
        out
    }

    /// Blows up a point. The new basis vector is labelled `e_<exceptional>`.
    pub fn blow_up(
        &self,
        exceptional: &str,
        target: BlowUpTarget,
        in_boundary: bool,
    ) -> Result<SurfaceModel, ModelError> {
        if self.curve(exceptional).is_some() {
            return Err(ModelError::DuplicateCurve(exceptional.to_string()));
        }
        let label = format!("e_{exceptional}");
        if self.lattice.basis_names().contains(&label) {
            return Err(ModelError::BasisNameClash(label));
        }
        let targets: &[String] = match &target {
            BlowUpTarget::Free => &[],
            BlowUpTarget::On(t) => t,
        };
        for (i, a) in targets.iter().enumerate() {
            self.get(a)?;
            if targets[..i].contains(a) {
                return Err(ModelError::DuplicateCurve(a.clone()));
            }
            for b in &targets[..i] {
                if rational::sign(&self.intersect(a, b)?) <= 0 {
                    return Err(ModelError::CurvesDisjoint(b.clone(), a.clone()));
                }
            }
        }

        let n = self.rank();
        let mut names = self.lattice.basis_names().to_vec();
        names.push(label);
        let mut gram: Vec<Vec<BigInt>> = self
            .lattice
            .gram()
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(BigInt::zero());
                r
            })
            .collect();
        let mut last = alloc::vec![BigInt::zero(); n];
        last.push(BigInt::from(-1));
        gram.push(last);
        let mut canonical = self.lattice.canonical().to_vec();
        canonical.push(BigInt::one());
        let lattice = IntersectionLattice::new(names, gram, canonical)?;

        let mut curves: Vec<Curve> = self
            .curves
            .iter()
            .map(|c| {
                let mut class = c.class.extended(1);
                if targets.contains(&c.name) {
                    class.0[n] = -Rational::one();
                }
                Curve {
                    class,
                    ..c.clone()
                }
            })
            .collect();
        curves.push(Curve::new(
            exceptional,
            DivisorClass::unit(n + 1, n),
            0,
            in_boundary,
        ));
        let mut provenance = self.provenance.clone();
        provenance.blowups.push(BlowUpRecord {
            exceptional: exceptional.to_string(),
            target,
            in_boundary,
        });
        Ok(SurfaceModel {
            lattice,
            curves,
            provenance,
            affine_claimed: self.affine_claimed,
            base_genus_hint: self.base_genus_hint,
        })
    }

    pub fn contract(&self, name: &str) -> Result<SurfaceModel, ModelError> {
        self.contract_with_map(name).map(|(m, _)| m)
    }

    /// Contracts a tracked (−1)-curve of genus 0 and returns the new model
    /// together with the pullback data of the contraction.
    pub fn contract_with_map(
        &self,
        name: &str,
    ) -> Result<(SurfaceModel, ContractionMap), ModelError> {
        let curve = self.get(name)?;
        let not = |reason: &str| ModelError::NotContractible {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        if curve.pa != 0 {
            return Err(not("arithmetic genus is not 0"));
        }
        let e = curve.class.clone();
        let e_int = e.to_integers().ok_or_else(|| not("class is not integral"))?;
        if self.lattice.self_intersection(&e)? != -Rational::one() {
            return Err(not("self-intersection is not -1"));
        }
        if self.lattice.canonical_pairing(&e)? != -Rational::one() {
            return Err(not("canonical degree is not -1"));
        }

        let n = self.rank();
        let gram = self.lattice.gram();
        // (b_i · e) for each basis vector
        let dots: Vec<BigInt> = (0..n)
            .map(|i| (0..n).map(|j| &gram[i][j] * &e_int[j]).sum())
            .collect();
        let pushed: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut col: Vec<BigInt> = e_int.iter().map(|x| x * &dots[i]).collect();
                col[i] += BigInt::one();
                col
            })
            .collect();
        let basis = linalg::column_echelon(pushed);
        if basis.len() + 1 != n {
            return Err(ModelError::Internal(format!(
                "orthogonal complement of `{name}` has rank {}, expected {}",
                basis.len(),
                n - 1
            )));
        }

        let basis_q: Vec<Vec<Rational>> = basis
            .iter()
            .map(|c| c.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        let project = |x: &DivisorClass| -> Result<DivisorClass, ModelError> {
            let k = self.lattice.pairing(x, &e)?;
            let px = x + &e.scaled(&k);
            let y = linalg::solve_in_span(&basis_q, px.coeffs()).ok_or_else(|| {
                ModelError::Internal(format!("projection of {x} left the complement"))
            })?;
            Ok(DivisorClass(y))
        };

        let old_names = self.lattice.basis_names();
        let mut new_names: Vec<String> = Vec::with_capacity(n - 1);
        for (idx, col) in basis.iter().enumerate() {
            let unit = col
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<Vec<_>>();
            let mut label = match unit.as_slice() {
                [(i, x)] if x.is_one() => old_names[*i].clone(),
                _ => format!("v{idx}"),
            };
            while new_names.contains(&label) || (old_names.contains(&label) && !is_unit_for(col, old_names, &label)) {
                label.push('\'');
            }
            new_names.push(label);
        }
        let new_gram: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let mut s = BigInt::zero();
                        for i in 0..n {
                            if a[i].is_zero() {
                                continue;
                            }
                            for j in 0..n {
                                s += &a[i] * &gram[i][j] * &b[j];
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let canonical = project(&self.lattice.canonical_class())?
            .to_integers()
            .ok_or_else(|| ModelError::Internal("canonical class became fractional".into()))?;
        let lattice = IntersectionLattice::new(new_names, new_gram, canonical)?;

        let mut curves = Vec::with_capacity(self.curves.len() - 1);
        for c in &self.curves {
            if c.name == name {
                continue;
            }
            let k = rational::floor(&self.lattice.pairing(&c.class, &e)?);
            let bump = &k * (&k - BigInt::one()) / BigInt::from(2);
            let pa = c.pa
                + i64::try_from(bump)
                    .map_err(|_| ModelError::Internal("genus overflow".into()))?;
            curves.push(Curve {
                name: c.name.clone(),
                class: project(&c.class)?,
                pa,
                in_boundary: c.in_boundary,
            });
        }

        let last_is_pristine = self
            .provenance
            .blowups
            .last()
            .is_some_and(|r| r.exceptional == name)
            && e == DivisorClass::unit(n, n - 1);
        let provenance = if last_is_pristine {
            let mut p = self.provenance.clone();
            p.blowups.pop();
            p
        } else {
            Provenance {
                base: BaseSurface::Abstract,
                blowups: Vec::new(),
            }
        };

        let model = SurfaceModel {
            lattice,
            curves,
            provenance,
            affine_claimed: self.affine_claimed,
            base_genus_hint: self.base_genus_hint,
        };
        Ok((model, ContractionMap { basis, exceptional: e }))
    }

    /// Replaces the provenance, for loaders that rebuild a model step by step.
    pub fn set_provenance(&mut self, provenance: Provenance) {
        self.provenance = provenance;
    }
}

fn is_unit_for(col: &[BigInt], names: &[String], label: &str) -> bool {
    names
        .iter()
        .position(|n| n == label)
        .is_some_and(|i| col.iter().enumerate().all(|(j, x)| if j == i { x.is_one() } else { x.is_zero() }))
}
