//! Reading fibration data off a model of log Kodaira dimension one, given a
//! declared fibration: which boundary curves are horizontal, and which
//! curves make up each degenerate fiber.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::classification::{self, ClassificationError, Kappa, ZariskiData};
use crate::fibration::{FibrationData, FibrationError, HorizontalType, Multiplicity};
use crate::lattice::{DivisorClass, QDivisor};
use crate::linalg;
use crate::model::{ModelError, SurfaceModel};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Classification(#[from] ClassificationError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error("log Kodaira dimension is {0}, not one")]
    NotKappaOne(Kappa),
    #[error("no fiber groups declared")]
    NoFibers,
    #[error("fiber `{label}`: {reason}")]
    Fiber { label: String, reason: String },
    #[error("horizontal part: {0}")]
    Horizontal(String),
    #[error("fiber `{label}`: D# coefficient {d} of `{component}` matches no fiber over {branch} point(s)")]
    CoefficientMismatch {
        label: String,
        component: String,
        d: String,
        branch: u8,
    },
    #[error("K + D# is not {expected} times the fiber class")]
    NefPartMismatch { expected: String },
    #[error("floor class at m = {m} is not vertical")]
    NotVertical { m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Horizontal {
    TwoSections(String, String),
    /// An irreducible double section with a separable projection, together
    /// with the number of branch points of that projection.
    Separable { curve: String, branch_points: u64 },
    Inseparable(String),
}

impl Horizontal {
    pub fn kind(&self) -> HorizontalType {
        match self {
            Horizontal::TwoSections(..) => HorizontalType::TwoSections,
            Horizontal::Separable { .. } => HorizontalType::Separable,
            Horizontal::Inseparable(_) => HorizontalType::Inseparable,
        }
    }

    pub fn curves(&self) -> Vec<&str> {
        match self {
            Horizontal::TwoSections(a, b) => alloc::vec![a.as_str(), b.as_str()],
            Horizontal::Separable { curve, .. } | Horizontal::Inseparable(curve) => {
                alloc::vec![curve.as_str()]
            }
        }
    }
}

/// The total transform of one boundary fiber, as `(curve, multiplicity)`.
/// The first component is the proper transform of the fiber itself and must
/// have multiplicity one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGroup {
    pub label: String,
    pub branch_count: u8,
    pub components: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAssignment {
    pub base_genus: u32,
    pub horizontal: Horizontal,
    pub fibers: Vec<FiberGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedFiber {
    pub label: String,
    pub branch_count: u8,
    pub d: Rational64,
    pub multiplicity: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub data: FibrationData,
    pub fiber_class: DivisorClass,
    /// Every declared fiber, including those with `d = 0`.
    pub fibers: Vec<ExtractedFiber>,
    pub zariski: ZariskiData,
}

fn fiber_err(label: &str, reason: impl Into<String>) -> ExtractionError {
    ExtractionError::Fiber {
        label: label.to_string(),
        reason: reason.into(),
    }
}

fn to_q64(x: &Rational) -> Option<Rational64> {
    Some(Rational64::new(x.numer().to_i64()?, x.denom().to_i64()?))
}

fn to_big(x: &Rational64) -> Rational {
    Rational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Inverts `d = 1 − 1/m` (two branches) or `d = (1 − 1/m)/2` (one branch).
pub fn multiplicity_from_d(branch_count: u8, d: &Rational) -> Option<Multiplicity> {
    let one = Rational::one();
    let base = match branch_count {
        2 => d.clone(),
        1 => d * rational::int(2),
        _ => return None,
    };
    if base.is_negative() || base > one {
        return None;
    }
    if base == one {
        return Some(Multiplicity::Infinite);
    }
    let m = (&one - &base).recip();
    if !rational::is_integral(&m) {
        return None;
    }
    m.numer().to_u64().map(Multiplicity::Finite)
}

/// Class of the full fiber of one group.
pub fn group_class(model: &SurfaceModel, group: &FiberGroup) -> Result<DivisorClass, ExtractionError> {
    let mut out = DivisorClass::zero(model.rank());
    for (name, mult) in &group.components {
        out = &out + &model.class(name)?.scaled(&rational::int(*mult as i64));
    }
    Ok(out)
}

/// Common class of all declared fibers, checked to be a fiber of a
/// ℙ¹-fibration: `F² = 0` and `K·F = −2`.
pub fn fiber_class(model: &SurfaceModel, a: &FiberAssignment) -> Result<DivisorClass, ExtractionError> {
    let first = a.fibers.first().ok_or(ExtractionError::NoFibers)?;
    let f = group_class(model, first)?;
    for g in &a.fibers[1..] {
        if group_class(model, g)? != f {
            return Err(fiber_err(&g.label, "total transform differs from the other fibers"));
        }
    }
    if !model.pairing(&f, &f)?.is_zero() {
        return Err(fiber_err(&first.label, "fiber class has nonzero self-intersection"));
    }
    if model.lattice().canonical_pairing(&f).map_err(ModelError::from)? != rational::int(-2) {
        return Err(fiber_err(&first.label, "fiber class has canonical degree other than -2"));
    }
    Ok(f)
}

fn horizontal_degree(model: &SurfaceModel, a: &FiberAssignment, f: &DivisorClass) -> Result<i64, ExtractionError> {
    let herr = |s: String| ExtractionError::Horizontal(s);
    for c in a.horizontal.curves() {
        if !model.is_boundary(c) {
            return Err(herr(format!("`{c}` is not a boundary curve")));
        }
    }
    let fiber_degree = |c: &str| -> Result<Rational, ExtractionError> { Ok(model.pairing(model.class(c)?, f)?) };
    match &a.horizontal {
        Horizontal::TwoSections(h1, h2) => {
            for h in [h1, h2] {
                if fiber_degree(h)? != Rational::one() {
                    return Err(herr(format!("`{h}` is not a section")));
                }
            }
            let t = model.intersect(h1, h2)?;
            rational::to_i64(&t).ok_or_else(|| herr("non-integral section intersection".into()))
        }
        Horizontal::Separable { curve, branch_points } => {
            if fiber_degree(curve)? != rational::int(2) {
                return Err(herr(format!("`{curve}` is not a double section")));
            }
            if branch_points % 2 == 1 {
                return Err(herr(format!("odd number of branch points {branch_points}")));
            }
            Ok((branch_points / 2) as i64)
        }
        Horizontal::Inseparable(curve) => {
            if fiber_degree(curve)? != rational::int(2) {
                return Err(herr(format!("`{curve}` is not a double section")));
            }
            Ok(1 - i64::from(a.base_genus))
        }
    }
}

fn boundary_part_connected(model: &SurfaceModel, group: &FiberGroup) -> Result<bool, ExtractionError> {
    let names: Vec<&str> = group
        .components
        .iter()
        .map(|(n, _)| n.as_str())
        .filter(|n| model.is_boundary(n))
        .collect();
    if names.is_empty() {
        return Ok(true);
    }
    let mut seen = alloc::vec![false; names.len()];
    let mut stack = alloc::vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..names.len() {
            if !seen[j] && model.intersect(names[i], names[j])?.is_positive() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.iter().all(|&s| s))
}

/// Reads `(g, t, dᵢ)` off the model. The `dᵢ` are the `D^#` coefficients of
/// the proper transforms of the boundary fibers; they are inverted to
/// multiplicities and cross-checked by the identity
/// `K + D^# = (2g − 2 + t + Σ dᵢ)·F` of classes.
pub fn extract_fibration_data(
    model: &SurfaceModel,
    a: &FiberAssignment,
) -> Result<Extraction, ExtractionError> {
    let z = classification::zariski(model)?;
    if z.kappa != Kappa::One {
        return Err(ExtractionError::NotKappaOne(z.kappa));
    }
    let f = fiber_class(model, a)?;
    let t = horizontal_degree(model, a, &f)?;

    let mut extracted = Vec::new();
    let mut raw = Vec::new();
    for group in &a.fibers {
        let (principal, mult) = group
            .components
            .first()
            .ok_or_else(|| fiber_err(&group.label, "no components"))?;
        if *mult != 1 {
            return Err(fiber_err(&group.label, "first component must have multiplicity 1"));
        }
        model.get(principal)?;
        let d = z.dsharp.coefficient(principal);
        let multiplicity = multiplicity_from_d(group.branch_count, &d).ok_or_else(|| {
            ExtractionError::CoefficientMismatch {
                label: group.label.clone(),
                component: principal.clone(),
                d: rational::fmt_rational(&d),
                branch: group.branch_count,
            }
        })?;
        let d64 = to_q64(&d).ok_or_else(|| fiber_err(&group.label, "coefficient too large"))?;
        if group.branch_count == 1 && d64.is_positive() && d64 != Rational64::new(1, 2) {
            return Err(FibrationError::BranchOneNotHalf(d64).into());
        }
        if group.branch_count == 2
            && d64.is_positive()
            && d64 < Rational64::one()
            && boundary_part_connected(model, group)?
        {
            return Err(fiber_err(
                &group.label,
                "fiber meeting H twice with 0 < d < 1 has connected boundary part",
            ));
        }
        extracted.push(ExtractedFiber {
            label: group.label.clone(),
            branch_count: group.branch_count,
            d: d64,
            multiplicity,
        });
        raw.push((group.branch_count, multiplicity));
    }
    let data = FibrationData::new(a.base_genus, t, a.horizontal.kind(), &raw)?;
    let eps = to_big(&data.epsilon());
    if !model.lattice().classes_equal(&z.nef_part, &f.scaled(&eps)).map_err(ModelError::from)? {
        return Err(ExtractionError::NefPartMismatch {
            expected: rational::fmt_rational(&eps),
        });
    }
    Ok(Extraction {
        data,
        fiber_class: f,
        fibers: extracted,
        zariski: z,
    })
}

/// The class of `⌊m(K + D^#)⌋ = mK + ⌊m·D^#⌋`.
pub fn floor_class(model: &SurfaceModel, dsharp: &QDivisor, m: u64) -> Result<DivisorClass, ModelError> {
    let scaled = dsharp.scaled(&rational::int(m as i64)).floor();
    Ok(&model.canonical_class().scaled(&rational::int(m as i64)) + &model.class_of(&scaled)?)
}

/// A vertical class written as `k·F + N`, with `N` effective, supported on
/// the declared fibers and containing no whole fiber. Then `k·F` is the
/// mobile part and `N` the fixed part of the linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorSplit {
    pub class: DivisorClass,
    pub mobile_multiple: BigInt,
    pub fixed: QDivisor,
}

pub fn split_floor_class(
    model: &SurfaceModel,
    a: &FiberAssignment,
    dsharp: &QDivisor,
    m: u64,
) -> Result<FloorSplit, ExtractionError> {
    let class = floor_class(model, dsharp, m)?;
    let f = fiber_class(model, a)?;
    // unknowns: k, then every non-principal component of every group
    let mut columns = alloc::vec![f.coeffs().to_vec()];
    let mut slots = Vec::new();
    for (gi, group) in a.fibers.iter().enumerate() {
        for (ci, (name, _)) in group.components.iter().enumerate().skip(1) {
            columns.push(model.class(name)?.coeffs().to_vec());
            slots.push((gi, ci));
        }
    }
    let y = linalg::solve_in_span(&columns, class.coeffs())
        .ok_or(ExtractionError::NotVertical { m })?;
    if y.iter().any(|v| !rational::is_integral(v)) {
        return Err(ExtractionError::NotVertical { m });
    }
    let mut k = y[0].numer().clone();
    let mut coeffs: Vec<Vec<BigInt>> = a
        .fibers
        .iter()
        .map(|g| alloc::vec![BigInt::zero(); g.components.len()])
        .collect();
    for ((gi, ci), v) in slots.iter().zip(&y[1..]) {
        coeffs[*gi][*ci] = v.numer().clone();
    }
    let mut fixed = QDivisor::new();
    for (group, n) in a.fibers.iter().zip(&mut coeffs) {
        // remove as many whole fibers as fit, or add enough to be effective
        let q = group
            .components
            .iter()
            .zip(n.iter())
            .map(|((_, mult), nj)| num_integer::Integer::div_floor(nj, &BigInt::from(*mult)))
            .min()
            .unwrap_or_default();
        for ((name, mult), nj) in group.components.iter().zip(n.iter_mut()) {
            *nj -= &q * BigInt::from(*mult);
            fixed.add_term(name, Rational::from_integer(nj.clone()));
        }
        k += q;
    }
    Ok(FloorSplit {
        class,
        mobile_multiple: k,
        fixed,
    })
}
