//! Nefness on tracked curves, the Zariski decomposition of `K + D` and the
//! resulting log Kodaira dimension.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{DivisorClass, QDivisor};
use crate::model::{ModelError, SurfaceModel};
use crate::peeling::{self, PeelingError, Twig};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Peeling(#[from] PeelingError),
    #[error("model is not almost minimal relative to its tracked curves; run the peeling first")]
    NotAlmostMinimal,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

/// Log Kodaira dimension as far as the lattice data can decide it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kappa {
    Zero,
    One,
    Two,
    /// `K + D^#` is negative on some tracked curve.
    NotNefOnTracked,
}

impl Kappa {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kappa::Zero => "zero",
            Kappa::One => "one",
            Kappa::Two => "two",
            Kappa::NotNefOnTracked => "not_nef_on_tracked",
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiData {
    /// Class of the positive part `K + D^#`.
    pub nef_part: DivisorClass,
    /// `D^#`, so that the positive part reads `K + dsharp`.
    pub dsharp: QDivisor,
    /// `Bk(D)`.
    pub negative_part: QDivisor,
    pub nef_self_intersection: Rational,
    pub kappa: Kappa,
    /// Tracked curves on which the positive part is negative, with the pairing.
    pub violations: Vec<(String, Rational)>,
    pub twigs: Vec<Twig>,
}

/// `x·c ≥ 0` for every tracked curve `c`; returns the offending curves.
pub fn is_nef_on_tracked(
    model: &SurfaceModel,
    x: &DivisorClass,
) -> Result<(bool, Vec<(String, Rational)>), ModelError> {
    let mut bad = Vec::new();
    for c in model.curves() {
        let v = model.pairing(x, &c.class)?;
        if v.is_negative() {
            bad.push((c.name.clone(), v));
        }
    }
    Ok((bad.is_empty(), bad))
}

pub fn zariski(model: &SurfaceModel) -> Result<ZariskiData, ClassificationError> {
    if !peeling::is_almost_minimal(model)? {
        return Err(ClassificationError::NotAlmostMinimal);
    }
    let peel = peeling::compute_bark(model)?;
    let nef_part = peeling::nef_class(model, &peel.dsharp)?;
    let negative = model.class_of(&peel.bark)?;
    let k_plus_d = &model.canonical_class() + &model.class_of(&model.boundary())?;
    if !model.lattice().classes_equal(&(&nef_part + &negative), &k_plus_d).map_err(ModelError::from)? {
        return Err(ClassificationError::Inconsistent(
            "positive and negative parts do not add up to K + D".into(),
        ));
    }
    let support: Vec<&str> = peel.bark.support().map(String::as_str).collect();
    if !model.is_negative_definite(&support)? {
        return Err(ClassificationError::Inconsistent(
            "support of the negative part is not negative definite".into(),
        ));
    }
    for z in &support {
        if !model.pairing(&nef_part, model.class(z)?)?.is_zero() {
            return Err(ClassificationError::Inconsistent(alloc::format!(
                "positive part not orthogonal to {z}"
            )));
        }
    }

    let square = model.pairing(&nef_part, &nef_part)?;
    let (nef, violations) = is_nef_on_tracked(model, &nef_part)?;
    let kappa = if !nef {
        Kappa::NotNefOnTracked
    } else if nef_part.is_zero() {
        Kappa::Zero
    } else if square.is_zero() {
        Kappa::One
    } else if square.is_positive() {
        Kappa::Two
    } else {
        return Err(ClassificationError::Inconsistent(alloc::format!(
            "K + D# is nef on tracked curves but has self-intersection {}; some curve is missing from the model",
            rational::fmt_rational(&square)
        )));
    };
    Ok(ZariskiData {
        nef_part,
        dsharp: peel.dsharp,
        negative_part: peel.bark,
        nef_self_intersection: square,
        kappa,
        violations,
        twigs: peel.twigs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleCheck {
    pub ample: bool,
    pub self_intersection: Rational,
    /// Tracked curves with `L·c ≤ 0`.
    pub failures: Vec<(String, Rational)>,
}

/// Nakai–Moishezon relative to tracked curves: `L² > 0` and `L·c > 0`.
pub fn ample_witness_check(model: &SurfaceModel, l: &QDivisor) -> Result<AmpleCheck, ModelError> {
    let class = model.class_of(l)?;
    let square = model.pairing(&class, &class)?;
    let mut failures = Vec::new();
    for c in model.curves() {
        let v = model.pairing(&class, &c.class)?;
        if !v.is_positive() {
            failures.push((c.name.clone(), v));
        }
    }
    Ok(AmpleCheck {
        ample: square.is_positive() && failures.is_empty(),
        self_intersection: square,
        failures,
    })
}
