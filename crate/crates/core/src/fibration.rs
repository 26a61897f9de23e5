//! The degree of `δ_m`, the fibration criterion, exact thresholds, the case
//! catalog and the exhaustive verification of the global bound.
//!
//! Everything here is small-integer arithmetic: `d`-values have denominators
//! dividing `2m_i`, so `Rational64` is exact for every realistic input.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("branch count must be 1 or 2, got {0}")]
    InvalidBranchCount(u8),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("a fiber meeting H once has d = {0}; only 0 and 1/2 are possible")]
    BranchOneNotHalf(Rational64),
    #[error("two sections meet with negative intersection t = {0}")]
    NegativeSectionIntersection(i64),
    #[error("inseparable H forces t = 1 - g = {expected}, got {found}")]
    InseparableDegree { expected: i64, found: i64 },
    #[error("not log Kodaira dimension one: 2g - 2 + t + sum d = {0} is not positive")]
    NotKappaOne(Rational64),
    #[error("m must be at least 1")]
    ZeroM,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl Multiplicity {
    pub fn parse(text: &str) -> Result<Self, FibrationError> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("inf") {
            return Ok(Multiplicity::Infinite);
        }
        let k: u64 = text
            .parse()
            .map_err(|_| FibrationError::Parse(format!("bad multiplicity `{text}`")))?;
        if k == 0 {
            return Err(FibrationError::ZeroMultiplicity);
        }
        Ok(Multiplicity::Finite(k))
    }
}

/// How the horizontal part of the boundary sits over the base curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HorizontalType {
    TwoSections,
    Separable,
    Inseparable,
}

impl HorizontalType {
    pub const ALL: [HorizontalType; 3] = [
        HorizontalType::TwoSections,
        HorizontalType::Separable,
        HorizontalType::Inseparable,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            HorizontalType::TwoSections => "2sec",
            HorizontalType::Separable => "sep",
            HorizontalType::Inseparable => "insep",
        }
    }

    pub fn parse(text: &str) -> Result<Self, FibrationError> {
        match text.trim() {
            "2sec" | "two_sections" => Ok(HorizontalType::TwoSections),
            "sep" | "irreducible_separable" => Ok(HorizontalType::Separable),
            "insep" | "irreducible_inseparable" => Ok(HorizontalType::Inseparable),
            other => Err(FibrationError::Parse(format!("bad horizontal type `{other}`"))),
        }
    }
}

impl fmt::Display for HorizontalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `d = 1 − 1/m` over two branches, `d = (1 − 1/m)/2` over one; `1/∞ = 0`.
pub fn d_value(branch_count: u8, multiplicity: Multiplicity) -> Result<Rational64, FibrationError> {
    let base = match multiplicity {
        Multiplicity::Infinite => Rational64::one(),
        Multiplicity::Finite(0) => return Err(FibrationError::ZeroMultiplicity),
        Multiplicity::Finite(k) => {
            let k = i64::try_from(k).map_err(|_| FibrationError::Parse("multiplicity overflow".into()))?;
            Rational64::one() - Rational64::new(1, k)
        }
    };
    match branch_count {
        2 => Ok(base),
        1 => Ok(base / 2),
        b => Err(FibrationError::InvalidBranchCount(b)),
    }
}

/// `⌊m·d⌋` computed from the fiber type without forming `d`.
pub fn floor_m_d(branch_count: u8, multiplicity: Multiplicity, m: u64) -> i64 {
    let m = i128::from(m);
    let v = match (branch_count, multiplicity) {
        (2, Multiplicity::Infinite) => m,
        (_, Multiplicity::Infinite) => m / 2,
        (2, Multiplicity::Finite(k)) => {
            let k = i128::from(k);
            m - Integer::div_ceil(&m, &k)
        }
        (_, Multiplicity::Finite(k)) => {
            let k = i128::from(k);
            Integer::div_floor(&(m * (k - 1)), &(2 * k))
        }
    };
    v as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryFiberDatum {
    pub branch_count: u8,
    pub multiplicity: Multiplicity,
    pub d: Rational64,
}

impl BoundaryFiberDatum {
    pub fn new(branch_count: u8, multiplicity: Multiplicity) -> Result<Self, FibrationError> {
        let d = d_value(branch_count, multiplicity)?;
        Ok(Self {
            branch_count,
            multiplicity,
            d,
        })
    }
}

/// Numerical data of the fibration: base genus, `t = deg δ`, the shape of
/// the horizontal boundary, and the boundary fibers with `d > 0`, sorted so
/// that `d` is nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibrationData {
    pub g: u32,
    pub t: i64,
    pub horizontal: HorizontalType,
    pub fibers: Vec<BoundaryFiberDatum>,
}

impl FibrationData {
    pub fn new(
        g: u32,
        t: i64,
        horizontal: HorizontalType,
        fibers: &[(u8, Multiplicity)],
    ) -> Result<Self, FibrationError> {
        let mut data = Vec::with_capacity(fibers.len());
        for &(b, m) in fibers {
            let f = BoundaryFiberDatum::new(b, m)?;
            if f.d.is_zero() {
                continue;
            }
            if b == 1 && f.d != Rational64::new(1, 2) {
                return Err(FibrationError::BranchOneNotHalf(f.d));
            }
            data.push(f);
        }
        match horizontal {
            HorizontalType::TwoSections if t < 0 => {
                return Err(FibrationError::NegativeSectionIntersection(t))
            }
            HorizontalType::Inseparable if t != 1 - i64::from(g) => {
                return Err(FibrationError::InseparableDegree {
                    expected: 1 - i64::from(g),
                    found: t,
                })
            }
            _ => {}
        }
        data.sort_by(|a, b| {
            b.d.cmp(&a.d)
                .then(b.branch_count.cmp(&a.branch_count))
                .then(b.multiplicity.cmp(&a.multiplicity))
        });
        Ok(Self {
            g,
            t,
            horizontal,
            fibers: data,
        })
    }

    /// The number of boundary fibers with `d > 0`.
    pub fn s(&self) -> usize {
        self.fibers.len()
    }

    /// `2g − 2 + t`, the degree of `K_B + δ`.
    pub fn base_degree(&self) -> i64 {
        2 * i64::from(self.g) - 2 + self.t
    }

    /// `2g − 2 + t + Σ dᵢ`, positive exactly when the data has log Kodaira
    /// dimension one.
    pub fn epsilon(&self) -> Rational64 {
        self.fibers
            .iter()
            .fold(Rational64::from_integer(self.base_degree()), |acc, f| acc + f.d)
    }

    pub fn branch_one_count(&self) -> usize {
        self.fibers.iter().filter(|f| f.branch_count == 1).count()
    }

    /// Parses `g=<int> t=<int> horiz=<2sec|sep|insep> fibers=(b,m),...`.
    pub fn parse_inline(text: &str) -> Result<Self, FibrationError> {
        let mut g = None;
        let mut t = None;
        let mut horiz = None;
        let mut fibers = None;
        let perr = |s: String| FibrationError::Parse(s);
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| perr(format!("expected key=value, got `{token}`")))?;
            match key {
                "g" => g = Some(value.parse::<u32>().map_err(|_| perr(format!("bad genus `{value}`")))?),
                "t" => t = Some(value.parse::<i64>().map_err(|_| perr(format!("bad t `{value}`")))?),
                "horiz" => horiz = Some(HorizontalType::parse(value)?),
                "fibers" => fibers = Some(parse_fiber_list(value)?),
                other => return Err(perr(format!("unknown key `{other}`"))),
            }
        }
        let g = g.ok_or_else(|| perr("missing g=".into()))?;
        let t = t.ok_or_else(|| perr("missing t=".into()))?;
        let horiz = horiz.ok_or_else(|| perr("missing horiz=".into()))?;
        FibrationData::new(g, t, horiz, &fibers.unwrap_or_default())
    }
}

fn parse_fiber_list(text: &str) -> Result<Vec<(u8, Multiplicity)>, FibrationError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| FibrationError::Parse(format!("bad fiber list `{text}`")))?;
        let (pair, tail) = body;
        let (b, m) = pair
            .split_once(',')
            .ok_or_else(|| FibrationError::Parse(format!("bad fiber `({pair})`")))?;
        let b: u8 = b
            .trim()
            .parse()
            .map_err(|_| FibrationError::Parse(format!("bad branch count `{b}`")))?;
        if b != 1 && b != 2 {
            return Err(FibrationError::InvalidBranchCount(b));
        }
        out.push((b, Multiplicity::parse(m)?));
        rest = tail.trim_start_matches(',').trim();
    }
    Ok(out)
}

impl fmt::Display for FibrationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} t={} horiz={} fibers=", self.g, self.t, self.horizontal)?;
        for (i, fib) in self.fibers.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", fib.branch_count, fib.multiplicity)?;
        }
        Ok(())
    }
}

/// `deg δ_m = m(2g − 2 + t) + Σ ⌊m·dᵢ⌋`.
pub fn delta_m_degree(data: &FibrationData, m: u64) -> i64 {
    let mut deg = i64::try_from(m).expect("m fits in i64") * data.base_degree();
    for f in &data.fibers {
        deg += floor_m_d(f.branch_count, f.multiplicity, m);
    }
    deg
}

/// `deg δ_m ≥ 2g + 1`.
pub fn fibration_criterion(data: &FibrationData, m: u64) -> bool {
    delta_m_degree(data, m) > 2 * i64::from(data.g)
}

/// `⌈(2g + 1 + s)/ε⌉` (at least 1). For `m` at or beyond it the criterion
/// holds: `⌊x⌋ > x − 1` gives `deg δ_m > mε − s ≥ 2g + 1` when `s > 0`,
/// and `deg δ_m = mε` when `s = 0`.
pub fn horizon(data: &FibrationData) -> Result<u64, FibrationError> {
    let eps = data.epsilon();
    if !eps.is_positive() {
        return Err(FibrationError::NotKappaOne(eps));
    }
    let bound = Rational64::from_integer(2 * i64::from(data.g) + 1 + data.s() as i64) / eps;
    Ok(bound.ceil().to_integer().max(1) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    /// Least `M` such that the criterion holds for every `m ≥ M`.
    pub threshold: u64,
    pub horizon: u64,
}

pub fn fibration_threshold(data: &FibrationData) -> Result<Threshold, FibrationError> {
    let h = horizon(data)?;
    let last_failure = (1..h).rev().find(|&m| !fibration_criterion(data, m));
    Ok(Threshold {
        threshold: last_failure.map_or(1, |m| m + 1),
        horizon: h,
    })
}

/// The geometric constraints an instance must satisfy to come from a
/// smooth affine surface of log Kodaira dimension one.
pub fn realizability(data: &FibrationData) -> Result<(), &'static str> {
    if !data.epsilon().is_positive() {
        return Err("2g - 2 + t + sum d must be positive");
    }
    let g = i64::from(data.g);
    match data.horizontal {
        HorizontalType::TwoSections => {
            if data.t < 0 {
                return Err("two sections meet nonnegatively");
            }
            if data.fibers.iter().any(|f| f.branch_count != 2) {
                return Err("every boundary fiber meets two sections in two points");
            }
            if data.t == 0 && !data.fibers.iter().any(|f| f.d.is_one()) {
                return Err("disjoint sections need a boundary fiber with d = 1 to connect the boundary");
            }
        }
        HorizontalType::Separable => {
            if data.t < 0 {
                return Err("a separable double cover has t >= 0");
            }
            if g == 0 && data.t == 0 {
                return Err("the projective line has no connected unramified double cover");
            }
            if data.branch_one_count() as i64 > 2 * data.t {
                return Err("more fibers over branch points than branch points");
            }
        }
        HorizontalType::Inseparable => {
            if data.t != 1 - g {
                return Err("an inseparable double cover has t = 1 - g");
            }
            if data.fibers.iter().any(|f| f.branch_count != 1) {
                return Err("an inseparable double cover meets every fiber once");
            }
        }
    }
    Ok(())
}

/// The case of the proof of the global bound an instance belongs to.
pub fn classify(data: &FibrationData) -> &'static str {
    let s = data.s();
    let t = data.t;
    if t >= 3 {
        return "1";
    }
    match data.g {
        g if g >= 2 => {
            if t >= 0 {
                "2-1"
            } else {
                "2-2"
            }
        }
        1 => match t {
            2 => "3-1",
            1 => "3-2",
            _ => match data.horizontal {
                HorizontalType::TwoSections => "4-1",
                HorizontalType::Separable => "4-2",
                HorizontalType::Inseparable => "4-3",
            },
        },
        _ => match t {
            2 => match data.horizontal {
                HorizontalType::TwoSections => "5-1",
                HorizontalType::Separable => {
                    if data.fibers.iter().any(|f| f.branch_count == 2) {
                        "5-2-1"
                    } else {
                        "5-2-2"
                    }
                }
                HorizontalType::Inseparable => "5-3",
            },
            1 => match data.horizontal {
                HorizontalType::TwoSections => {
                    if s >= 3 {
                        "6-1-1"
                    } else {
                        "6-1-2"
                    }
                }
                HorizontalType::Separable => match data.branch_one_count() {
                    0 => "6-2-1",
                    1 => "6-2-2",
                    _ => "6-2-3",
                },
                HorizontalType::Inseparable => "6-3",
            },
            _ => match data.horizontal {
                HorizontalType::TwoSections => {
                    if s >= 4 {
                        "7-1-1"
                    } else {
                        "7-1-2"
                    }
                }
                _ => "7-2",
            },
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusRange {
    Exactly(u32),
    AtLeast(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRange {
    Exactly(i64),
    AtLeast(i64),
    Between(i64, i64),
    OneMinusGenus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFamily {
    pub id: &'static str,
    pub genus: GenusRange,
    pub t: DegreeRange,
    pub horizontal: &'static [HorizontalType],
    pub s_min: usize,
    pub s_max: Option<usize>,
    /// The constraints in words, including the forced `d`-values.
    pub constraints: &'static str,
    /// The bound proved for the family; `None` for impossible families.
    pub claimed_threshold: Option<u64>,
    /// Why the family is empty, if it is.
    pub impossible: Option<&'static str>,
    /// The claimed bound is attained by a known construction.
    pub sharp: bool,
}

const TWO: &[HorizontalType] = &[HorizontalType::TwoSections];
const SEP: &[HorizontalType] = &[HorizontalType::Separable];
const INSEP: &[HorizontalType] = &[HorizontalType::Inseparable];
const TWO_OR_SEP: &[HorizontalType] = &[HorizontalType::TwoSections, HorizontalType::Separable];

#[allow(clippy::too_many_arguments)]
const fn family(
    id: &'static str,
    genus: GenusRange,
    t: DegreeRange,
    horizontal: &'static [HorizontalType],
    s_min: usize,
    s_max: Option<usize>,
    constraints: &'static str,
    claimed_threshold: Option<u64>,
    impossible: Option<&'static str>,
    sharp: bool,
) -> CaseFamily {
    CaseFamily {
        id,
        genus,
        t,
        horizontal,
        s_min,
        s_max,
        constraints,
        claimed_threshold,
        impossible,
        sharp,
    }
}

/// All 21 case families, in the order of the proof.
pub fn case_catalog() -> Vec<CaseFamily> {
    use DegreeRange as T;
    use GenusRange::*;
    alloc::vec![
        family("1", AtLeast(0), T::AtLeast(3), TWO_OR_SEP, 0, None,
            "t >= 3, any base genus", Some(1), None, false),
        family("2-1", AtLeast(2), T::Between(0, 2), TWO_OR_SEP, 0, None,
            "g >= 2, 0 <= t <= 2", Some(3), None, false),
        family("2-2", AtLeast(2), T::OneMinusGenus, INSEP, 0, None,
            "g >= 2, t = 1 - g < 0, H an inseparable double section, every d = 1/2", Some(5), None, false),
        family("3-1", Exactly(1), T::Exactly(2), TWO_OR_SEP, 0, None,
            "g = 1, t = 2", Some(2), None, false),
        family("3-2", Exactly(1), T::Exactly(1), TWO_OR_SEP, 0, None,
            "g = 1, t = 1", Some(3), None, false),
        family("4-1", Exactly(1), T::Exactly(0), TWO, 1, None,
            "g = 1, t = 0, two disjoint sections, d_i = 1 - 1/m_i, d_1 = 1 forced by connectedness", Some(3), None, false),
        family("4-2", Exactly(1), T::Exactly(0), SEP, 1, None,
            "g = 1, t = 0, H an unramified double section, d_i = 1 - 1/m_i >= 1/2", Some(6), None, false),
        family("4-3", Exactly(1), T::Exactly(0), INSEP, 1, None,
            "g = 1, t = 0, H an inseparable double section, every d = 1/2", Some(6), None, true),
        family("5-1", Exactly(0), T::Exactly(2), TWO, 1, None,
            "g = 0, t = 2, two sections, d_i = 1 - 1/m_i >= 1/2", Some(2), None, false),
        family("5-2-1", Exactly(0), T::Exactly(2), SEP, 1, None,
            "g = 0, t = 2, H separable with 4 branch points, some fiber meets H twice", Some(2), None, false),
        family("5-2-2", Exactly(0), T::Exactly(2), SEP, 1, None,
            "g = 0, t = 2, H separable, every boundary fiber meets H once, every d = 1/2", Some(2), None, false),
        family("5-3", Exactly(0), T::Exactly(2), INSEP, 1, None,
            "g = 0, t = 2, H inseparable", None,
            Some("an inseparable double section has t = 1 - g = 1, not 2"), false),
        family("6-1-1", Exactly(0), T::Exactly(1), TWO, 3, None,
            "g = 0, t = 1, two sections, s >= 3, d_i >= 1/2", Some(4), None, false),
        family("6-1-2", Exactly(0), T::Exactly(1), TWO, 2, Some(2),
            "g = 0, t = 1, two sections, s = 2, 2 <= m_2 <= m_1, m_1 >= 3", Some(8), None, true),
        family("6-2-1", Exactly(0), T::Exactly(1), SEP, 2, None,
            "g = 0, t = 1, H separable, no boundary fiber over a branch point", Some(8), None, false),
        family("6-2-2", Exactly(0), T::Exactly(1), SEP, 2, None,
            "g = 0, t = 1, H separable, one boundary fiber over a branch point (d_s = 1/2)", Some(8), None, false),
        family("6-2-3", Exactly(0), T::Exactly(1), SEP, 3, None,
            "g = 0, t = 1, H separable, both branch fibers in the boundary (d_{s-1} = d_s = 1/2), s >= 3", Some(4), None, false),
        family("6-3", Exactly(0), T::Exactly(1), INSEP, 3, None,
            "g = 0, t = 1, H inseparable, every d = 1/2, s >= 3", Some(4), None, false),
        family("7-1-1", Exactly(0), T::Exactly(0), TWO, 4, None,
            "g = 0, t = 0, two disjoint sections, d_1 = 1, s >= 4", Some(4), None, false),
        family("7-1-2", Exactly(0), T::Exactly(0), TWO, 3, Some(3),
            "g = 0, t = 0, two disjoint sections, d_1 = 1, s = 3, 2 <= m_3 <= m_2, m_2 >= 3", Some(8), None, true),
        family("7-2", Exactly(0), T::Exactly(0), SEP, 3, None,
            "g = 0, t = 0, H irreducible", None,
            Some("H would be an unramified connected double cover of the projective line"), false),
    ]
}

pub fn find_case(id: &str) -> Option<CaseFamily> {
    case_catalog().into_iter().find(|c| c.id == id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Holds,
    Fails,
    Impossible,
}

impl CaseStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseStatus::Holds => "holds",
            CaseStatus::Fails => "fails",
            CaseStatus::Impossible => "impossible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseVerdict {
    pub case_id: &'static str,
    pub status: CaseStatus,
    pub claimed_threshold: Option<u64>,
    /// Instances violating the criterion at `m`; each one re-evaluates as a
    /// failure and classifies into this case.
    pub witnesses: Vec<FibrationData>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub m: u64,
    pub verdicts: Vec<CaseVerdict>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != CaseStatus::Fails)
    }

    pub fn verdict(&self, id: &str) -> Option<&CaseVerdict> {
        self.verdicts.iter().find(|v| v.case_id == id)
    }

    pub fn failing_cases(&self) -> Vec<&'static str> {
        self.verdicts
            .iter()
            .filter(|v| v.status == CaseStatus::Fails)
            .map(|v| v.case_id)
            .collect()
    }
}

/// Stand-in for "any multiplicity k ≥ m": every such fiber contributes
/// `m − 1` to `deg δ_m` and its `d` can be pushed as close to 1 as needed.
const LARGE_MULTIPLICITY: u64 = 1_000_000;

const MAX_WITNESSES: usize = 16;

/// Fiber types that matter at a given `m`: `⌊m·d⌋` depends on a finite
/// multiplicity `k` only through `⌈m/k⌉`, and among the `k` sharing that
/// value the largest has the largest `d` (the least constrained by the
/// positivity of `ε`). All `k ≥ m` behave alike and are represented by
/// `LARGE_MULTIPLICITY`.
fn fiber_choices(m: u64) -> Vec<(u8, Multiplicity)> {
    let mut out = alloc::vec![(2, Multiplicity::Infinite), (1, Multiplicity::Infinite)];
    out.push((2, Multiplicity::Finite(LARGE_MULTIPLICITY)));
    let mut best: Vec<(u64, u64)> = Vec::new();
    for k in 2..m {
        let c = m.div_ceil(k);
        match best.iter_mut().find(|(cc, _)| *cc == c) {
            Some(entry) => entry.1 = entry.1.max(k),
            None => best.push((c, k)),
        }
    }
    for (_, k) in best {
        out.push((2, Multiplicity::Finite(k)));
    }
    out
}

/// Calls `f` on every multiset of size `s` drawn from `0..n`, as a sorted
/// index list.
fn for_each_multiset(n: usize, s: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, s: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == s {
            f(acc);
            return;
        }
        for i in start..n {
            acc.push(i);
            go(n, s, i, acc, f);
            acc.pop();
        }
    }
    go(n, s, 0, &mut Vec::with_capacity(s), f);
}

fn fails_in_case(data: &FibrationData, id: &str, m: u64) -> bool {
    realizability(data).is_ok() && classify(data) == id && !fibration_criterion(data, m)
}

/// Replaces the large stand-in multiplicity by the least `k ≥ max(m, 2)`
/// that keeps the instance a failure in the same case.
fn concretize(data: &FibrationData, id: &str, m: u64) -> FibrationData {
    let raw: Vec<(u8, Multiplicity)> = data
        .fibers
        .iter()
        .map(|f| (f.branch_count, f.multiplicity))
        .collect();
    if !raw.iter().any(|(_, k)| *k == Multiplicity::Finite(LARGE_MULTIPLICITY)) {
        return data.clone();
    }
    for k in m.max(2)..LARGE_MULTIPLICITY {
        let fibers: Vec<(u8, Multiplicity)> = raw
            .iter()
            .map(|&(b, mm)| {
                if mm == Multiplicity::Finite(LARGE_MULTIPLICITY) {
                    (b, Multiplicity::Finite(k))
                } else {
                    (b, mm)
                }
            })
            .collect();
        if let Ok(candidate) = FibrationData::new(data.g, data.t, data.horizontal, &fibers) {
            if fails_in_case(&candidate, id, m) {
                return candidate;
            }
        }
    }
    data.clone()
}

/// Finds failing instances of one family at `m` with fixed `g`, `t` and
/// horizontal type. The number of fibers is bounded as follows: deleting a
/// fiber never raises `deg δ_m`, so a minimal failing instance is one where
/// every deletion breaks some constraint. With every `d ≥ 1/2`, positivity
/// of `ε` needs at most `2|c| + 1` fibers when `c = 2g − 2 + t ≤ 0` (none
/// when `c > 0`); at most two more fibers are pinned by the constraints on
/// `d = 1` and on branch counts, and the family's own lower bound on `s`
/// may add padding.
fn search(
    case: &CaseFamily,
    g: u32,
    t: i64,
    horizontal: HorizontalType,
    m: u64,
    choices: &[(u8, Multiplicity)],
    witnesses: &mut Vec<FibrationData>,
) {
    let c = 2 * i64::from(g) - 2 + t;
    let base = if c > 0 { 0 } else { 2 * c.unsigned_abs() as usize + 1 };
    let mut s_cap = case.s_min.max(base) + 2;
    if let Some(max) = case.s_max {
        s_cap = s_cap.min(max);
    }
    for s in 0..=s_cap {
        for_each_multiset(choices.len(), s, &mut |idx| {
            if witnesses.len() >= MAX_WITNESSES {
                return;
            }
            let fibers: Vec<(u8, Multiplicity)> = idx.iter().map(|&i| choices[i]).collect();
            let Ok(data) = FibrationData::new(g, t, horizontal, &fibers) else {
                return;
            };
            if fails_in_case(&data, case.id, m) {
                let w = concretize(&data, case.id, m);
                if !witnesses.contains(&w) {
                    witnesses.push(w);
                }
            }
        });
    }
}

fn t_values(range: DegreeRange, g: u32) -> Vec<i64> {
    match range {
        DegreeRange::Exactly(t) => alloc::vec![t],
        // deg δ_m grows by m with t while no constraint tightens; in the
        // only family using this, 2g − 2 + t > 0 already
        DegreeRange::AtLeast(t) => alloc::vec![t],
        DegreeRange::Between(a, b) => (a..=b).collect(),
        DegreeRange::OneMinusGenus => alloc::vec![1 - i64::from(g)],
    }
}

fn verify_case(case: &CaseFamily, m: u64, choices: &[(u8, Multiplicity)]) -> CaseVerdict {
    if case.impossible.is_some() {
        return CaseVerdict {
            case_id: case.id,
            status: CaseStatus::Impossible,
            claimed_threshold: None,
            witnesses: Vec::new(),
        };
    }
    let mut witnesses = Vec::new();
    let run = |g: u32, witnesses: &mut Vec<FibrationData>| {
        for t in t_values(case.t, g) {
            for &h in case.horizontal {
                search(case, g, t, h, m, choices, witnesses);
            }
        }
    };
    match case.genus {
        GenusRange::Exactly(g) => run(g, &mut witnesses),
        GenusRange::AtLeast(g0) => {
            // deg δ_m − (2g + 1) moves by 2m − 2 per unit of g, or by m − 2
            // when t = 1 − g; larger g also only relaxes positivity of ε
            let slope = match case.t {
                DegreeRange::OneMinusGenus => m as i64 - 2,
                _ => 2 * m as i64 - 2,
            };
            if slope >= 0 {
                run(g0, &mut witnesses);
            } else {
                // the margin decreases without bound, so some genus fails
                let mut g = g0;
                while witnesses.is_empty() {
                    run(g, &mut witnesses);
                    g += 1;
                }
            }
        }
    }
    CaseVerdict {
        case_id: case.id,
        status: if witnesses.is_empty() {
            CaseStatus::Holds
        } else {
            CaseStatus::Fails
        },
        claimed_threshold: case.claimed_threshold,
        witnesses,
    }
}

/// Decides, for every case family, whether the criterion holds at `m` for
/// all realizable instances of that family.
pub fn verify_global_bound(m: u64) -> Result<VerificationReport, FibrationError> {
    if m == 0 {
        return Err(FibrationError::ZeroM);
    }
    let choices = fiber_choices(m);
    let verdicts = case_catalog()
        .iter()
        .map(|case| verify_case(case, m, &choices))
        .collect();
    Ok(VerificationReport { m, verdicts })
}

/// Verifies a single family at `m`.
pub fn verify_case_at(id: &str, m: u64) -> Option<CaseVerdict> {
    if m == 0 {
        return None;
    }
    let case = find_case(id)?;
    Some(verify_case(&case, m, &fiber_choices(m)))
}

impl fmt::Display for CaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.constraints)
    }
}

/// Renders a `Rational64` as `n` or `n/d`.
pub fn fmt_q64(x: &Rational64) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Multiplicity::{Finite, Infinite};

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn d_values() {
        assert_eq!(d_value(2, Finite(3)).unwrap(), q(2, 3));
        assert_eq!(d_value(1, Finite(1)).unwrap(), q(0, 1));
        assert_eq!(d_value(2, Finite(2)).unwrap(), q(1, 2));
        assert_eq!(d_value(1, Infinite).unwrap(), q(1, 2));
        assert_eq!(d_value(2, Infinite).unwrap(), q(1, 1));
        assert!(d_value(3, Infinite).is_err());
    }

    #[test]
    fn floor_matches_rational_floor() {
        for m in 1..40u64 {
            for k in 1..15u64 {
                for b in [1u8, 2] {
                    let d = d_value(b, Finite(k)).unwrap();
                    let expect = (d * Rational64::from_integer(m as i64)).floor().to_integer();
                    assert_eq!(floor_m_d(b, Finite(k), m), expect, "b={b} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn constructor_normalizes() {
        let d = FibrationData::new(0, 1, HorizontalType::TwoSections, &[(2, Finite(2)), (2, Finite(1)), (2, Finite(3))])
            .unwrap();
        assert_eq!(d.s(), 2);
        assert_eq!(d.fibers[0].d, q(2, 3));
        assert!(FibrationData::new(0, 1, HorizontalType::Separable, &[(1, Finite(3))]).is_err());
        assert!(FibrationData::new(2, 0, HorizontalType::Inseparable, &[]).is_err());
        assert!(FibrationData::new(0, -1, HorizontalType::TwoSections, &[]).is_err());
    }

    #[test]
    fn inline_round_trip() {
        let d = FibrationData::parse_inline("g=0 t=1 horiz=2sec fibers=(2,3),(2,2)").unwrap();
        assert_eq!(d.to_string(), "g=0 t=1 horiz=2sec fibers=(2,3),(2,2)");
        let e = FibrationData::parse_inline("g=0 t=3 horiz=2sec fibers=").unwrap();
        assert_eq!(e.s(), 0);
        assert!(FibrationData::parse_inline("g=0 t=1 horiz=2sec fibers=(3,2)").is_err());
        assert!(FibrationData::parse_inline("g=0 horiz=2sec").is_err());
    }

    #[test]
    fn classification_covers_the_catalog() {
        let ids: Vec<&str> = case_catalog().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), 21);
        let d = FibrationData::parse_inline("g=0 t=1 horiz=2sec fibers=(2,3),(2,2)").unwrap();
        assert_eq!(classify(&d), "6-1-2");
        let d = FibrationData::parse_inline("g=1 t=0 horiz=insep fibers=(1,inf)").unwrap();
        assert_eq!(classify(&d), "4-3");
    }

    #[test]
    fn multisets_are_counted() {
        let mut n = 0;
        for_each_multiset(4, 3, &mut |_| n += 1);
        assert_eq!(n, 20);
    }
}
