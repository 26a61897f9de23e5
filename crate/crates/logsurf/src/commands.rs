//! One function per CLI command. Each returns a [`Report`]; the exit code is
//! read off its status.

use logsurf_core::classification::{self, ClassificationError, Kappa, ZariskiData};
use logsurf_core::extraction::{self, Extraction, ExtractionError, FiberAssignment};
use logsurf_core::fibration::{self, FibrationData, FibrationError};
use logsurf_core::model::Violation;
use logsurf_core::peeling::{self, Contraction, PeelingError, Twig};
use logsurf_core::rational::{fmt_rational, q};
use logsurf_core::{BigInt, DivisorClass, QDivisor, Rational, Rational64, SurfaceModel};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::assignment::load_assignment;
use crate::bundled::{self, Example};
use crate::format::load_model;
use crate::report::Report;

/// Why a command stopped early.
enum Fail {
    Input(String),
    Negative(String),
}

impl Fail {
    fn finish(self, r: Report) -> Report {
        match self {
            Fail::Input(msg) => r.input_error(msg),
            Fail::Negative(msg) => r.negative_with(msg),
        }
    }
}

fn peeling_fail(e: PeelingError) -> Fail {
    match e {
        PeelingError::Model(_) | PeelingError::InvalidModel(_) => Fail::Input(e.to_string()),
        PeelingError::NotBig { .. } | PeelingError::Internal(_) => Fail::Negative(e.to_string()),
    }
}

fn classification_fail(e: ClassificationError) -> Fail {
    match e {
        ClassificationError::Model(_) => Fail::Input(e.to_string()),
        ClassificationError::Peeling(p) => peeling_fail(p),
        ClassificationError::NotAlmostMinimal | ClassificationError::Inconsistent(_) => {
            Fail::Negative(e.to_string())
        }
    }
}

fn extraction_fail(e: ExtractionError) -> Fail {
    match e {
        ExtractionError::Classification(c) => classification_fail(c),
        other => Fail::Input(other.to_string()),
    }
}

// ---------------------------------------------------------------- rendering

/// `H1 + 2/3 D1 - D2`, terms in model order.
pub fn divisor_text(model: &SurfaceModel, d: &QDivisor) -> String {
    let mut out = String::new();
    for c in model.curves() {
        let k = d.coefficient(&c.name);
        if k.is_zero() {
            continue;
        }
        let mag = k.abs();
        let sign = if k.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if k.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push(' ');
        }
        out.push_str(&c.name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coefficients_json(model: &SurfaceModel, d: &QDivisor) -> Value {
    let mut m = Map::new();
    for c in model.curves() {
        let k = d.coefficient(&c.name);
        if !k.is_zero() {
            m.insert(c.name.clone(), fmt_rational(&k).into());
        }
    }
    Value::Object(m)
}

fn class_json(model: &SurfaceModel, class: &DivisorClass) -> Value {
    let mut m = Map::new();
    for (name, k) in model.lattice().basis_names().iter().zip(class.coeffs()) {
        m.insert(name.clone(), fmt_rational(k).into());
    }
    Value::Object(m)
}

fn twig_json(model: &SurfaceModel, t: &Twig) -> Value {
    let weights: Vec<String> = t
        .components
        .iter()
        .map(|c| {
            model
                .self_intersection(c)
                .map(|x| fmt_rational(&-x))
                .unwrap_or_else(|_| "?".into())
        })
        .collect();
    json!({
        "components": t.components,
        "attachment": t.attachment,
        "type": weights,
    })
}

fn violations_json(v: &[Violation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| json!({"rule": x.kind.label(), "curves": x.curves, "detail": x.detail}))
            .collect(),
    )
}

fn log_json(log: &[Contraction]) -> Value {
    Value::Array(
        log.iter()
            .map(|c| json!({"curve": c.curve, "reason": c.reason.label()}))
            .collect(),
    )
}

fn q64(x: &Rational64) -> String {
    fibration::fmt_q64(x)
}

fn base_text(model: &SurfaceModel) -> String {
    use logsurf_core::BaseSurface::*;
    match &model.provenance().base {
        ProjectivePlane => "p2".into(),
        Quadric => "p1xp1".into(),
        Hirzebruch(n) => format!("hirzebruch {n}"),
        Abstract => "abstract".into(),
    }
}

// ---------------------------------------------------------------- loading

fn load_valid(r: &mut Report, path: &str) -> Result<SurfaceModel, Fail> {
    let text = bundled::read_input(path).map_err(Fail::Input)?;
    r.digest(text.as_bytes());
    let model = load_model(&text).map_err(|e| Fail::Input(format!("{path}: {e}")))?;
    let v = model.validate();
    if !v.is_empty() {
        r.set("violations", violations_json(&v));
        return Err(Fail::Input(format!("{path}: model fails validation ({} violations)", v.len())));
    }
    Ok(model)
}

fn load_pair(r: &mut Report, model_path: &str, assignment_path: &str) -> Result<(SurfaceModel, FiberAssignment), Fail> {
    let model_text = bundled::read_input(model_path).map_err(Fail::Input)?;
    let fib_text = bundled::read_input(assignment_path).map_err(Fail::Input)?;
    r.digest(format!("{model_text}\0{fib_text}").as_bytes());
    let model = load_model(&model_text).map_err(|e| Fail::Input(format!("{model_path}: {e}")))?;
    let v = model.validate();
    if !v.is_empty() {
        r.set("violations", violations_json(&v));
        return Err(Fail::Input(format!("{model_path}: model fails validation ({} violations)", v.len())));
    }
    let a = load_assignment(&fib_text).map_err(|e| Fail::Input(format!("{assignment_path}: {e}")))?;
    Ok((model, a))
}

// ---------------------------------------------------------------- validate

pub fn cmd_validate(path: &str) -> Report {
    let mut r = Report::new(format!("validate {path}"));
    match validate_inner(&mut r, path) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

fn validate_inner(r: &mut Report, path: &str) -> Result<(), Fail> {
    let text = bundled::read_input(path).map_err(Fail::Input)?;
    r.digest(text.as_bytes());
    let model = load_model(&text).map_err(|e| Fail::Input(format!("{path}: {e}")))?;
    let graph = model.boundary_dual_graph();
    r.set("surface", base_text(&model));
    r.set("rank", model.rank());
    r.set("curves", model.curves().len());
    r.set("boundary_curves", graph.vertices.len());
    r.set("boundary_connected", graph.is_connected());
    r.set("affine_claimed", model.affine_claimed);
    let v = model.validate();
    r.set("violations", violations_json(&v));
    if !v.is_empty() {
        return Err(Fail::Input(format!("model fails validation ({} violations)", v.len())));
    }
    let warnings: Vec<String> = peeling::non_admissible_rational_twigs(&model)
        .map_err(peeling_fail)?
        .into_iter()
        .map(|t| format!("maximal rational twig [{}] is not admissible", t.join(", ")))
        .collect();
    r.set("warnings", warnings);
    Ok(())
}

// ---------------------------------------------------------------- peel

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Minimalize {
    None,
    Almost,
    Strongly,
}

pub fn cmd_peel(path: &str, mode: Minimalize) -> Report {
    let flag = match mode {
        Minimalize::None => "",
        Minimalize::Almost => " --minimalize almost",
        Minimalize::Strongly => " --minimalize strongly",
    };
    let mut r = Report::new(format!("peel {path}{flag}"));
    match peel_inner(&mut r, path, mode) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

fn peel_inner(r: &mut Report, path: &str, mode: Minimalize) -> Result<(), Fail> {
    let mut model = load_valid(r, path)?;
    if mode != Minimalize::None {
        let (m, log) = match mode {
            Minimalize::Almost => peeling::almost_minimalize(&model),
            _ => peeling::strongly_minimalize(&model),
        }
        .map_err(peeling_fail)?;
        r.set("contractions", log_json(&log));
        model = m;
    }
    let peel = peeling::compute_bark(&model).map_err(peeling_fail)?;
    r.set(
        "twigs",
        Value::Array(peel.twigs.iter().map(|t| twig_json(&model, t)).collect()),
    );
    r.set("bark", divisor_text(&model, &peel.bark));
    r.set("dsharp", divisor_text(&model, &peel.dsharp));
    r.set("dsharp_coefficients", coefficients_json(&model, &peel.dsharp));
    r.set(
        "almost_minimal",
        peeling::is_almost_minimal(&model).map_err(peeling_fail)?,
    );
    let warnings: Vec<String> = peeling::non_admissible_rational_twigs(&model)
        .map_err(peeling_fail)?
        .into_iter()
        .map(|t| format!("maximal rational twig [{}] is not admissible", t.join(", ")))
        .collect();
    r.set("warnings", warnings);
    Ok(())
}

// ---------------------------------------------------------------- kappa, zariski

pub fn cmd_kappa(path: &str) -> Report {
    let mut r = Report::new(format!("kappa {path}"));
    match classify_inner(&mut r, path, false) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

pub fn cmd_zariski(path: &str) -> Report {
    let mut r = Report::new(format!("zariski {path}"));
    match classify_inner(&mut r, path, true) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

fn classify_inner(r: &mut Report, path: &str, full: bool) -> Result<(), Fail> {
    let model = load_valid(r, path)?;
    let (model, log) = peeling::almost_minimalize(&model).map_err(peeling_fail)?;
    r.set("contractions", log_json(&log));
    let z = classification::zariski(&model).map_err(classification_fail)?;
    r.set("kappa", z.kappa.as_str());
    r.set("nef_self_intersection", fmt_rational(&z.nef_self_intersection));
    if full {
        r.set("positive_part", format!("K + {}", divisor_text(&model, &z.dsharp)));
        r.set("positive_part_class", class_json(&model, &z.nef_part));
        r.set("negative_part", divisor_text(&model, &z.negative_part));
        let support: Vec<&str> = z.negative_part.support().map(String::as_str).collect();
        r.set(
            "negative_part_definite",
            model.is_negative_definite(&support).map_err(|e| Fail::Input(e.to_string()))?,
        );
    }
    r.set(
        "negative_on",
        Value::Array(
            z.violations
                .iter()
                .map(|(c, v)| json!({"curve": c, "pairing": fmt_rational(v)}))
                .collect(),
        ),
    );
    if z.kappa == Kappa::NotNefOnTracked {
        r.negative();
    }
    Ok(())
}

// ---------------------------------------------------------------- mbound

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MboundSource {
    Inline(String),
    Model { model: String, assignment: String },
}

pub fn cmd_mbound(source: &MboundSource, m: Option<u64>, threshold: bool) -> Report {
    let threshold = threshold || m.is_none();
    let mut cmd = match source {
        MboundSource::Inline(text) => format!("mbound {text}"),
        MboundSource::Model { model, assignment } => {
            format!("mbound --model {model} --assignment {assignment}")
        }
    };
    if let Some(m) = m {
        cmd.push_str(&format!(" --m {m}"));
    }
    if threshold {
        cmd.push_str(" --threshold");
    }
    let mut r = Report::new(cmd);
    match mbound_inner(&mut r, source, m, threshold) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

fn fibration_fail(e: FibrationError) -> Fail {
    Fail::Input(e.to_string())
}

fn mbound_inner(r: &mut Report, source: &MboundSource, m: Option<u64>, threshold: bool) -> Result<(), Fail> {
    let data = match source {
        MboundSource::Inline(text) => {
            r.digest(text.as_bytes());
            FibrationData::parse_inline(text).map_err(fibration_fail)?
        }
        MboundSource::Model { model, assignment } => {
            let (model, a) = load_pair(r, model, assignment)?;
            let ex = extraction::extract_fibration_data(&model, &a).map_err(extraction_fail)?;
            r.set("fibers", fibers_json(&ex));
            ex.data
        }
    };
    describe_data(r, &data);
    if !data.epsilon().is_positive() {
        return Err(Fail::Input(FibrationError::NotKappaOne(data.epsilon()).to_string()));
    }
    if let Some(m) = m {
        if m == 0 {
            return Err(Fail::Input(FibrationError::ZeroM.to_string()));
        }
        let deg = fibration::delta_m_degree(&data, m);
        let holds = fibration::fibration_criterion(&data, m);
        r.set("m", m);
        r.set("delta_m_degree", deg);
        r.set("required_degree", 2 * i64::from(data.g) + 1);
        r.set("criterion", if holds { "holds" } else { "fails" });
        if !holds {
            r.negative();
        }
    }
    if threshold {
        let t = fibration::fibration_threshold(&data).map_err(fibration_fail)?;
        r.set("threshold", t.threshold);
        r.set("horizon", t.horizon);
    }
    Ok(())
}

fn describe_data(r: &mut Report, data: &FibrationData) {
    r.set("data", data.to_string());
    r.set("g", data.g);
    r.set("t", data.t);
    r.set("horizontal", data.horizontal.as_str());
    r.set("s", data.s());
    r.set(
        "d",
        data.fibers.iter().map(|f| q64(&f.d)).collect::<Vec<_>>(),
    );
    r.set("epsilon", q64(&data.epsilon()));
    if data.epsilon().is_positive() {
        r.set("case", fibration::classify(data));
        r.set(
            "realizable",
            match fibration::realizability(data) {
                Ok(()) => "yes".to_string(),
                Err(reason) => format!("no: {reason}"),
            },
        );
    }
}

fn fibers_json(ex: &Extraction) -> Value {
    Value::Array(
        ex.fibers
            .iter()
            .map(|f| {
                json!({
                    "label": f.label,
                    "branch": f.branch_count,
                    "d": q64(&f.d),
                    "multiplicity": f.multiplicity.to_string(),
                })
            })
            .collect(),
    )
}

// ---------------------------------------------------------------- verify-theorem

pub fn cmd_verify_theorem(m: u64) -> Report {
    let cmd = format!("verify-theorem --m {m}");
    let mut r = Report::new(cmd.clone());
    r.digest(cmd.as_bytes());
    let report = match fibration::verify_global_bound(m) {
        Ok(x) => x,
        Err(e) => return r.input_error(e.to_string()),
    };
    let catalog = fibration::case_catalog();
    r.set("m", m);
    r.set("holds", report.holds());
    r.set("failing_cases", report.failing_cases());
    let cases: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            let fam = catalog.iter().find(|c| c.id == v.case_id);
            let mut o = Map::new();
            o.insert("case".into(), v.case_id.into());
            o.insert("status".into(), v.status.as_str().into());
            o.insert(
                "claimed_threshold".into(),
                v.claimed_threshold.map_or(Value::Null, Value::from),
            );
            if let Some(fam) = fam {
                o.insert("constraints".into(), fam.constraints.into());
                if let Some(reason) = fam.impossible {
                    o.insert("impossible_because".into(), reason.into());
                }
            }
            o.insert(
                "witnesses".into(),
                v.witnesses
                    .iter()
                    .map(|w| {
                        json!({
                            "data": w.to_string(),
                            "delta_m_degree": fibration::delta_m_degree(w, m),
                            "required_degree": 2 * i64::from(w.g) + 1,
                        })
                    })
                    .collect::<Vec<_>>()
                    .into(),
            );
            Value::Object(o)
        })
        .collect();
    r.set("cases", cases);
    if !report.holds() {
        r.negative();
    }
    r
}

// ---------------------------------------------------------------- examples

pub fn example_names() -> Vec<&'static str> {
    bundled::EXAMPLES.iter().map(|e| e.name).collect()
}

pub fn cmd_examples(name: &str) -> Report {
    let mut r = Report::new(format!("examples {name}"));
    let Some(ex) = bundled::find_example(name) else {
        return r.input_error(format!(
            "unknown example `{name}`; expected one of {}",
            example_names().join(", ")
        ));
    };
    match example_inner(&mut r, ex) {
        Ok(()) => r,
        Err(f) => f.finish(r),
    }
}

/// `(m, mobile multiple, fixed part)` of `⌊m(K + D^#)⌋`.
type FloorSplitRow = (u64, i64, &'static [(&'static str, i64)]);

struct Expected {
    twigs: &'static [(&'static [&'static str], &'static str)],
    dsharp: &'static [(&'static str, i64, i64)],
    epsilon: (i64, i64),
    data: &'static str,
    degrees: &'static [(u64, i64)],
    threshold: u64,
    floor: Option<FloorSplitRow>,
}

const EXAMPLE_3_2: Expected = Expected {
    twigs: &[(&["D1"], "H1"), (&["D3", "D2"], "H2"), (&["D4"], "H1"), (&["D5"], "H2")],
    dsharp: &[
        ("H1", 1, 1),
        ("H2", 1, 1),
        ("F1", 1, 1),
        ("D1", 2, 3),
        ("D2", 2, 3),
        ("D3", 1, 3),
        ("D4", 1, 2),
        ("D5", 1, 2),
    ],
    epsilon: (1, 6),
    data: "g=0 t=0 horiz=2sec fibers=(2,inf),(2,3),(2,2)",
    degrees: &[(7, 0), (8, 1)],
    threshold: 8,
    floor: Some((7, 0, &[("D3", 1), ("E2", 2), ("E3", 1)])),
};

const PROP_4_1: Expected = Expected {
    twigs: &[(&["D1"], "H"), (&["D3", "D2"], "H"), (&["D4"], "H"), (&["D5"], "H")],
    dsharp: &[
        ("H", 1, 1),
        ("D1", 2, 3),
        ("D2", 2, 3),
        ("D3", 1, 3),
        ("D4", 1, 2),
        ("D5", 1, 2),
    ],
    epsilon: (1, 6),
    data: "g=0 t=1 horiz=sep fibers=(2,3),(2,2)",
    degrees: &[(7, 0), (8, 1)],
    threshold: 8,
    floor: None,
};

const PROP_4_2: Expected = Expected {
    twigs: &[(&["D1"], "E1"), (&["D2"], "E1")],
    dsharp: &[("H", 1, 1), ("E1", 1, 1), ("D1", 1, 2), ("D2", 1, 2)],
    epsilon: (1, 2),
    data: "g=1 t=0 horiz=insep fibers=(1,inf)",
    degrees: &[(5, 2), (6, 3)],
    threshold: 6,
    floor: Some((5, 2, &[("E1", 1)])),
};

fn expected_for(ex: &Example) -> &'static Expected {
    match ex.name {
        "example-3-2" => &EXAMPLE_3_2,
        "prop-4-1" => &PROP_4_1,
        _ => &PROP_4_2,
    }
}

fn qdiv(terms: &[(&str, i64, i64)]) -> QDivisor {
    QDivisor::from_terms(terms.iter().map(|&(n, a, b)| (n.to_string(), q(a, b))))
}

fn twigs_text(ts: &[Twig]) -> String {
    ts.iter()
        .map(|t| format!("[{}] at {}", t.components.join(", "), t.attachment))
        .collect::<Vec<_>>()
        .join("; ")
}

fn example_inner(r: &mut Report, ex: &Example) -> Result<(), Fail> {
    let exp = expected_for(ex);
    let model_text = bundled::read_bundled(ex.model_file).expect("bundled").map_err(Fail::Input)?;
    let fib_text = bundled::read_bundled(ex.assignment_file).expect("bundled").map_err(Fail::Input)?;
    r.digest(format!("{model_text}\0{fib_text}").as_bytes());
    let model = load_model(&model_text).map_err(|e| Fail::Input(format!("{}: {e}", ex.model_file)))?;
    let a = load_assignment(&fib_text).map_err(|e| Fail::Input(format!("{}: {e}", ex.assignment_file)))?;
    r.set("model", ex.model_file);
    r.set("rank", model.rank());

    let v = model.validate();
    r.set("violations", violations_json(&v));
    if !r.claim("the model is a valid SNC pair with connected boundary", v.is_empty()) {
        return Ok(());
    }

    let peel = match peeling::compute_bark(&model) {
        Ok(p) => p,
        Err(e) => {
            r.claim(format!("the bark is computable: {e}"), false);
            return Ok(());
        }
    };
    r.set("twigs", Value::Array(peel.twigs.iter().map(|t| twig_json(&model, t)).collect()));
    r.set("dsharp", divisor_text(&model, &peel.dsharp));
    let want_twigs: Vec<Twig> = exp
        .twigs
        .iter()
        .map(|(c, at)| Twig {
            components: c.iter().map(|s| s.to_string()).collect(),
            attachment: at.to_string(),
        })
        .collect();
    r.claim(
        format!("maximal admissible rational twigs are {}", twigs_text(&want_twigs)),
        peel.twigs == want_twigs,
    );
    let want_dsharp = qdiv(exp.dsharp);
    r.claim(
        format!("D# = {}", divisor_text(&model, &want_dsharp)),
        peel.dsharp == want_dsharp,
    );

    let steps = match (peeling::almost_minimalize(&model), peeling::strongly_minimalize(&model)) {
        (Ok((_, a)), Ok((_, s))) => Some((a.len(), s.len())),
        _ => None,
    };
    r.claim(
        "no peeling step applies: the pair is almost minimal relative to its tracked curves",
        steps.is_some_and(|(a, _)| a == 0),
    );
    r.claim(
        "no (-1)-curve orthogonal to K + D# is contractible: the pair is strongly minimal",
        steps.is_some_and(|(_, s)| s == 0),
    );

    let z = match classification::zariski(&model) {
        Ok(z) => z,
        Err(e) => {
            r.claim(format!("the Zariski decomposition exists: {e}"), false);
            return Ok(());
        }
    };
    r.set("kappa", z.kappa.as_str());
    r.set("nef_self_intersection", fmt_rational(&z.nef_self_intersection));
    r.claim(
        "log Kodaira dimension one: K + D# is nef on tracked curves, nonzero, with (K + D#)^2 = 0",
        z.kappa == Kappa::One && z.nef_self_intersection.is_zero(),
    );
    zariski_claims(r, &model, &z)?;

    let extracted = match extraction::extract_fibration_data(&model, &a) {
        Ok(x) => x,
        Err(e) => {
            r.claim(format!("fibration data can be read off the model: {e}"), false);
            return Ok(());
        }
    };
    r.set("fibers", fibers_json(&extracted));
    describe_data(r, &extracted.data);
    r.set("fiber_class", class_json(&model, &extracted.fiber_class));
    let (en, ed) = exp.epsilon;
    let scaled = extracted.fiber_class.scaled(&q(en, ed));
    let same = model
        .lattice()
        .classes_equal(&z.nef_part, &scaled)
        .map_err(|e| Fail::Input(e.to_string()))?;
    r.claim(format!("K + D# = {} F as classes, F the fiber class", fmt_rational(&q(en, ed))), same);
    let want_data = FibrationData::parse_inline(exp.data).map_err(|e| Fail::Input(e.to_string()))?;
    r.claim(format!("fibration data is {}", exp.data), extracted.data == want_data);

    let mut degrees = Map::new();
    for &(m, want) in exp.degrees {
        let got = fibration::delta_m_degree(&extracted.data, m);
        degrees.insert(m.to_string(), got.into());
        let need = 2 * i64::from(extracted.data.g) + 1;
        let verdict = if want >= need { "holds" } else { "fails" };
        r.claim(
            format!("deg delta_{m} = {want}, so the fibration criterion {verdict} at m = {m}"),
            got == want,
        );
    }
    r.set("delta_m_degree", Value::Object(degrees));

    let th = fibration::fibration_threshold(&extracted.data).map_err(fibration_fail)?;
    r.set("threshold", th.threshold);
    r.set("horizon", th.horizon);
    r.claim(
        format!("the least M with the criterion true for all m >= M is {}", exp.threshold),
        th.threshold == exp.threshold,
    );

    if let Some((m, mobile, fixed)) = exp.floor {
        let want_fixed = QDivisor::from_terms(fixed.iter().map(|&(n, k)| (n.to_string(), Rational::from_integer(k.into()))));
        match extraction::split_floor_class(&model, &a, &z.dsharp, m) {
            Ok(split) => {
                r.set(
                    "floor_class",
                    json!({
                        "m": m,
                        "mobile": format!("{} F", split.mobile_multiple),
                        "fixed": divisor_text(&model, &split.fixed),
                    }),
                );
                let fixed_text = divisor_text(&model, &want_fixed);
                let statement = if mobile == 0 {
                    format!("floor({m}(K + D#)) = {fixed_text} is fixed: its mobile part is zero")
                } else {
                    format!("floor({m}(K + D#)) = {mobile} F + {fixed_text}: its mobile part is {mobile} F")
                };
                r.claim(
                    statement,
                    split.mobile_multiple == BigInt::from(mobile) && split.fixed == want_fixed,
                );
            }
            Err(e) => {
                r.claim(format!("floor({m}(K + D#)) splits into mobile and fixed parts: {e}"), false);
            }
        }
    }

    match ex.name {
        "example-3-2" => {
            let total = extraction::group_class(&model, &a.fibers[1]).map_err(extraction_fail)?;
            let same = model
                .lattice()
                .classes_equal(&total, &extracted.fiber_class)
                .map_err(|e| Fail::Input(e.to_string()))?;
            r.claim("the total transform of F2 is D1 + 3 E2 + 2 D3 + D2, a full fiber", same);
            let definite = model
                .is_negative_definite(&["E2", "D1", "D3", "D2"])
                .map_err(|e| Fail::Input(e.to_string()))?;
            r.claim(
                "E2 with the bark components D1, D3, D2 is not negative definite (it carries a full fiber)",
                !definite,
            );
        }
        "prop-4-1" => {
            let l = QDivisor::from_terms(
                [("F", 6), ("H1", 6), ("H2", 6), ("D1", 1), ("D2", 3), ("D3", 1), ("D4", 1), ("D5", 1)]
                    .iter()
                    .map(|&(n, k)| (n.to_string(), Rational::from_integer(k.into()))),
            );
            let check = classification::ample_witness_check(&model, &l).map_err(|e| Fail::Input(e.to_string()))?;
            r.set(
                "ample_witness",
                json!({
                    "divisor": divisor_text(&model, &l),
                    "self_intersection": fmt_rational(&check.self_intersection),
                    "nonpositive_on": check.failures.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>(),
                }),
            );
            r.claim(
                format!(
                    "{} has positive square and meets every tracked curve positively",
                    divisor_text(&model, &l)
                ),
                check.ample,
            );
        }
        _ => {
            let g = model.boundary_dual_graph();
            let e1 = g.index_of("E1");
            let star = g.vertices.len() == 4
                && g.is_connected()
                && g.edges.len() == 3
                && e1.is_some_and(|i| g.edges.iter().all(|(a, b, w)| (*a == i || *b == i) && w.is_one()));
            r.claim("the boundary is a tree of 4 curves: E1 meets each of H, D1, D2 once", star);
            let h = model.curve("H").map(|c| c.pa);
            r.claim("H is a curve of arithmetic genus 1 with H^2 = -2", {
                h == Some(1) && model.self_intersection("H").ok() == Some(q(-2, 1))
            });
        }
    }
    Ok(())
}

fn zariski_claims(r: &mut Report, model: &SurfaceModel, z: &ZariskiData) -> Result<(), Fail> {
    let d = model.class_of(&model.boundary()).map_err(|e| Fail::Input(e.to_string()))?;
    let k_plus_d = &model.canonical_class() + &d;
    let neg = model.class_of(&z.negative_part).map_err(|e| Fail::Input(e.to_string()))?;
    let sum_ok = model
        .lattice()
        .classes_equal(&(&z.nef_part + &neg), &k_plus_d)
        .unwrap_or(false);
    let mut orthogonal = true;
    for c in z.negative_part.support() {
        let class = model.class(c).map_err(|e| Fail::Input(e.to_string()))?;
        orthogonal &= model.pairing(&z.nef_part, class).map(|x| x.is_zero()).unwrap_or(false);
    }
    let support: Vec<&str> = z.negative_part.support().map(String::as_str).collect();
    let definite = model.is_negative_definite(&support).unwrap_or(false);
    r.claim(
        "K + D = (K + D#) + Bk(D) with Bk(D) negative definite and orthogonal to K + D#",
        sum_ok && orthogonal && definite,
    );
    Ok(())
}
