//! The line-oriented `.lsm` model format.
//!
//! ```text
//! surface p1xp1 | p2 | hirzebruch <n> | abstract rank=<r>
//! basis <r labels>                       # abstract only, optional
//! gram <r integers>                      # abstract only, one line per row
//! canonical <r integers>                 # abstract only
//! base_genus <g>                         # optional
//! curve <name> class=<i,i,...> pa=<int> boundary=<yes|no>
//! blowup <name> at <curve>[,<curve>...] [boundary=<yes|no>]
//! blowup <name> free [boundary=<yes|no>]
//! flags affine=<yes|no>
//! ```
//!
//! Curves may be declared before or after blow-ups; a class always lives in
//! the lattice current at its line. The canonical serialization replays the
//! blow-up history when that reproduces the model exactly and falls back to
//! the abstract form otherwise.

use std::fmt::Write as _;

use logsurf_core::{
    BaseSurface, BigInt, BlowUpTarget, Curve, DivisorClass, IntersectionLattice, ModelError,
    SurfaceModel,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line into whitespace-separated tokens with 1-based columns,
/// dropping everything after `#`.
pub(crate) fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

pub(crate) fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-'))
}

pub(crate) fn check_name(tok: &Token<'_>, line: usize) -> Result<String, ParseError> {
    if is_name(tok.text) {
        Ok(tok.text.to_string())
    } else {
        Err(err(line, tok.column, format!("invalid name `{}`", tok.text)))
    }
}

pub(crate) fn parse_yes_no(tok: &Token<'_>, value: &str, line: usize) -> Result<bool, ParseError> {
    match value {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(err(line, tok.column, format!("expected yes or no, found `{value}`"))),
    }
}

fn parse_int<T: std::str::FromStr>(tok: &Token<'_>, text: &str, line: usize) -> Result<T, ParseError> {
    text.parse()
        .map_err(|_| err(line, tok.column, format!("expected an integer, found `{text}`")))
}

/// Key-value pairs `key=value` from the given tokens; duplicates and unknown
/// keys are errors.
pub(crate) fn key_values<'a>(
    toks: &[Token<'a>],
    allowed: &[&str],
    line: usize,
) -> Result<Vec<(&'a str, &'a str, Token<'a>)>, ParseError> {
    let mut out: Vec<(&str, &str, Token<'_>)> = Vec::new();
    for tok in toks {
        let Some((k, v)) = tok.text.split_once('=') else {
            return Err(err(line, tok.column, format!("expected key=value, found `{}`", tok.text)));
        };
        if !allowed.contains(&k) {
            return Err(err(line, tok.column, format!("unknown key `{k}`")));
        }
        if out.iter().any(|(seen, _, _)| *seen == k) {
            return Err(err(line, tok.column, format!("duplicate key `{k}`")));
        }
        out.push((k, v, *tok));
    }
    Ok(out)
}

fn model_err(line: usize, column: usize, e: ModelError) -> ParseError {
    err(line, column, e.to_string())
}

struct Builder {
    base: Option<BaseSurface>,
    rank: usize,
    basis: Option<Vec<String>>,
    gram: Vec<Vec<BigInt>>,
    canonical: Option<Vec<BigInt>>,
    model: Option<SurfaceModel>,
    base_genus: Option<u32>,
    affine: Option<bool>,
}

impl Builder {
    fn model(&mut self, line: usize, column: usize) -> Result<&mut SurfaceModel, ParseError> {
        if self.model.is_none() {
            let Some(base) = self.base.clone() else {
                return Err(err(line, column, "missing `surface` line before curves and blow-ups"));
            };
            let model = match base {
                BaseSurface::Abstract => {
                    let names = self
                        .basis
                        .clone()
                        .unwrap_or_else(|| (1..=self.rank).map(|i| format!("v{i}")).collect());
                    if self.gram.len() != self.rank {
                        return Err(err(
                            line,
                            column,
                            format!("expected {} gram rows, found {}", self.rank, self.gram.len()),
                        ));
                    }
                    let Some(canonical) = self.canonical.clone() else {
                        return Err(err(line, column, "missing `canonical` line"));
                    };
                    let lattice = IntersectionLattice::new(names, self.gram.clone(), canonical)
                        .map_err(|e| err(line, column, e.to_string()))?;
                    SurfaceModel::on_lattice(lattice)
                }
                base => SurfaceModel::on_base(base),
            };
            self.model = Some(model);
        }
        Ok(self.model.as_mut().expect("just built"))
    }
}

/// Parses a model file.
pub fn load_model(text: &str) -> Result<SurfaceModel, ParseError> {
    let mut b = Builder {
        base: None,
        rank: 0,
        basis: None,
        gram: Vec::new(),
        canonical: None,
        model: None,
        base_genus: None,
        affine: None,
    };
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let rest = &toks[1..];
        let abstract_header = |what: &str| -> Result<(), ParseError> {
            if b.base != Some(BaseSurface::Abstract) {
                return Err(err(line, head.column, format!("`{what}` is only allowed on an abstract surface")));
            }
            if b.model.is_some() {
                return Err(err(line, head.column, format!("`{what}` must precede curves and blow-ups")));
            }
            Ok(())
        };
        match head.text {
            "surface" => {
                if b.base.is_some() {
                    return Err(err(line, head.column, "duplicate `surface` line"));
                }
                let Some(kind) = rest.first() else {
                    return Err(err(line, head.column + head.text.len(), "missing surface type"));
                };
                let args = &rest[1..];
                let (base, rank) = match kind.text {
                    "p2" => (BaseSurface::ProjectivePlane, 1),
                    "p1xp1" => (BaseSurface::Quadric, 2),
                    "hirzebruch" => {
                        let Some(n) = args.first() else {
                            return Err(err(line, kind.column, "missing Hirzebruch index"));
                        };
                        (BaseSurface::Hirzebruch(parse_int(n, n.text, line)?), 2)
                    }
                    "abstract" => {
                        let kv = key_values(args, &["rank"], line)?;
                        let Some((_, v, tok)) = kv.first() else {
                            return Err(err(line, kind.column, "missing rank=<r>"));
                        };
                        (BaseSurface::Abstract, parse_int(tok, v, line)?)
                    }
                    other => {
                        return Err(err(line, kind.column, format!("unknown surface `{other}`")));
                    }
                };
                let expected_args = match base {
                    BaseSurface::Hirzebruch(_) | BaseSurface::Abstract => 1,
                    _ => 0,
                };
                if let Some(extra) = args.get(expected_args) {
                    return Err(err(line, extra.column, format!("unexpected `{}`", extra.text)));
                }
                b.base = Some(base);
                b.rank = rank;
            }
            "basis" => {
                abstract_header("basis")?;
                if b.basis.is_some() {
                    return Err(err(line, head.column, "duplicate `basis` line"));
                }
                if rest.len() != b.rank {
                    return Err(err(line, head.column, format!("expected {} labels, found {}", b.rank, rest.len())));
                }
                b.basis = Some(rest.iter().map(|t| check_name(t, line)).collect::<Result<_, _>>()?);
            }
            "gram" => {
                abstract_header("gram")?;
                if rest.len() != b.rank {
                    return Err(err(line, head.column, format!("expected {} integers, found {}", b.rank, rest.len())));
                }
                if b.gram.len() == b.rank {
                    return Err(err(line, head.column, "too many gram rows"));
                }
                b.gram.push(rest.iter().map(|t| parse_int(t, t.text, line)).collect::<Result<_, _>>()?);
            }
            "canonical" => {
                abstract_header("canonical")?;
                if b.canonical.is_some() {
                    return Err(err(line, head.column, "duplicate `canonical` line"));
                }
                if rest.len() != b.rank {
                    return Err(err(line, head.column, format!("expected {} integers, found {}", b.rank, rest.len())));
                }
                b.canonical = Some(rest.iter().map(|t| parse_int(t, t.text, line)).collect::<Result<_, _>>()?);
            }
            "base_genus" => {
                if b.base_genus.is_some() {
                    return Err(err(line, head.column, "duplicate `base_genus` line"));
                }
                let [g] = rest else {
                    return Err(err(line, head.column, "expected `base_genus <g>`"));
                };
                b.base_genus = Some(parse_int(g, g.text, line)?);
            }
            "flags" => {
                if b.affine.is_some() {
                    return Err(err(line, head.column, "duplicate `flags` line"));
                }
                let kv = key_values(rest, &["affine"], line)?;
                let Some((_, v, tok)) = kv.first() else {
                    return Err(err(line, head.column, "expected `flags affine=<yes|no>`"));
                };
                b.affine = Some(parse_yes_no(tok, v, line)?);
            }
            "curve" => {
                let Some(name_tok) = rest.first() else {
                    return Err(err(line, head.column, "missing curve name"));
                };
                let name = check_name(name_tok, line)?;
                let kv = key_values(&rest[1..], &["class", "pa", "boundary"], line)?;
                let get = |k: &str| kv.iter().find(|(key, _, _)| *key == k);
                let Some((_, class_text, class_tok)) = get("class") else {
                    return Err(err(line, head.column, "missing class=<integers>"));
                };
                let Some((_, pa_text, pa_tok)) = get("pa") else {
                    return Err(err(line, head.column, "missing pa=<int>"));
                };
                let Some((_, bd_text, bd_tok)) = get("boundary") else {
                    return Err(err(line, head.column, "missing boundary=<yes|no>"));
                };
                let class: Vec<BigInt> = class_text
                    .split(',')
                    .map(|s| parse_int(class_tok, s.trim(), line))
                    .collect::<Result<_, _>>()?;
                let pa: i64 = parse_int(pa_tok, pa_text, line)?;
                let in_boundary = parse_yes_no(bd_tok, bd_text, line)?;
                let model = b.model(line, head.column)?;
                model
                    .add_curve(Curve::new(name, DivisorClass::from_integers(&class), pa, in_boundary))
                    .map_err(|e| model_err(line, name_tok.column, e))?;
            }
            "blowup" => {
                let Some(name_tok) = rest.first() else {
                    return Err(err(line, head.column, "missing exceptional curve name"));
                };
                let name = check_name(name_tok, line)?;
                let Some(mode) = rest.get(1) else {
                    return Err(err(line, name_tok.column, "expected `at <curves>` or `free`"));
                };
                let (target, opts) = match mode.text {
                    "free" => (BlowUpTarget::Free, &rest[2..]),
                    "at" => {
                        let Some(list) = rest.get(2) else {
                            return Err(err(line, mode.column, "missing curve list after `at`"));
                        };
                        if list.text == "free" {
                            (BlowUpTarget::Free, &rest[3..])
                        } else {
                            let mut names = Vec::new();
                            for part in list.text.split(',') {
                                let t = Token {
                                    text: part,
                                    column: list.column,
                                };
                                names.push(check_name(&t, line)?);
                            }
                            (BlowUpTarget::On(names), &rest[3..])
                        }
                    }
                    other => {
                        return Err(err(line, mode.column, format!("expected `at` or `free`, found `{other}`")));
                    }
                };
                let kv = key_values(opts, &["boundary"], line)?;
                let in_boundary = match kv.first() {
                    Some((_, v, tok)) => parse_yes_no(tok, v, line)?,
                    None => false,
                };
                let model = b.model(line, head.column)?;
                let next = model
                    .blow_up(&name, target, in_boundary)
                    .map_err(|e| model_err(line, name_tok.column, e))?;
                *model = next;
            }
            other => {
                return Err(err(line, head.column, format!("unknown directive `{other}`")));
            }
        }
    }
    let mut model = {
        let m = b.model(last_line.max(1), 1)?;
        std::mem::replace(m, SurfaceModel::on_base(BaseSurface::Abstract))
    };
    model.affine_claimed = b.affine.unwrap_or(false);
    model.base_genus_hint = b.base_genus;
    Ok(model)
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn integral(class: &DivisorClass) -> Option<Vec<BigInt>> {
    class.to_integers()
}

fn write_lattice_header(out: &mut String, lattice: &IntersectionLattice, k: usize) {
    let _ = writeln!(out, "surface abstract rank={k}");
    if k > 0 {
        let _ = writeln!(out, "basis {}", lattice.basis_names()[..k].join(" "));
        for row in &lattice.gram()[..k] {
            let _ = writeln!(out, "gram {}", join(&row[..k], " "));
        }
        let _ = writeln!(out, "canonical {}", join(&lattice.canonical()[..k], " "));
    } else {
        let _ = writeln!(out, "canonical");
    }
}

fn write_trailer(out: &mut String, model: &SurfaceModel) {
    let _ = writeln!(out, "flags affine={}", yes_no(model.affine_claimed));
}

fn write_genus(out: &mut String, model: &SurfaceModel) {
    if let Some(g) = model.base_genus_hint {
        let _ = writeln!(out, "base_genus {g}");
    }
}

fn write_curve(out: &mut String, c: &Curve, class: &[BigInt]) {
    let _ = writeln!(
        out,
        "curve {} class={} pa={} boundary={}",
        c.name,
        join(class, ","),
        c.pa,
        yes_no(c.in_boundary)
    );
}

fn replay_form(model: &SurfaceModel) -> Option<String> {
    let prov = model.provenance();
    let k = model.rank().checked_sub(prov.blowups.len())?;
    let mut out = String::new();
    match &prov.base {
        BaseSurface::ProjectivePlane => out.push_str("surface p2\n"),
        BaseSurface::Quadric => out.push_str("surface p1xp1\n"),
        BaseSurface::Hirzebruch(n) => {
            let _ = writeln!(out, "surface hirzebruch {n}");
        }
        BaseSurface::Abstract => write_lattice_header(&mut out, model.lattice(), k),
    }
    write_genus(&mut out, model);
    let exceptional: Vec<&str> = prov.blowups.iter().map(|r| r.exceptional.as_str()).collect();
    for c in model.curves() {
        if exceptional.contains(&c.name.as_str()) {
            continue;
        }
        let class = integral(&c.class)?;
        write_curve(&mut out, c, &class[..k]);
    }
    for r in &prov.blowups {
        let target = match &r.target {
            BlowUpTarget::Free => "free".to_string(),
            BlowUpTarget::On(names) => format!("at {}", names.join(",")),
        };
        let _ = writeln!(out, "blowup {} {} boundary={}", r.exceptional, target, yes_no(r.in_boundary));
    }
    write_trailer(&mut out, model);
    Some(out)
}

fn abstract_form(model: &SurfaceModel) -> String {
    let mut out = String::new();
    write_lattice_header(&mut out, model.lattice(), model.rank());
    write_genus(&mut out, model);
    for c in model.curves() {
        match integral(&c.class) {
            Some(class) => write_curve(&mut out, c, &class),
            // classes of tracked curves are integral in every valid model
            None => {
                let coeffs: Vec<String> = c.class.coeffs().iter().map(logsurf_core::rational::fmt_rational).collect();
                let _ = writeln!(
                    out,
                    "curve {} class={} pa={} boundary={}",
                    c.name,
                    coeffs.join(","),
                    c.pa,
                    yes_no(c.in_boundary)
                );
            }
        }
    }
    write_trailer(&mut out, model);
    out
}

/// Canonical text of a model: the blow-up replay when it reproduces the
/// model exactly, else the abstract lattice form.
pub fn save_model(model: &SurfaceModel) -> String {
    if let Some(text) = replay_form(model) {
        if load_model(&text).as_ref() == Ok(model) {
            return text;
        }
    }
    abstract_form(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_columns_and_skip_comments() {
        let toks = tokenize("  curve  A class=1,0 # trailing");
        let got: Vec<(&str, usize)> = toks.iter().map(|t| (t.text, t.column)).collect();
        assert_eq!(got, vec![("curve", 3), ("A", 10), ("class=1,0", 12)]);
    }

    #[test]
    fn empty_quadric_model() {
        let m = load_model("surface p1xp1\n").unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.curves().is_empty());
        assert!(m.validate().is_empty());
        assert_eq!(save_model(&m), "surface p1xp1\nflags affine=no\n");
    }

    #[test]
    fn duplicate_curve_is_an_error_with_position() {
        let e = load_model("surface p2\ncurve L class=1 pa=0 boundary=yes\ncurve L class=1 pa=0 boundary=no\n")
            .unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));
        assert!(e.message.contains("duplicate"), "{e}");
    }

    #[test]
    fn replay_round_trip() {
        let text = "surface p1xp1\ncurve A class=1,0 pa=0 boundary=yes\ncurve B class=0,1 pa=0 boundary=yes\nblowup E at A,B boundary=no\nflags affine=no\n";
        let m = load_model(text).unwrap();
        assert_eq!(save_model(&m), text);
    }

    #[test]
    fn contracted_model_falls_back_to_abstract_form() {
        let text = "surface p1xp1\ncurve A class=1,0 pa=0 boundary=yes\nblowup E at A boundary=no\n";
        let m = load_model(text).unwrap();
        let c = m.contract("A").unwrap();
        let saved = save_model(&c);
        assert!(saved.starts_with("surface abstract rank=2\n"), "{saved}");
        assert_eq!(load_model(&saved).unwrap(), c);
    }

    #[test]
    fn abstract_lattice_with_rows() {
        let text = "surface abstract rank=2\nbasis f c\ngram 0 1\ngram 1 0\ncanonical 0 -2\nbase_genus 1\ncurve H class=0,2 pa=1 boundary=yes\nflags affine=no\n";
        let m = load_model(text).unwrap();
        assert_eq!(m.base_genus_hint, Some(1));
        assert_eq!(save_model(&m), text);
    }

    #[test]
    fn malformed_inputs() {
        for (text, line) in [
            ("curve A class=1 pa=0 boundary=yes\n", 1),
            ("surface p3\n", 1),
            ("surface p2\ncurve A class=1,2 pa=0 boundary=yes\n", 2),
            ("surface p2\ncurve A class=x pa=0 boundary=yes\n", 2),
            ("surface p2\ncurve A class=1 pa=0 boundary=maybe\n", 2),
            ("surface p2\nblowup E at Z\n", 2),
            ("surface p2\nwobble\n", 2),
            ("surface abstract rank=2\ngram 0 1\ncanonical 0 0\ncurve A class=1,0 pa=0 boundary=no\n", 4),
            ("surface abstract rank=2\ngram 0 0\ngram 0 0\ncanonical 0 0\nflags affine=no\n", 5),
        ] {
            let e = load_model(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }
}
