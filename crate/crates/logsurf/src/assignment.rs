//! The `.fib` fiber assignment format, naming the fibration structure the
//! caller declares on a model.
//!
//! ```text
//! base_genus <g>
//! horizontal 2sec <curve> <curve>
//! horizontal sep <curve> branch_points=<n>
//! horizontal insep <curve>
//! fiber <label> branch=<1|2> components=<curve>:<mult>,...
//! ```
//!
//! The first component of a fiber is the proper transform of the fiber
//! itself and carries multiplicity 1.

use logsurf_core::extraction::{FiberAssignment, FiberGroup, Horizontal};

use crate::format::{check_name, err, key_values, tokenize, ParseError, Token};

pub fn load_assignment(text: &str) -> Result<FiberAssignment, ParseError> {
    let mut genus: Option<u32> = None;
    let mut horizontal: Option<Horizontal> = None;
    let mut fibers: Vec<FiberGroup> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let rest = &toks[1..];
        match head.text {
            "base_genus" => {
                if genus.is_some() {
                    return Err(err(line, head.column, "duplicate `base_genus` line"));
                }
                let [g] = rest else {
                    return Err(err(line, head.column, "expected `base_genus <g>`"));
                };
                genus = Some(
                    g.text
                        .parse()
                        .map_err(|_| err(line, g.column, format!("expected a genus, found `{}`", g.text)))?,
                );
            }
            "horizontal" => {
                if horizontal.is_some() {
                    return Err(err(line, head.column, "duplicate `horizontal` line"));
                }
                let Some(kind) = rest.first() else {
                    return Err(err(line, head.column, "missing horizontal type"));
                };
                let args = &rest[1..];
                horizontal = Some(match (kind.text, args) {
                    ("2sec", [a, b]) => Horizontal::TwoSections(check_name(a, line)?, check_name(b, line)?),
                    ("sep", [c, bp]) => {
                        let kv = key_values(std::slice::from_ref(bp), &["branch_points"], line)?;
                        let (_, v, tok) = kv[0];
                        let branch_points = v
                            .parse()
                            .map_err(|_| err(line, tok.column, format!("expected a count, found `{v}`")))?;
                        Horizontal::Separable {
                            curve: check_name(c, line)?,
                            branch_points,
                        }
                    }
                    ("insep", [c]) => Horizontal::Inseparable(check_name(c, line)?),
                    ("2sec" | "sep" | "insep", _) => {
                        return Err(err(line, kind.column, format!("wrong arguments for `{}`", kind.text)));
                    }
                    (other, _) => {
                        return Err(err(line, kind.column, format!("unknown horizontal type `{other}`")));
                    }
                });
            }
            "fiber" => {
                let Some(label_tok) = rest.first() else {
                    return Err(err(line, head.column, "missing fiber label"));
                };
                let label = check_name(label_tok, line)?;
                if fibers.iter().any(|f| f.label == label) {
                    return Err(err(line, label_tok.column, format!("duplicate fiber `{label}`")));
                }
                let kv = key_values(&rest[1..], &["branch", "components"], line)?;
                let get = |k: &str| kv.iter().find(|(key, _, _)| *key == k);
                let Some((_, b, btok)) = get("branch") else {
                    return Err(err(line, head.column, "missing branch=<1|2>"));
                };
                let branch_count = match *b {
                    "1" => 1,
                    "2" => 2,
                    _ => return Err(err(line, btok.column, format!("branch must be 1 or 2, found `{b}`"))),
                };
                let Some((_, list, ltok)) = get("components") else {
                    return Err(err(line, head.column, "missing components=<curve:mult,...>"));
                };
                let mut components = Vec::new();
                for part in list.split(',') {
                    let Some((name, mult)) = part.split_once(':') else {
                        return Err(err(line, ltok.column, format!("expected curve:mult, found `{part}`")));
                    };
                    let t = Token {
                        text: name,
                        column: ltok.column,
                    };
                    let mult: u64 = mult
                        .parse()
                        .ok()
                        .filter(|&m| m > 0)
                        .ok_or_else(|| err(line, ltok.column, format!("bad multiplicity `{mult}`")))?;
                    components.push((check_name(&t, line)?, mult));
                }
                fibers.push(FiberGroup {
                    label,
                    branch_count,
                    components,
                });
            }
            other => return Err(err(line, head.column, format!("unknown directive `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    Ok(FiberAssignment {
        base_genus: genus.ok_or_else(|| err(last, 1, "missing `base_genus` line"))?,
        horizontal: horizontal.ok_or_else(|| err(last, 1, "missing `horizontal` line"))?,
        fibers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_horizontal_kinds() {
        let a = load_assignment("base_genus 0\nhorizontal 2sec H1 H2\nfiber F branch=2 components=A:1,B:2\n").unwrap();
        assert_eq!(a.horizontal, Horizontal::TwoSections("H1".into(), "H2".into()));
        assert_eq!(a.fibers[0].components, vec![("A".into(), 1), ("B".into(), 2)]);
        let a = load_assignment("base_genus 0\nhorizontal sep H branch_points=4\n").unwrap();
        assert_eq!(
            a.horizontal,
            Horizontal::Separable {
                curve: "H".into(),
                branch_points: 4
            }
        );
        let a = load_assignment("base_genus 1\nhorizontal insep H\n").unwrap();
        assert_eq!(a.horizontal, Horizontal::Inseparable("H".into()));
    }

    #[test]
    fn rejects_malformed_lines() {
        for text in [
            "horizontal insep H\n",
            "base_genus 0\n",
            "base_genus 0\nhorizontal 2sec H\n",
            "base_genus 0\nhorizontal insep H\nfiber F branch=3 components=A:1\n",
            "base_genus 0\nhorizontal insep H\nfiber F branch=1 components=A:0\n",
            "base_genus 0\nhorizontal insep H\nfiber F branch=1 components=A\n",
            "base_genus x\nhorizontal insep H\n",
        ] {
            assert!(load_assignment(text).is_err(), "{text:?}");
        }
    }
}
