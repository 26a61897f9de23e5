//! Reports: a fixed-order record of what a command computed and which
//! claims it checked, rendered as indented `key: value` text or JSON.
//!
//! JSON schema (keys always in this order):
//!
//! ```text
//! {
//!   "command": string,          // the command line, minus global flags
//!   "input_sha256": string,     // hex digest of the inputs read
//!   "status": "ok" | "negative" | "input_error",
//!   "result": { ... },          // command-specific, fixed key order
//!   "claims": [ { "claim": string, "holds": bool } ]
//! }
//! ```

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Success, or the asserted property holds.
    Ok,
    /// A well-posed mathematical question answered in the negative, or a
    /// failed claim.
    Negative,
    /// Unreadable, malformed or invalid input.
    InputError,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative => "negative",
            Status::InputError => "input_error",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub claim: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub status: Status,
    pub result: Map<String, Value>,
    pub claims: Vec<Claim>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            input_sha256: sha256_hex(b""),
            status: Status::Ok,
            result: Map::new(),
            claims: Vec::new(),
        }
    }

    pub fn digest(&mut self, input: &[u8]) {
        self.input_sha256 = sha256_hex(input);
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    /// Records a checked claim; a failing claim makes the report negative.
    pub fn claim(&mut self, claim: impl Into<String>, holds: bool) -> bool {
        self.claims.push(Claim {
            claim: claim.into(),
            holds,
        });
        if !holds && self.status == Status::Ok {
            self.status = Status::Negative;
        }
        holds
    }

    /// Marks the report negative without touching the claims.
    pub fn negative(&mut self) {
        if self.status == Status::Ok {
            self.status = Status::Negative;
        }
    }

    pub fn negative_with(mut self, message: impl Into<String>) -> Self {
        self.set("error", message.into());
        self.negative();
        self
    }

    pub fn input_error(mut self, message: impl Into<String>) -> Self {
        self.set("error", message.into());
        self.status = Status::InputError;
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn failed_claims(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| !c.holds).map(|c| c.claim.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), self.command.clone().into());
        root.insert("input_sha256".into(), self.input_sha256.clone().into());
        root.insert("status".into(), self.status.as_str().into());
        root.insert("result".into(), Value::Object(self.result.clone()));
        let claims = self
            .claims
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("claim".into(), c.claim.clone().into());
                m.insert("holds".into(), c.holds.into());
                Value::Object(m)
            })
            .collect();
        root.insert("claims".into(), Value::Array(claims));
        Value::Object(root)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input_sha256: {}\n", self.input_sha256));
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        out.push_str("result:\n");
        write_object(&mut out, &self.result, 1);
        if self.claims.is_empty() {
            out.push_str("claims: []\n");
        } else {
            out.push_str("claims:\n");
            for c in &self.claims {
                let mark = if c.holds { "pass" } else { "FAIL" };
                out.push_str(&format!("  [{mark}] {}\n", c.claim));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn write_object(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match (scalar(v), v) {
            (Some(s), _) => out.push_str(&format!("{pad}{k}: {s}\n")),
            (None, Value::Object(inner)) if inner.is_empty() => out.push_str(&format!("{pad}{k}: {{}}\n")),
            (None, Value::Object(inner)) => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_object(out, inner, depth + 1);
            }
            (None, Value::Array(items)) => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_items(out, items, depth + 1);
            }
            _ => unreachable!("scalars are handled above"),
        }
    }
}

fn write_items(out: &mut String, items: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    for item in items {
        match (scalar(item), item) {
            (Some(s), _) => out.push_str(&format!("{pad}- {s}\n")),
            (None, Value::Object(inner)) => {
                // first key on the dash line, the rest aligned below it
                let mut first = true;
                for (k, v) in inner {
                    let lead = if first { format!("{pad}- ") } else { format!("{pad}  ") };
                    first = false;
                    match scalar(v) {
                        Some(s) => out.push_str(&format!("{lead}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{lead}{k}:\n"));
                            match v {
                                Value::Object(o) => write_object(out, o, depth + 2),
                                Value::Array(a) => write_items(out, a, depth + 2),
                                _ => unreachable!(),
                            }
                        }
                    }
                }
                if first {
                    out.push_str(&format!("{pad}- {{}}\n"));
                }
            }
            (None, Value::Array(inner)) => {
                out.push_str(&format!("{pad}-\n"));
                write_items(out, inner, depth + 1);
            }
            _ => unreachable!(),
        }
    }
}
