//! Reports: per-check records plus command-specific data, as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};

pub const SCHEMA: u32 = 1;

/// Largest integer JSON consumers can represent exactly.
const SAFE_INT: i128 = (1 << 53) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    /// `file:line` of the declaration.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub session: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub records: Vec<Record>,
    #[serde(flatten)]
    pub data: Map<String, Json>,
}

/// An integer as a JSON number, or as a string beyond 53 bits.
pub fn json_int(n: i128) -> Json {
    if (-SAFE_INT..=SAFE_INT).contains(&n) {
        Json::from(n as i64)
    } else {
        Json::String(n.to_string())
    }
}

pub fn json_ints<T: Copy + Into<i128>>(xs: &[T]) -> Json {
    Json::Array(xs.iter().map(|&x| json_int(x.into())).collect())
}

impl Report {
    pub fn new(command: &str, session: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            session: session.to_string(),
            field: None,
            records: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Json>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub fn error(&mut self, name: impl Into<String>, source: impl Into<String>, message: impl Into<String>) {
        self.records.push(Record {
            name: name.into(),
            status: Status::Error,
            expected: None,
            actual: None,
            source: source.into(),
            message: Some(message.into()),
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// 0 when every check passes, 1 on a failed check, 2 on any error.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Error) > 0 {
            2
        } else if self.count(Status::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{} {}", self.command, self.session);
        if let Some(f) = &self.field {
            let _ = write!(out, " over {f}");
        }
        out.push('\n');
        for (k, v) in &self.data {
            write_data(&mut out, k, v, 1);
        }
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            let _ = write!(out, "{tag} {}  ({})", r.name, r.source);
            match (r.status, &r.expected, &r.actual) {
                (Status::Fail, Some(e), Some(a)) => {
                    let _ = write!(out, "\n      expected {e}, got {a}");
                }
                (Status::Pass, _, Some(a)) => {
                    let _ = write!(out, " = {a}");
                }
                _ => {}
            }
            if let Some(m) = &r.message {
                let _ = write!(out, "\n      {m}");
            }
            out.push('\n');
        }
        if !self.records.is_empty() {
            let _ = writeln!(
                out,
                "{} passed, {} failed, {} errors",
                self.count(Status::Pass),
                self.count(Status::Fail),
                self.count(Status::Error)
            );
        }
        out
    }
}

fn inline(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_data(out: &mut String, key: &str, v: &Json, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Json::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                write_data(out, k, x, depth + 1);
            }
        }
        Json::Array(items) if items.iter().any(|x| x.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for x in items {
                match x {
                    Json::Object(m) => {
                        let fields: Vec<String> = m.iter().map(|(k, y)| format!("{k}={}", inline(y))).collect();
                        let _ = writeln!(out, "{pad}  - {}", fields.join(" "));
                    }
                    other => {
                        let _ = writeln!(out, "{pad}  - {}", inline(other));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", inline(other));
        }
    }
}
