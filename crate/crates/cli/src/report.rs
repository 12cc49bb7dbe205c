use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    /// The mathematical statement this check reproduces.
    pub anchor: String,
    pub status: Status,
    pub assertions: Vec<Assertion>,
    pub details: Value,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| !a.passed)
    }
}

/// Top-level document written by `--format json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub status: Status,
    pub reports: Vec<VerificationReport>,
}

impl Envelope {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        let ok = reports.iter().all(|r| r.status == Status::Pass);
        Self {
            schema_version: SCHEMA_VERSION,
            status: Status::from_bool(ok),
            reports,
        }
    }

    pub fn first_failure(&self) -> Option<(&VerificationReport, &Assertion)> {
        self.reports
            .iter()
            .find_map(|r| r.first_failure().map(|a| (r, a)))
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

/// Collects assertions for one check.
#[derive(Debug, Default)]
pub struct Recorder {
    assertions: Vec<Assertion>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record `actual == expected`.
    pub fn eq<T: Serialize + PartialEq>(&mut self, name: &str, expected: T, actual: T) -> bool {
        let passed = expected == actual;
        self.push(name, passed, to_value(&expected), to_value(&actual));
        passed
    }

    /// Record a predicate with a description of what was expected.
    pub fn check<T: Serialize>(
        &mut self,
        name: &str,
        passed: bool,
        expected: &str,
        actual: T,
    ) -> bool {
        self.push(
            name,
            passed,
            Value::String(expected.into()),
            to_value(&actual),
        );
        passed
    }

    fn push(&mut self, name: &str, passed: bool, expected: Value, actual: Value) {
        self.assertions.push(Assertion {
            name: name.into(),
            passed,
            expected,
            actual,
        });
    }

    pub fn finish(
        self,
        check: &str,
        anchor: &str,
        details: Value,
        elapsed_ms: f64,
    ) -> VerificationReport {
        let ok = self.assertions.iter().all(|a| a.passed);
        VerificationReport {
            check: check.into(),
            anchor: anchor.into(),
            status: Status::from_bool(ok && !self.assertions.is_empty()),
            assertions: self.assertions,
            details,
            elapsed_ms,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| Value::String(format!("<unserializable: {e}>")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit(envelope: &Envelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(envelope).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(envelope),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit_text(envelope: &Envelope) -> String {
    let mut out = String::new();
    for r in &envelope.reports {
        let _ = writeln!(
            out,
            "{} {} ({:.1} ms)",
            r.status.label(),
            r.check,
            r.elapsed_ms
        );
        let _ = writeln!(out, "  anchor: {}", r.anchor);
        for a in &r.assertions {
            if a.passed {
                let _ = writeln!(out, "  ok   {}: {}", a.name, compact(&a.actual));
            } else {
                let _ = writeln!(
                    out,
                    "  FAIL {}: expected {}, got {}",
                    a.name,
                    compact(&a.expected),
                    compact(&a.actual)
                );
            }
        }
        if let Some(list) = r.details.get("list").and_then(Value::as_array) {
            let _ = writeln!(out, "  list ({} entries):", list.len());
            for item in list {
                let _ = writeln!(out, "    {}", item);
            }
        }
    }
    let _ = writeln!(out, "{}", envelope.status.label());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_recorder_fails() {
        let r = Recorder::new().finish("x", "y", Value::Null, 0.0);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn status_and_exit_code() {
        let mut rec = Recorder::new();
        rec.eq("one", 1, 1);
        let pass = rec.finish("a", "anchor", Value::Null, 0.0);
        assert_eq!(Envelope::new(vec![pass.clone()]).exit_code(), 0);
        let mut rec = Recorder::new();
        rec.eq("one", 1, 1);
        rec.eq("two", 2, 3);
        let fail = rec.finish("b", "anchor", Value::Null, 0.0);
        let env = Envelope::new(vec![pass, fail]);
        assert_eq!(env.exit_code(), 1);
        let (r, a) = env.first_failure().unwrap();
        assert_eq!((r.check.as_str(), a.name.as_str()), ("b", "two"));
    }

    #[test]
    fn json_round_trip() {
        let mut rec = Recorder::new();
        rec.eq("v", vec![1, 2], vec![1, 2]);
        rec.check("p", true, "positive", 3);
        let env = Envelope::new(vec![rec.finish(
            "c",
            "anchor",
            serde_json::json!({"k": 1}),
            1.5,
        )]);
        let text = emit(&env, Format::Json);
        let back: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, env);
        assert!(emit(&env, Format::Text).contains("PASS c"));
    }
}
