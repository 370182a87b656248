use crossed::report::Finding;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Vec<Finding>,
    pub payload: Value,
}

impl Report {
    /// Pass iff there are no findings.
    pub fn checked(command: &str, findings: Vec<Finding>, payload: Value) -> Self {
        let status = if findings.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            command: command.into(),
            status,
            findings,
            payload,
        }
    }

    pub fn error(command: &str, kind: &str, message: String) -> Self {
        Report {
            command: command.into(),
            status: Status::Error,
            findings: Vec::new(),
            payload: serde_json::json!({ "kind": kind, "message": message }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(out, "{}: {status}", self.command);
        if !self.findings.is_empty() {
            let _ = writeln!(out, "{} finding(s):", self.findings.len());
            for f in &self.findings {
                let _ = writeln!(out, "  {f}");
            }
        }
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                match v {
                    Value::String(s) => {
                        let _ = writeln!(out, "{k}: {s}");
                    }
                    Value::Number(_) | Value::Bool(_) | Value::Null => {
                        let _ = writeln!(out, "{k}: {v}");
                    }
                    _ => {
                        let _ = writeln!(out, "{k}: {}", serde_json::to_string(v).expect("value serializes"));
                    }
                }
            }
        }
        out
    }
}
