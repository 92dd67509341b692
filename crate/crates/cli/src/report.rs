use serde::Serialize;
use serde_json::Value;

use ydlift::Error;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, value: None, witness: None }
    }

    /// Passes iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        Check { name: name.into(), passed: witness.is_none(), value: None, witness }
    }

    pub fn value(mut self, v: impl Serialize) -> Self {
        self.value = Some(serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        if !self.passed {
            self.witness = Some(w.into());
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<String>,
}

impl Report {
    pub fn new(command: &str, subject: &str, checks: Vec<Check>) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            subject: subject.into(),
            checks,
            error: None,
            wall_time: None,
        }
    }

    pub fn from_error(command: &str, subject: &str, e: &Error) -> Self {
        let mut r = Report::new(command, subject, Vec::new());
        r.error = Some(ErrorInfo { kind: error_kind(e), message: e.to_string() });
        r
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => match e.kind {
                "usage" => 2,
                "resource" => 3,
                _ => 1,
            },
            None if self.passed() => 0,
            None => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::Shape(_) | Error::UnknownName(_) | Error::Invalid(_) | Error::Orientation(..) => {
            "usage"
        }
        Error::Resource(_) | Error::NonTermination(_) => "resource",
        _ => "failure",
    }
}
