use serde_json::{json, Value};
use tel_core::Error;

/// JSON schema version of the `--json` envelope.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Refuted = 1,
    BoundRelative = 2,
}

pub struct Report {
    pub cmd: &'static str,
    pub verdict: String,
    pub status: Status,
    pub bounds: Value,
    pub witness: Value,
    pub result: Value,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(cmd: &'static str, verdict: impl Into<String>, status: Status) -> Self {
        Report {
            cmd,
            verdict: verdict.into(),
            status,
            bounds: Value::Null,
            witness: Value::Null,
            result: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn envelope(&self) -> Value {
        json!({
            "cmd": self.cmd,
            "verdict": self.verdict,
            "bounds": self.bounds,
            "witness": self.witness,
            "result": self.result,
            "version": SCHEMA_VERSION,
        })
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.envelope()).expect("report serializes"));
        } else {
            for l in &self.text {
                println!("{l}");
            }
            println!("{}", self.verdict);
        }
    }
}

/// Exit status for a failed command: 64 usage, 65 bad input data,
/// 66 unreadable input, 69 search budget, 70 internal.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Io(_)) => 66,
        Some(Error::BudgetExceeded { .. } | Error::Capacity(_)) => 69,
        Some(Error::Internal(_)) => 70,
        Some(Error::InvalidArgument(_)) => 64,
        Some(_) => 65,
        None if e.downcast_ref::<std::io::Error>().is_some() => 66,
        None => 64,
    }
}
