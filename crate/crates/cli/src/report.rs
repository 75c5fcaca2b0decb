//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

use superdyn::expr::format_expr;
use superdyn::verify::Residual;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: Vec<usize>,
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub components_checked: usize,
    pub nonzero_components: usize,
    pub witness: Option<Witness>,
    pub message: Option<String>,
}

impl CheckReport {
    pub fn from_residual(name: &str, r: &Residual) -> Self {
        CheckReport {
            name: name.to_string(),
            status: if r.passes() { Status::Pass } else { Status::Fail },
            components_checked: r.checked,
            nonzero_components: r.failures().len(),
            witness: r.witness().map(|w| Witness { index: w.index.clone(), label: w.label.clone(), value: format_expr(&w.value) }),
            message: None,
        }
    }

    pub fn boolean(name: &str, ok: bool, message: Option<String>) -> Self {
        CheckReport {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            components_checked: 1,
            nonzero_components: usize::from(!ok),
            witness: None,
            message,
        }
    }

    pub fn error(name: &str, message: String) -> Self {
        CheckReport {
            name: name.to_string(),
            status: Status::Error,
            components_checked: 0,
            nonzero_components: 0,
            witness: None,
            message: Some(message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub name: String,
    pub millis: u128,
}

/// Report for one command invocation. Field order is fixed, and timings are
/// only recorded on request so that reports are byte-stable by default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub input: Option<String>,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    pub notes: Vec<String>,
    pub timings: Option<Vec<Timing>>,
}

impl ReportDocument {
    pub fn new(command: &str, input: Option<String>, seed: u64) -> Self {
        ReportDocument {
            schema_version: crate::document::SCHEMA_VERSION,
            tool: "superdyn".into(),
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            input,
            seed,
            status: Status::Pass,
            checks: Vec::new(),
            notes: Vec::new(),
            timings: None,
        }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.status = match (self.status, check.status) {
            (Status::Error, _) | (_, Status::Error) => Status::Error,
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            _ => Status::Pass,
        };
        self.checks.push(check);
    }

    pub fn record_time(&mut self, name: &str, millis: u128) {
        self.timings.get_or_insert_with(Vec::new).push(Timing { name: name.into(), millis });
    }
}
