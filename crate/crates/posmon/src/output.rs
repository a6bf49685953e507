use serde_json::{json, Value};

use posmon_core::{SearchError, Verdict};

/// How a command's answer maps onto the process exit code.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Status::Holds,
            Verdict::No => Status::Fails,
            Verdict::Inconclusive { .. } => Status::Inconclusive,
        }
    }
}

pub struct Report {
    pub status: Status,
    /// Command-specific fields, merged into the top-level JSON object.
    pub body: Value,
    pub text: String,
}

impl Report {
    pub fn new(status: Status, body: Value, text: String) -> Self {
        Report { status, body, text }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(msg: impl std::fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn internal(msg: impl std::fmt::Display) -> Self {
        CliError::Internal(msg.to_string())
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Inconclusive { .. } => "inconclusive",
    }
}

pub fn verdict_json(v: Verdict) -> Value {
    match v {
        Verdict::Inconclusive { visited } => json!({"verdict": "inconclusive", "visited": visited}),
        _ => json!({"verdict": verdict_str(v)}),
    }
}

/// Assemble the single JSON document for a command.
pub fn document(command: &str, source: Option<Value>, budget: u64, report: &Report) -> Value {
    let mut doc = json!({
        "command": command,
        "status": report.status.as_str(),
        "budget_nodes": budget,
    });
    let map = doc.as_object_mut().expect("object");
    if let Some(src) = source {
        map.insert("presentation".into(), src);
    }
    if let Value::Object(body) = &report.body {
        for (k, v) in body {
            map.insert(k.clone(), v.clone());
        }
    }
    doc
}

pub fn budget_report(err: &SearchError) -> Report {
    let visited = match err {
        SearchError::BudgetExceeded { visited } => *visited,
        SearchError::TooLarge { .. } => 0,
    };
    Report::new(
        Status::Inconclusive,
        json!({"reason": err.to_string(), "visited": visited}),
        format!("inconclusive: {err}\n"),
    )
}
