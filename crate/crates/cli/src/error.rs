use std::fmt;

use serde::Serialize;

/// Exit status categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Parse,
    Validation,
    Io,
    Infeasible,
}

/// A structured error record; printed to stderr as JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl CliError {
    pub fn parse(message: String, line: Option<usize>, column: Option<usize>) -> Self {
        Self {
            kind: ErrorKind::Parse,
            message,
            violations: Vec::new(),
            line,
            column,
        }
    }

    pub fn validation(violations: Vec<String>) -> Self {
        Self {
            kind: ErrorKind::Validation,
            message: format!("{} invalid configuration value(s)", violations.len()),
            violations,
            line: None,
            column: None,
        }
    }

    pub fn io(message: String) -> Self {
        Self {
            kind: ErrorKind::Io,
            message,
            violations: Vec::new(),
            line: None,
            column: None,
        }
    }

    /// 2 for an infeasible optimization, 1 for any other failure.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Infeasible => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<zeno_core::Error> for CliError {
    fn from(e: zeno_core::Error) -> Self {
        match e {
            zeno_core::Error::Infeasible { .. } => Self {
                kind: ErrorKind::Infeasible,
                message: e.to_string(),
                violations: Vec::new(),
                line: None,
                column: None,
            },
            other => Self::validation(vec![other.to_string()]),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for CliError {}
