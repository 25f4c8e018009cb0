//! Reading and writing `.viscat` model files, and rendering reports.

mod parse;
mod report;
mod serialize;

use std::fmt;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::process::ProcessModel;

pub use parse::parse_spec;
pub use report::{
    emit_paths, emit_report, paths_report, CommutativitySection, Format, ModelKind, PathEntry,
    PathsReport, Report,
};
pub use serialize::{quote_token, serialize_spec};

/// Text of a model file plus a name used in diagnostics.
#[derive(Debug, Clone)]
pub struct SpecSource {
    pub text: String,
    pub origin: String,
}

impl SpecSource {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        SpecSource {
            text: text.into(),
            origin: origin.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A positioned message; `line` and `column` are 1-based, columns count
/// characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `origin:line:column: severity: message`
    pub fn render(&self, origin: &str) -> String {
        format!("{origin}:{}:{}: {self}", self.line, self.column)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}", self.message)
    }
}

/// A parsed file: a process model when any role, alternate or derivation is
/// present, otherwise a bare diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecModel {
    Diagram(Diagram),
    Process(ProcessModel),
}

impl SpecModel {
    pub fn diagram(&self) -> &Diagram {
        match self {
            SpecModel::Diagram(d) => d,
            SpecModel::Process(p) => p.diagram(),
        }
    }

    pub fn as_process(&self) -> Option<&ProcessModel> {
        match self {
            SpecModel::Process(p) => Some(p),
            SpecModel::Diagram(_) => None,
        }
    }
}

/// The model is present only when no error was diagnosed.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub model: Option<SpecModel>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> + '_ {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}
