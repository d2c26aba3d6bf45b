//! Diagnostics shared by every stage of the pipeline.

use std::fmt;

/// A 1-based line/column location in the interface source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub const fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

/// Stable diagnostic identifiers. The string form (`E-...`, `W-...`) is part
/// of the command-line contract and is what `--suppress` matches against.
pub mod ids {
    pub const LEX: &str = "E-lex";
    pub const SYNTAX: &str = "E-syntax";
    pub const MISSING_MODULE: &str = "E-missing-module";
    pub const DUPLICATE_MODULE: &str = "E-duplicate-module";
    pub const UNKNOWN_DIRECTIVE: &str = "E-unknown-directive";
    pub const UNKNOWN_PATTERN: &str = "E-unknown-pattern";
    pub const UNKNOWN_TEMPLATE: &str = "E-unknown-template";
    pub const TEMPLATE_ARITY: &str = "E-template-arity";
    pub const DUPLICATE_ALIAS: &str = "E-duplicate-alias";
    pub const DEFAULT_ARGS: &str = "E-default-args";
    pub const APPLY_MISMATCH: &str = "E-apply-mismatch";
    pub const INDEX_NON_INTEGER: &str = "E-index-non-integer";
    pub const BINDC_TYPE_NONPOD: &str = "E-bindc-type-nonpod";
    pub const BINDC_NONINTEROP: &str = "E-bindc-noninterop";

    pub const MIXED_OVERLOAD: &str = "W-mixed-overload";
    pub const AMBIGUOUS_OVERLOAD: &str = "W-ambiguous-overload";
    pub const UNUSED_TEMPLATE: &str = "W-unused-template";
    pub const UNSUPPORTED: &str = "W-unsupported";
    pub const UNMAPPED_TYPE: &str = "W-unmapped-type";
    pub const NAME_COLLISION: &str = "W-name-collision";
    pub const RENAMED: &str = "W-renamed";
    pub const PREPROCESSOR: &str = "W-preprocessor";
    pub const UNUSED_DIRECTIVE: &str = "W-unused-directive";

    pub const SKIPPED_MACRO: &str = "N-skipped-macro";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub id: &'static str,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn error(id: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, id, span, message: message.into() }
    }

    pub fn warning(id: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, id, span, message: message.into() }
    }

    pub fn note(id: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Note, id, span, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Render as `file:line:col: severity[id]: message`.
    pub fn render(&self, file: &str) -> String {
        format!("{}:{}: {}[{}]: {}", file, self.span, self.severity, self.id, self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}[{}]: {}", self.span, self.severity, self.id, self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
