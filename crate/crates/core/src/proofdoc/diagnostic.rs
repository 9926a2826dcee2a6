use std::fmt;

use serde::{Deserialize, Serialize};

/// Stable diagnostic codes (JSON report schema v1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Code {
    /// Cited line or subproof exists but is not accessible from here.
    #[serde(rename = "E_SCOPE")]
    Scope,
    /// Missing, forward or self citation, a range that is not a subproof,
    /// or the wrong number or kind of citations for the rule.
    #[serde(rename = "E_BAD_CITATION")]
    BadCitation,
    /// The formulas do not fit the rule schema.
    #[serde(rename = "E_RULE_MISMATCH")]
    RuleMismatch,
    /// A constant side condition of ∀I or ∃E is violated.
    #[serde(rename = "E_FRESHNESS")]
    Freshness,
    /// The instantiating term is not free for the quantified variable.
    #[serde(rename = "E_NOT_FREE_FOR")]
    NotFreeFor,
    /// A derived rule was used under strict checking.
    #[serde(rename = "E_DERIVED_IN_STRICT")]
    DerivedInStrict,
    #[serde(rename = "E_UNKNOWN_RULE")]
    UnknownRule,
    /// The last line differs from the declared goal.
    #[serde(rename = "E_GOAL_MISMATCH")]
    GoalMismatch,
    /// A `NotI` line concluding a positive sentence was read as `IP`.
    #[serde(rename = "W_RULE_RELABELED")]
    RuleRelabeled,
}

impl Code {
    pub const ALL: [Code; 9] = [
        Code::Scope,
        Code::BadCitation,
        Code::RuleMismatch,
        Code::Freshness,
        Code::NotFreeFor,
        Code::DerivedInStrict,
        Code::UnknownRule,
        Code::GoalMismatch,
        Code::RuleRelabeled,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::Scope => "E_SCOPE",
            Code::BadCitation => "E_BAD_CITATION",
            Code::RuleMismatch => "E_RULE_MISMATCH",
            Code::Freshness => "E_FRESHNESS",
            Code::NotFreeFor => "E_NOT_FREE_FOR",
            Code::DerivedInStrict => "E_DERIVED_IN_STRICT",
            Code::UnknownRule => "E_UNKNOWN_RULE",
            Code::GoalMismatch => "E_GOAL_MISMATCH",
            Code::RuleRelabeled => "W_RULE_RELABELED",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::RuleRelabeled => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A verdict about one proof line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub line: usize,
    pub code: Code,
    pub severity: Severity,
    pub message: String,
    pub related: Vec<usize>,
}

impl Diagnostic {
    pub fn new(line: usize, code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            code,
            severity: code.severity(),
            message: message.into(),
            related: Vec::new(),
        }
    }

    pub fn with_related(mut self, related: impl IntoIterator<Item = usize>) -> Self {
        self.related = related.into_iter().collect();
        self.related.sort_unstable();
        self.related.dedup();
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "line {}: {severity}[{}]: {}",
            self.line, self.code, self.message
        )?;
        if !self.related.is_empty() {
            let related: Vec<String> = self.related.iter().map(|n| n.to_string()).collect();
            write!(f, " (see line {})", related.join(", "))?;
        }
        Ok(())
    }
}
