//! Fitch-style proof documents.
//!
//! A document is a numbered list of lines. Premises come first, at depth 0.
//! A subproof opens with an assumption line (or a boxed-constant line) one
//! level deeper than the line before it and closes when a later line returns
//! to a shallower depth. Every formula in a document is a sentence.

mod diagnostic;
mod json;
mod scope;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{is_identifier, is_variable_name, Formula, Signature};

pub use diagnostic::{Code, Diagnostic, Severity};
pub use json::{document_from_json, document_to_json, DocumentJson};
pub use scope::{accessible, Scopes, Subproof};
pub use text::{format_proof, parse_proof};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDocument {
    pub name: String,
    pub lines: Vec<ProofLine>,
    pub declared_goal: Option<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub depth: usize,
    pub kind: LineKind,
    pub formula: Option<Formula>,
    pub justification: Option<Justification>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineKind {
    Premise,
    Assumption,
    Derived,
    /// Opens a subproof about a new, arbitrary constant. May carry an
    /// assumption formula about that constant as well.
    BoxedConstant(String),
}

impl LineKind {
    pub fn opens_subproof(&self) -> bool {
        matches!(self, LineKind::Assumption | LineKind::BoxedConstant(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub rule: RuleName,
    pub cited: Vec<Citation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Citation {
    Line(usize),
    /// A whole subproof, first and last line inclusive.
    Range(usize, usize),
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Citation::Line(n) => write!(f, "{n}"),
            Citation::Range(i, j) => write!(f, "{i}-{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleName {
    NotI,
    NotE,
    AndI,
    AndE,
    OrI,
    OrE,
    ImpI,
    ImpE,
    IffI,
    IffE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    Reit,
    BottomI,
    IP,
    QN,
    NegImp,
}

impl RuleName {
    pub const ALL: [RuleName; 19] = [
        RuleName::NotI,
        RuleName::NotE,
        RuleName::AndI,
        RuleName::AndE,
        RuleName::OrI,
        RuleName::OrE,
        RuleName::ImpI,
        RuleName::ImpE,
        RuleName::IffI,
        RuleName::IffE,
        RuleName::ForallI,
        RuleName::ForallE,
        RuleName::ExistsI,
        RuleName::ExistsE,
        RuleName::Reit,
        RuleName::BottomI,
        RuleName::IP,
        RuleName::QN,
        RuleName::NegImp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::NotI => "NotI",
            RuleName::NotE => "NotE",
            RuleName::AndI => "AndI",
            RuleName::AndE => "AndE",
            RuleName::OrI => "OrI",
            RuleName::OrE => "OrE",
            RuleName::ImpI => "ImpI",
            RuleName::ImpE => "ImpE",
            RuleName::IffI => "IffI",
            RuleName::IffE => "IffE",
            RuleName::ForallI => "ForallI",
            RuleName::ForallE => "ForallE",
            RuleName::ExistsI => "ExistsI",
            RuleName::ExistsE => "ExistsE",
            RuleName::Reit => "Reit",
            RuleName::BottomI => "BottomI",
            RuleName::IP => "IP",
            RuleName::QN => "QN",
            RuleName::NegImp => "NegImp",
        }
    }

    /// Quantifier negation, negated conditional and indirect proof are
    /// admissible combinations of the basic rules. Strict checking
    /// refuses them.
    pub fn is_derived(self) -> bool {
        matches!(self, RuleName::IP | RuleName::QN | RuleName::NegImp)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRule(pub String);

impl FromStr for RuleName {
    type Err = UnknownRule;

    /// Accepts the canonical names plus the usual textbook labels
    /// (`∀E`, `→E`, `¬I`, `⊥`, `Re`, `Def`, `EQUIV`, ...).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rule) = RuleName::ALL
            .iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
        {
            return Ok(*rule);
        }
        let rule = match s {
            "¬I" | "~I" => RuleName::NotI,
            "¬E" | "~E" => RuleName::NotE,
            "∧I" | "&I" => RuleName::AndI,
            "∧E" | "&E" => RuleName::AndE,
            "∨I" | "|I" => RuleName::OrI,
            "∨E" | "|E" => RuleName::OrE,
            "→I" | "->I" => RuleName::ImpI,
            "→E" | "->E" | "MP" => RuleName::ImpE,
            "↔I" | "<->I" => RuleName::IffI,
            "↔E" | "<->E" => RuleName::IffE,
            "∀I" => RuleName::ForallI,
            "∀E" => RuleName::ForallE,
            "∃I" => RuleName::ExistsI,
            "∃E" => RuleName::ExistsE,
            "Re" | "R" | "Reiteration" => RuleName::Reit,
            "⊥" | "⊥I" => RuleName::BottomI,
            "Def" => RuleName::QN,
            "EQUIV" | "Equiv" => RuleName::NegImp,
            _ => return Err(UnknownRule(s.to_string())),
        };
        Ok(rule)
    }
}

/// Why a document was refused before any rule checking happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParseCode {
    #[serde(rename = "E_PARSE")]
    Syntax,
    #[serde(rename = "E_NUMBERING")]
    Numbering,
    #[serde(rename = "E_STRUCTURE")]
    Structure,
    #[serde(rename = "E_UNKNOWN_RULE")]
    UnknownRule,
    #[serde(rename = "E_OPEN_FORMULA")]
    OpenFormula,
    #[serde(rename = "E_SIGNATURE")]
    Signature,
}

impl ParseCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseCode::Syntax => "E_PARSE",
            ParseCode::Numbering => "E_NUMBERING",
            ParseCode::Structure => "E_STRUCTURE",
            ParseCode::UnknownRule => "E_UNKNOWN_RULE",
            ParseCode::OpenFormula => "E_OPEN_FORMULA",
            ParseCode::Signature => "E_SIGNATURE",
        }
    }
}

/// A document that could not be read. `line` and `column` are 1-based
/// positions in the source text; for JSON input `line` is the proof line
/// number and `column` is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofParseError {
    pub code: ParseCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ProofParseError {
    pub(crate) fn new(code: ParseCode, line: usize, column: usize, message: String) -> Self {
        ProofParseError {
            code,
            line,
            column,
            message,
        }
    }
}

impl fmt::Display for ProofParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line,
            self.column,
            self.code.as_str(),
            self.message
        )
    }
}

impl std::error::Error for ProofParseError {}

impl ProofDocument {
    pub fn new(name: impl Into<String>) -> Self {
        ProofDocument {
            name: name.into(),
            lines: Vec::new(),
            declared_goal: None,
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The line with the given 1-based number.
    pub fn line(&self, number: usize) -> Option<&ProofLine> {
        number.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    pub fn formula_at(&self, number: usize) -> Option<&Formula> {
        self.line(number).and_then(|l| l.formula.as_ref())
    }

    pub fn premises(&self) -> Vec<&Formula> {
        self.lines
            .iter()
            .filter(|l| l.kind == LineKind::Premise)
            .filter_map(|l| l.formula.as_ref())
            .collect()
    }

    /// The formula on the last line, which is always at top level in a
    /// valid document.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().and_then(|l| l.formula.as_ref())
    }

    /// Vocabulary of every formula and boxed constant in the document.
    pub fn signature(&self) -> Result<Signature, ProofParseError> {
        let mut sig = Signature::new();
        for line in &self.lines {
            let mut add = || -> Result<(), crate::syntax::SignatureError> {
                if let LineKind::BoxedConstant(c) = &line.kind {
                    sig.add_constant(c)?;
                }
                if let Some(f) = &line.formula {
                    sig.add_formula(f)?;
                }
                Ok(())
            };
            add().map_err(|e| {
                ProofParseError::new(ParseCode::Signature, line.number, 0, e.to_string())
            })?;
        }
        if let Some(goal) = &self.declared_goal {
            sig.add_formula(goal).map_err(|e| {
                ProofParseError::new(ParseCode::Signature, 0, 0, format!("goal: {e}"))
            })?;
        }
        Ok(sig)
    }

    /// Checks the structural invariants shared by the text and JSON forms.
    /// Errors are reported against proof line numbers.
    pub fn validate(&self) -> Result<(), ProofParseError> {
        self.validate_with(|n| (n, 0))
    }

    pub(crate) fn validate_with(
        &self,
        position: impl Fn(usize) -> (usize, usize),
    ) -> Result<(), ProofParseError> {
        let err = |number: usize, code: ParseCode, message: String| {
            let (line, column) = position(number);
            ProofParseError::new(code, line, column, message)
        };
        if self.name.contains('\n') {
            return Err(ProofParseError::new(
                ParseCode::Syntax,
                0,
                0,
                "document name must be a single line".into(),
            ));
        }
        let mut seen_non_premise = false;
        let mut open: Vec<usize> = Vec::new();
        for (i, line) in self.lines.iter().enumerate() {
            let n = line.number;
            if n != i + 1 {
                return Err(err(
                    n,
                    ParseCode::Numbering,
                    format!("expected line number {}, found {n}", i + 1),
                ));
            }
            let prev_depth = open.len();
            match &line.kind {
                LineKind::Premise => {
                    if seen_non_premise {
                        return Err(err(
                            n,
                            ParseCode::Structure,
                            "premises must precede all other lines".into(),
                        ));
                    }
                    if line.depth != 0 {
                        return Err(err(
                            n,
                            ParseCode::Structure,
                            "premises sit at depth 0".into(),
                        ));
                    }
                }
                LineKind::Assumption | LineKind::BoxedConstant(_) => {
                    seen_non_premise = true;
                    if line.depth == 0 {
                        return Err(err(
                            n,
                            ParseCode::Structure,
                            "an assumption must open a subproof (depth at least 1)".into(),
                        ));
                    }
                    if line.depth > prev_depth + 1 {
                        return Err(err(
                            n,
                            ParseCode::Structure,
                            format!(
                                "subproof depth jumps from {prev_depth} to {}",
                                line.depth
                            ),
                        ));
                    }
                    open.truncate(line.depth - 1);
                    open.push(n);
                }
                LineKind::Derived => {
                    seen_non_premise = true;
                    if line.depth > prev_depth {
                        return Err(err(
                            n,
                            ParseCode::Structure,
                            "a subproof must start with an assumption".into(),
                        ));
                    }
                    open.truncate(line.depth);
                }
            }
            match (&line.kind, &line.formula) {
                (LineKind::BoxedConstant(c), _) => {
                    if !is_identifier(c) || is_variable_name(c) {
                        return Err(err(
                            n,
                            ParseCode::Syntax,
                            format!("`{c}` is not a constant name"),
                        ));
                    }
                }
                (_, None) => {
                    return Err(err(n, ParseCode::Syntax, "line has no formula".into()));
                }
                _ => {}
            }
            match (&line.kind, &line.justification) {
                (LineKind::Derived, None) => {
                    return Err(err(
                        n,
                        ParseCode::Syntax,
                        "derived line has no justification".into(),
                    ));
                }
                (LineKind::Derived, Some(j)) => {
                    for c in &j.cited {
                        let ok = match *c {
                            Citation::Line(k) => k >= 1,
                            Citation::Range(a, b) => a >= 1 && a <= b,
                        };
                        if !ok {
                            return Err(err(
                                n,
                                ParseCode::Syntax,
                                format!("malformed citation `{c}`"),
                            ));
                        }
                    }
                }
                (_, Some(_)) => {
                    return Err(err(
                        n,
                        ParseCode::Syntax,
                        "premises and assumptions take no rule".into(),
                    ));
                }
                (_, None) => {}
            }
            if let Some(f) = &line.formula {
                let free: BTreeSet<String> = crate::syntax::free_vars(f);
                if !free.is_empty() {
                    return Err(err(
                        n,
                        ParseCode::OpenFormula,
                        format!(
                            "formula has free variables: {}",
                            free.into_iter().collect::<Vec<_>>().join(", ")
                        ),
                    ));
                }
            }
        }
        if let Some(&opener) = open.last() {
            return Err(err(
                opener,
                ParseCode::Structure,
                format!("subproof opened at line {opener} is never closed"),
            ));
        }
        if let Some(goal) = &self.declared_goal {
            if !goal.is_sentence() {
                return Err(ProofParseError::new(
                    ParseCode::OpenFormula,
                    0,
                    0,
                    "declared goal has free variables".into(),
                ));
            }
        }
        self.signature().map_err(|e| {
            let (line, column) = position(e.line);
            ProofParseError { line, column, ..e }
        })?;
        Ok(())
    }
}
