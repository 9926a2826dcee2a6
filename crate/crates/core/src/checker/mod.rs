//! Line-by-line validation of proof documents.
//!
//! [`check_line`] looks only at lines up to and including the one it
//! checks. [`check_proof`] runs it over every derived line and then adds the
//! two checks that concern the document as a whole: an `ExistsE` witness may
//! not survive into the last line, and the last line must match a declared
//! goal.

mod context;
mod rules;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::proofdoc::{Code, Diagnostic, LineKind, ProofDocument};
use crate::syntax::{alpha_eq, constants_of, format_formula, symbols_of, Formula};

pub(crate) use context::exists_witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    /// Refuse the derived rules `IP`, `QN` and `NegImp`.
    pub strict: bool,
    /// Compare formulas up to renaming of bound variables.
    pub alpha_matching: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            strict: false,
            alpha_matching: true,
        }
    }
}

impl CheckConfig {
    pub fn strict() -> Self {
        CheckConfig {
            strict: true,
            ..CheckConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub diagnostics: Vec<Diagnostic>,
    pub accepted: bool,
    /// The last line's formula, present only when the proof is accepted.
    pub proved: Option<Formula>,
}

/// Wire form of a [`CheckReport`], schema `v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub version: String,
    pub accepted: bool,
    pub proved: Option<String>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CheckReport {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn codes(&self) -> BTreeSet<Code> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            version: "v1".into(),
            accepted: self.accepted,
            proved: self.proved.as_ref().map(format_formula),
            diagnostics: self.diagnostics.clone(),
        }
    }

    /// Pretty-printed JSON followed by a newline. The CLI and the HTTP
    /// service both emit exactly this text.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn check_proof(doc: &ProofDocument, cfg: &CheckConfig) -> CheckReport {
    let mut diagnostics: Vec<Diagnostic> = doc
        .lines
        .par_iter()
        .filter(|l| l.kind == LineKind::Derived)
        .flat_map_iter(|l| check_line(doc, l.number, cfg))
        .collect();
    diagnostics.extend(document_checks(doc, cfg));
    diagnostics.sort_by_key(|d| d.line);

    let accepted = !diagnostics.iter().any(Diagnostic::is_error);
    CheckReport {
        accepted,
        proved: if accepted {
            doc.conclusion().cloned()
        } else {
            None
        },
        diagnostics,
    }
}

fn document_checks(doc: &ProofDocument, cfg: &CheckConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Some(last) = doc.lines.last() else {
        return out;
    };
    if let Some(final_formula) = &last.formula {
        let present = constants_of(final_formula);
        for line in &doc.lines {
            if let Some(c) = exists_witness(doc, line.number) {
                if present.contains(&c) {
                    out.push(
                        Diagnostic::new(
                            last.number,
                            Code::Freshness,
                            format!(
                                "{c} was introduced by ExistsE on line {} and may not appear in the conclusion",
                                line.number
                            ),
                        )
                        .with_related([line.number]),
                    );
                }
            }
        }
    }
    if let Some(goal) = &doc.declared_goal {
        let reached = last.formula.as_ref().is_some_and(|f| {
            if cfg.alpha_matching {
                alpha_eq(f, goal)
            } else {
                f == goal
            }
        });
        if !reached {
            out.push(Diagnostic::new(
                last.number,
                Code::GoalMismatch,
                format!("the last line does not match the declared goal {goal}"),
            ));
        }
    }
    out
}

/// Diagnostics for one derived line. Premises and assumptions have nothing to
/// check and yield an empty list.
pub fn check_line(doc: &ProofDocument, line: usize, cfg: &CheckConfig) -> Vec<Diagnostic> {
    match doc.line(line) {
        Some(l) if l.kind == LineKind::Derived => rules::check(doc, line, cfg),
        _ => Vec::new(),
    }
}

/// Identifiers used by the premises and by lines `1..=upto`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreshSet {
    used: BTreeSet<String>,
}

impl FreshSet {
    /// Whether `name` is still unused.
    pub fn contains(&self, name: &str) -> bool {
        !self.used.contains(name)
    }

    pub fn used(&self) -> &BTreeSet<String> {
        &self.used
    }

    /// The first unused name among `base`, `base1`, `base2`, ...
    pub fn fresh(&self, base: &str) -> String {
        if self.contains(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.contains(n))
            .expect("unbounded supply")
    }
}

pub fn fresh_constants(doc: &ProofDocument, upto: usize) -> FreshSet {
    let mut used = BTreeSet::new();
    for line in &doc.lines {
        if line.number > upto && line.kind != LineKind::Premise {
            continue;
        }
        if let LineKind::BoxedConstant(c) = &line.kind {
            used.insert(c.clone());
        }
        if let Some(f) = &line.formula {
            used.extend(symbols_of(f));
        }
    }
    FreshSet { used }
}
