//! JSON form of a proof document (version `v1`).
//!
//! ```json
//! {
//!   "version": "v1",
//!   "name": "socrates_direct",
//!   "premises": ["∀x (H(x) → M(x))", "H(s)"],
//!   "lines": [
//!     {"number": 3, "depth": 0, "kind": "derived", "formula": "H(s) → M(s)",
//!      "justification": {"rule": "ForallE", "cited": [1]}}
//!   ],
//!   "declared_goal": null
//! }
//! ```
//!
//! Subproof citations are two-element arrays, `[2, 5]`.

use serde::{Deserialize, Serialize};

use super::{
    Citation, Justification, LineKind, ParseCode, ProofDocument, ProofLine, ProofParseError,
    RuleName,
};
use crate::syntax::{format_formula, parse_formula};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub premises: Vec<String>,
    #[serde(default)]
    pub lines: Vec<LineJson>,
    #[serde(default)]
    pub declared_goal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineJson {
    pub number: usize,
    pub depth: usize,
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
    #[serde(default)]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub justification: Option<JustificationJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindJson {
    Assumption,
    Derived,
    BoxedConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JustificationJson {
    pub rule: String,
    #[serde(default)]
    pub cited: Vec<CitationJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CitationJson {
    Line(usize),
    Range([usize; 2]),
}

pub fn document_to_json(doc: &ProofDocument) -> DocumentJson {
    let mut premises = Vec::new();
    let mut lines = Vec::new();
    for line in &doc.lines {
        let formula = line.formula.as_ref().map(format_formula);
        match &line.kind {
            LineKind::Premise => premises.push(formula.unwrap_or_default()),
            kind => {
                let (kind, constant) = match kind {
                    LineKind::Assumption => (KindJson::Assumption, None),
                    LineKind::BoxedConstant(c) => (KindJson::BoxedConstant, Some(c.clone())),
                    _ => (KindJson::Derived, None),
                };
                lines.push(LineJson {
                    number: line.number,
                    depth: line.depth,
                    kind,
                    constant,
                    formula,
                    justification: line.justification.as_ref().map(|j| JustificationJson {
                        rule: j.rule.as_str().to_string(),
                        cited: j
                            .cited
                            .iter()
                            .map(|c| match *c {
                                Citation::Line(n) => CitationJson::Line(n),
                                Citation::Range(a, b) => CitationJson::Range([a, b]),
                            })
                            .collect(),
                    }),
                });
            }
        }
    }
    DocumentJson {
        version: Some("v1".into()),
        name: doc.name.clone(),
        premises,
        lines,
        declared_goal: doc.declared_goal.as_ref().map(format_formula),
    }
}

/// Converts and validates. Errors carry the proof line number in `line`.
pub fn document_from_json(json: &DocumentJson) -> Result<ProofDocument, ProofParseError> {
    if let Some(v) = &json.version {
        if v != "v1" {
            return Err(ProofParseError::new(
                ParseCode::Syntax,
                0,
                0,
                format!("unsupported document version `{v}`"),
            ));
        }
    }
    let formula = |number: usize, text: &str| {
        parse_formula(text).map_err(|e| {
            ProofParseError::new(
                ParseCode::Syntax,
                number,
                0,
                format!("at offset {}: {}", e.offset, e.message),
            )
        })
    };
    let mut doc = ProofDocument::new(json.name.clone());
    for (i, p) in json.premises.iter().enumerate() {
        doc.lines.push(ProofLine {
            number: i + 1,
            depth: 0,
            kind: LineKind::Premise,
            formula: Some(formula(i + 1, p)?),
            justification: None,
        });
    }
    for l in &json.lines {
        let kind = match (l.kind, &l.constant) {
            (KindJson::Assumption, None) => LineKind::Assumption,
            (KindJson::Derived, None) => LineKind::Derived,
            (KindJson::BoxedConstant, Some(c)) => LineKind::BoxedConstant(c.clone()),
            (KindJson::BoxedConstant, None) => {
                return Err(ProofParseError::new(
                    ParseCode::Syntax,
                    l.number,
                    0,
                    "boxed_constant line needs a `constant`".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(ProofParseError::new(
                    ParseCode::Syntax,
                    l.number,
                    0,
                    "only boxed_constant lines carry a `constant`".into(),
                ))
            }
        };
        let justification = match &l.justification {
            None => None,
            Some(j) => {
                let rule: RuleName = j.rule.parse().map_err(|_| {
                    ProofParseError::new(
                        ParseCode::UnknownRule,
                        l.number,
                        0,
                        format!("unknown rule `{}`", j.rule),
                    )
                })?;
                let cited = j
                    .cited
                    .iter()
                    .map(|c| match *c {
                        CitationJson::Line(n) => Citation::Line(n),
                        CitationJson::Range([a, b]) => Citation::Range(a, b),
                    })
                    .collect();
                Some(Justification { rule, cited })
            }
        };
        doc.lines.push(ProofLine {
            number: l.number,
            depth: l.depth,
            kind,
            formula: l
                .formula
                .as_deref()
                .map(|f| formula(l.number, f))
                .transpose()?,
            justification,
        });
    }
    doc.declared_goal = json
        .declared_goal
        .as_deref()
        .map(|g| formula(0, g))
        .transpose()?;
    doc.validate()?;
    Ok(doc)
}
