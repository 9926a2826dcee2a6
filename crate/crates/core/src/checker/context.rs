use crate::proofdoc::{
    Citation, Code, Diagnostic, LineKind, ProofDocument, RuleName, Scopes, Subproof,
};
use crate::syntax::{alpha_eq, constants_of, match_instance, Formula, InstanceMatch, Term};

/// What a subproof citation makes available.
#[derive(Debug, Clone, Copy)]
pub(super) enum Opener<'a> {
    Assumption(&'a Formula),
    Boxed(&'a str, Option<&'a Formula>),
}

#[derive(Debug, Clone, Copy)]
pub(super) enum Item<'a> {
    Line(usize, &'a Formula),
    Sub {
        start: usize,
        end: usize,
        opener: Opener<'a>,
        /// Last line at the subproof's own depth. `None` when that line is a
        /// bare boxed-constant opener.
        result: Option<&'a Formula>,
    },
}

impl<'a> Item<'a> {
    pub(super) fn label(&self) -> String {
        match self {
            Item::Line(n, _) => format!("line {n}"),
            Item::Sub { start, end, .. } => format!("subproof {start}-{end}"),
        }
    }

    pub(super) fn first_line(&self) -> usize {
        match *self {
            Item::Line(n, _) => n,
            Item::Sub { start, .. } => start,
        }
    }
}

/// Everything a validator needs about the line under check.
pub(super) struct Ctx<'a> {
    pub doc: &'a ProofDocument,
    pub scopes: Scopes,
    pub number: usize,
    pub rule: RuleName,
    pub conclusion: &'a Formula,
    pub alpha: bool,
}

impl<'a> Ctx<'a> {
    pub(super) fn eq(&self, a: &Formula, b: &Formula) -> bool {
        if self.alpha {
            alpha_eq(a, b)
        } else {
            a == b
        }
    }

    pub(super) fn diag(&self, code: Code, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new(self.number, code, message)
    }

    /// Resolves the citations. Returns the usable items, or `None` when at
    /// least one citation names nothing that exists at or before this line.
    pub(super) fn resolve(
        &self,
        cited: &[Citation],
        diags: &mut Vec<Diagnostic>,
    ) -> Option<Vec<Item<'a>>> {
        let n = self.number;
        let mut items = Vec::new();
        let mut usable = true;
        for &c in cited {
            match c {
                Citation::Line(k) => {
                    if k > n {
                        let what = if k > self.doc.len() { "does not exist" } else { "comes later" };
                        diags.push(
                            self.diag(Code::BadCitation, format!("cited line {k} {what}"))
                                .with_related([k].into_iter().filter(|&k| k <= self.doc.len())),
                        );
                        usable = false;
                        continue;
                    }
                    if k == n {
                        diags.push(
                            self.diag(Code::BadCitation, format!("line {n} cites itself"))
                                .with_related([n]),
                        );
                    } else if !self.scopes.line_accessible(k, n) {
                        diags.push(
                            self.diag(
                                Code::Scope,
                                format!("line {k} lies inside a closed subproof"),
                            )
                            .with_related([k]),
                        );
                    }
                    match self.doc.formula_at(k) {
                        Some(f) => items.push(Item::Line(k, f)),
                        None => {
                            diags.push(
                                self.diag(
                                    Code::BadCitation,
                                    format!("line {k} introduces a constant and has no formula"),
                                )
                                .with_related([k]),
                            );
                            usable = false;
                        }
                    }
                }
                Citation::Range(i, j) => {
                    if j >= n {
                        diags.push(self.diag(
                            Code::BadCitation,
                            format!("subproof {i}-{j} does not end before line {n}"),
                        ));
                        usable = false;
                        continue;
                    }
                    let Some(sub) = self.scopes.subproof(i, j).copied() else {
                        diags.push(
                            self.diag(
                                Code::BadCitation,
                                format!("lines {i}-{j} are not exactly one subproof"),
                            )
                            .with_related([i]),
                        );
                        usable = false;
                        continue;
                    };
                    if !self.scopes.subproof_accessible(i, j, n) {
                        diags.push(
                            self.diag(
                                Code::Scope,
                                format!("subproof {i}-{j} lies inside a closed subproof"),
                            )
                            .with_related([i]),
                        );
                    }
                    items.push(self.subproof_item(&sub));
                }
            }
        }
        usable.then_some(items)
    }

    fn subproof_item(&self, sub: &Subproof) -> Item<'a> {
        let doc = self.doc;
        let open_line = doc.line(sub.start).expect("subproof opener exists");
        let opener = match &open_line.kind {
            LineKind::BoxedConstant(c) => Opener::Boxed(c, open_line.formula.as_ref()),
            _ => Opener::Assumption(open_line.formula.as_ref().expect("assumption has formula")),
        };
        let result = (sub.start..=sub.end)
            .rev()
            .filter_map(|k| doc.line(k))
            .find(|l| l.depth == sub.depth)
            .and_then(|l| l.formula.as_ref());
        Item::Sub {
            start: sub.start,
            end: sub.end,
            opener,
            result,
        }
    }

    /// Constants introduced by `ExistsE` on lines before this one, with the
    /// introducing line.
    pub(super) fn exists_witnesses(&self) -> Vec<(String, usize)> {
        (1..self.number)
            .filter_map(|k| exists_witness(self.doc, k).map(|c| (c, k)))
            .collect()
    }

    /// First line whose formula or boxed constant mentions `c`.
    pub(super) fn first_occurrence(&self, c: &str) -> Option<usize> {
        self.doc
            .lines
            .iter()
            .find(|l| mentions(l.formula.as_ref(), &l.kind, c))
            .map(|l| l.number)
    }

    /// Whether `c` occurs on any line numbered below `before`.
    pub(super) fn occurs_before(&self, c: &str, before: usize) -> Option<usize> {
        self.first_occurrence(c).filter(|&k| k < before)
    }
}

fn mentions(f: Option<&Formula>, kind: &LineKind, c: &str) -> bool {
    matches!(kind, LineKind::BoxedConstant(b) if b == c)
        || f.is_some_and(|f| constants_of(f).contains(c))
}

/// The constant that line `k` introduces if it is an `ExistsE` step whose
/// conclusion instantiates its cited existential with a constant.
pub(crate) fn exists_witness(doc: &ProofDocument, k: usize) -> Option<String> {
    let line = doc.line(k)?;
    let j = line.justification.as_ref()?;
    if j.rule != RuleName::ExistsE {
        return None;
    }
    let Some(Citation::Line(m)) = j.cited.first().copied() else {
        return None;
    };
    if m >= k {
        return None;
    }
    let Formula::Exists(x, body) = doc.formula_at(m)? else {
        return None;
    };
    match match_instance(body, x, line.formula.as_ref()?, true) {
        InstanceMatch::Instance(Some(Term::Const(c))) => Some(c),
        _ => None,
    }
}
