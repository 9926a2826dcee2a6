//! Finite structures, Tarskian evaluation and bounded entailment.
//!
//! `entails` looks at every structure with at most `max_n` elements. A
//! `ValidUpTo(n)` verdict says only that no countermodel that small exists;
//! first-order logic has no finite model property, so it is not a proof of
//! validity.

mod enumerate;
mod search;
mod structure;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Formula, SignatureError, Term};

pub use enumerate::{enumerate_structures, structure_at, structure_count, Structures};
pub use search::{entails, entails_with, find_countermodel, SearchOptions, DEFAULT_MAX_STRUCTURES};
pub use structure::{Layout, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("no interpretation for `{0}`")]
    Uninterpreted(String),
    #[error("`{name}` takes {expected} arguments, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("element {element} is outside the domain of size {domain_size}")]
    Element { element: usize, domain_size: usize },
    #[error("variable `{0}` is unassigned")]
    Unassigned(String),
    #[error("formula is not a sentence: {0}")]
    OpenFormula(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("{count} structures to search exceeds the limit of {limit}")]
    Resource { count: u128, limit: u128 },
}

/// Values of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, var: &str, e: usize) -> Assignment {
        self.0.insert(var.to_string(), e);
        self
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    fn set(&mut self, var: &str, e: usize) -> Option<usize> {
        self.0.insert(var.to_string(), e)
    }

    fn restore(&mut self, var: &str, old: Option<usize>) {
        match old {
            Some(e) => self.0.insert(var.to_string(), e),
            None => self.0.remove(var),
        };
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    ValidUpTo { max_domain: usize },
    Countermodel { structure: Structure },
}

pub fn eval_term(s: &Structure, a: &Assignment, t: &Term) -> Result<usize, SemanticsError> {
    match t {
        Term::Var(v) => a.get(v).ok_or_else(|| SemanticsError::Unassigned(v.clone())),
        Term::Const(c) => s
            .constant(c)
            .ok_or_else(|| SemanticsError::Uninterpreted(c.clone())),
        Term::App(f, args) => {
            let values = args
                .iter()
                .map(|t| eval_term(s, a, t))
                .collect::<Result<Vec<_>, _>>()?;
            s.apply(f, &values).ok_or_else(|| arity_or_missing(s, f, true, values.len()))
        }
    }
}

fn arity_or_missing(s: &Structure, name: &str, function: bool, found: usize) -> SemanticsError {
    let layout = s.layout();
    let arity = if function {
        layout.function(name).map(|i| layout.functions[i].1)
    } else {
        layout.predicate(name).map(|i| layout.predicates[i].1)
    };
    match arity {
        Some(expected) => SemanticsError::Arity {
            name: name.to_string(),
            expected,
            found,
        },
        None => SemanticsError::Uninterpreted(name.to_string()),
    }
}

/// Truth of `f` in `s` under `a`.
pub fn evaluate(s: &Structure, a: &Assignment, f: &Formula) -> Result<bool, SemanticsError> {
    let mut a = a.clone();
    eval(s, &mut a, f)
}

fn eval(s: &Structure, a: &mut Assignment, f: &Formula) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Pred(p, args) => {
            let values = args
                .iter()
                .map(|t| eval_term(s, a, t))
                .collect::<Result<Vec<_>, _>>()?;
            s.holds(p, &values)
                .ok_or_else(|| arity_or_missing(s, p, false, values.len()))?
        }
        Formula::Not(g) => !eval(s, a, g)?,
        Formula::And(l, r) => {
            let (l, r) = (eval(s, a, l)?, eval(s, a, r)?);
            l && r
        }
        Formula::Or(l, r) => {
            let (l, r) = (eval(s, a, l)?, eval(s, a, r)?);
            l || r
        }
        Formula::Imp(l, r) => {
            let (l, r) = (eval(s, a, l)?, eval(s, a, r)?);
            !l || r
        }
        Formula::Iff(l, r) => eval(s, a, l)? == eval(s, a, r)?,
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            let universal = matches!(f, Formula::Forall(..));
            let old = a.get(x);
            let mut result = universal;
            for e in 0..s.domain_size() {
                a.set(x, e);
                let v = eval(s, a, g);
                match v {
                    Ok(v) if v != universal => {
                        result = v;
                        break;
                    }
                    Ok(_) => {}
                    Err(err) => {
                        a.restore(x, old);
                        return Err(err);
                    }
                }
            }
            a.restore(x, old);
            result
        }
    })
}
