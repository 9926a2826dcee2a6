//! First-order terms and formulas: abstract syntax, text parsing, canonical
//! printing and the syntactic algebra the checker relies on (free variables,
//! substitution, the free-for test, alpha-equivalence and instance matching).
//!
//! Variables and constants are told apart lexically. A variable is a single
//! lowercase letter from `u` to `z`, optionally followed by digits (`x`,
//! `y2`, `z10`). Every other identifier names a constant, a function or a
//! predicate, depending on where it appears.

mod ops;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ops::{
    alpha_eq, constants_of, free_vars, is_free_for, match_instance, substitute, symbols_of,
    CaptureError, InstanceMatch,
};
pub use parse::{parse_formula, parse_term, ParseError};
pub use print::format_formula;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Top,
    Bottom,
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// True for names that the lexer treats as variables.
pub fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some('u'..='z') => chars.all(|c| c.is_ascii_digit()),
        _ => false,
    }
}

/// True for nonempty names that start with a letter and continue with
/// letters, digits or underscores.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// A term is closed when it mentions no variables.
    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub(crate) fn mentions_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.mentions_var(name)),
        }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Pred(name.into(), Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// A sentence has no free variables.
    pub fn is_sentence(&self) -> bool {
        free_vars(self).is_empty()
    }

    /// Number of nodes in the tree, terms excluded.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Pred(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Every conjunction node reachable from the root through conjunctions,
    /// excluding the root itself. For `(A ∧ B) ∧ C` this is `A ∧ B`, `A`,
    /// `B` and `C`.
    pub fn conjunct_nodes(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        if let Formula::And(l, r) = self {
            collect_nodes(l, &mut out, is_and);
            collect_nodes(r, &mut out, is_and);
        }
        out
    }

    /// Same as [`Formula::conjunct_nodes`] for disjunctions.
    pub fn disjunct_nodes(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        if let Formula::Or(l, r) = self {
            collect_nodes(l, &mut out, is_or);
            collect_nodes(r, &mut out, is_or);
        }
        out
    }

    /// Leaves of the conjunction tree, left to right.
    pub fn flatten_and(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        flatten(self, &mut out, is_and);
        out
    }

    /// Leaves of the disjunction tree, left to right.
    pub fn flatten_or(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        flatten(self, &mut out, is_or);
        out
    }
}

fn is_and(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::And(l, r) => Some((l, r)),
        _ => None,
    }
}

fn is_or(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(l, r) => Some((l, r)),
        _ => None,
    }
}

fn collect_nodes<'a>(
    f: &'a Formula,
    out: &mut Vec<&'a Formula>,
    split: fn(&Formula) -> Option<(&Formula, &Formula)>,
) {
    out.push(f);
    if let Some((l, r)) = split(f) {
        collect_nodes(l, out, split);
        collect_nodes(r, out, split);
    }
}

fn flatten<'a>(
    f: &'a Formula,
    out: &mut Vec<&'a Formula>,
    split: fn(&Formula) -> Option<(&Formula, &Formula)>,
) {
    match split(f) {
        Some((l, r)) => {
            flatten(l, out, split);
            flatten(r, out, split);
        }
        None => out.push(f),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formula(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{name}` is used with arity {first} and with arity {second}")]
    ArityConflict {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("symbol `{name}` is used both as a {first} and as a {second}")]
    KindConflict {
        name: String,
        first: &'static str,
        second: &'static str,
    },
}

/// The non-logical vocabulary of a set of formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub predicates: BTreeMap<String, usize>,
    pub functions: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.predicates.insert(name.to_string(), arity);
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.functions.insert(name.to_string(), arity);
        self
    }

    pub fn with_constant(mut self, name: &str) -> Self {
        self.constants.insert(name.to_string());
        self
    }

    /// Collects the vocabulary of `formulas`, rejecting inconsistent arities
    /// and names used for two kinds of symbol.
    pub fn infer<'a>(
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Result<Signature, SignatureError> {
        let mut sig = Signature::new();
        for f in formulas {
            sig.add_formula(f)?;
        }
        Ok(sig)
    }

    pub fn add_formula(&mut self, f: &Formula) -> Result<(), SignatureError> {
        match f {
            Formula::Top | Formula::Bottom => Ok(()),
            Formula::Pred(name, args) => {
                self.add_predicate(name, args.len())?;
                args.iter().try_for_each(|t| self.add_term(t))
            }
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => self.add_formula(g),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
                self.add_formula(l)?;
                self.add_formula(r)
            }
        }
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) => self.add_constant(c),
            Term::App(name, args) => {
                self.add_function(name, args.len())?;
                args.iter().try_for_each(|a| self.add_term(a))
            }
        }
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SignatureError> {
        self.ensure_kind(name, "constant")?;
        self.constants.insert(name.to_string());
        Ok(())
    }

    fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.ensure_kind(name, "predicate")?;
        insert_arity(&mut self.predicates, name, arity)
    }

    fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.ensure_kind(name, "function")?;
        insert_arity(&mut self.functions, name, arity)
    }

    fn kind_of(&self, name: &str) -> Option<&'static str> {
        if self.predicates.contains_key(name) {
            Some("predicate")
        } else if self.functions.contains_key(name) {
            Some("function")
        } else if self.constants.contains(name) {
            Some("constant")
        } else {
            None
        }
    }

    fn ensure_kind(&self, name: &str, kind: &'static str) -> Result<(), SignatureError> {
        match self.kind_of(name) {
            Some(existing) if existing != kind => Err(SignatureError::KindConflict {
                name: name.to_string(),
                first: existing,
                second: kind,
            }),
            _ => Ok(()),
        }
    }

    /// Merges `other` into `self` under the same consistency rules.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (name, &arity) in &other.predicates {
            self.add_predicate(name, arity)?;
        }
        for (name, &arity) in &other.functions {
            self.add_function(name, arity)?;
        }
        for name in &other.constants {
            self.add_constant(name)?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty() && self.functions.is_empty() && self.constants.is_empty()
    }
}

fn insert_arity(
    map: &mut BTreeMap<String, usize>,
    name: &str,
    arity: usize,
) -> Result<(), SignatureError> {
    match map.get(name) {
        Some(&first) if first != arity => Err(SignatureError::ArityConflict {
            name: name.to_string(),
            first,
            second: arity,
        }),
        Some(_) => Ok(()),
        None => {
            map.insert(name.to_string(), arity);
            Ok(())
        }
    }
}
