use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, Term};

/// Substituting would put a variable of the replacement term under a
/// quantifier that binds it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureError {
    /// The variable that would be captured.
    pub binder: String,
    /// The capturing quantifier, e.g. `∀y`.
    pub quantifier: String,
    /// Preorder index of the capturing quantifier node (root = 0).
    pub position: usize,
}

impl fmt::Display for CaptureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable `{}` would be captured by `{}` (node {})",
            self.binder, self.quantifier, self.position
        )
    }
}

impl std::error::Error for CaptureError {}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(f, &mut bound, &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Pred(_, args) => {
            let mut vars = BTreeSet::new();
            args.iter().for_each(|t| t.collect_vars(&mut vars));
            out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
        }
        Formula::Not(g) => collect_free(g, bound, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            collect_free(l, bound, out);
            collect_free(r, bound, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            bound.push(v.clone());
            collect_free(g, bound, out);
            bound.pop();
        }
    }
}

/// Names of all constants occurring in `f`.
pub fn constants_of(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    visit_terms(f, &mut |t| collect_constants(t, &mut out));
    out
}

fn collect_constants(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::App(_, args) => args.iter().for_each(|a| collect_constants(a, out)),
    }
}

/// Every non-logical name in `f`: predicates, functions and constants.
pub fn symbols_of(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_symbols(f, &mut out);
    out
}

fn collect_symbols(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Pred(name, args) => {
            out.insert(name.clone());
            args.iter().for_each(|t| term_symbols(t, out));
        }
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => collect_symbols(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            collect_symbols(l, out);
            collect_symbols(r, out);
        }
    }
}

fn term_symbols(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::App(name, args) => {
            out.insert(name.clone());
            args.iter().for_each(|a| term_symbols(a, out));
        }
    }
}

fn visit_terms(f: &Formula, visit: &mut impl FnMut(&Term)) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Pred(_, args) => args.iter().for_each(&mut *visit),
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => visit_terms(g, visit),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            visit_terms(l, visit);
            visit_terms(r, visit);
        }
    }
}

/// Replaces every free occurrence of `x` in `f` by `t`. Bound variables are
/// never renamed: if a variable of `t` would be captured the substitution is
/// refused.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Result<Formula, CaptureError> {
    let term_vars = t.vars();
    let mut binders = Vec::new();
    let mut position = 0;
    Subst {
        x,
        t,
        term_vars: &term_vars,
    }
    .formula(f, &mut binders, &mut position)
}

struct Subst<'a> {
    x: &'a str,
    t: &'a Term,
    term_vars: &'a BTreeSet<String>,
}

struct Binder {
    var: String,
    symbol: char,
    position: usize,
}

impl Subst<'_> {
    fn formula(
        &self,
        f: &Formula,
        binders: &mut Vec<Binder>,
        position: &mut usize,
    ) -> Result<Formula, CaptureError> {
        let here = *position;
        *position += 1;
        Ok(match f {
            Formula::Top | Formula::Bottom => f.clone(),
            Formula::Pred(name, args) => {
                let args = args
                    .iter()
                    .map(|a| self.term(a, binders))
                    .collect::<Result<_, _>>()?;
                Formula::Pred(name.clone(), args)
            }
            Formula::Not(g) => Formula::not(self.formula(g, binders, position)?),
            Formula::And(l, r) => {
                let l = self.formula(l, binders, position)?;
                Formula::and(l, self.formula(r, binders, position)?)
            }
            Formula::Or(l, r) => {
                let l = self.formula(l, binders, position)?;
                Formula::or(l, self.formula(r, binders, position)?)
            }
            Formula::Imp(l, r) => {
                let l = self.formula(l, binders, position)?;
                Formula::imp(l, self.formula(r, binders, position)?)
            }
            Formula::Iff(l, r) => {
                let l = self.formula(l, binders, position)?;
                Formula::iff(l, self.formula(r, binders, position)?)
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let is_forall = matches!(f, Formula::Forall(..));
                if v == self.x {
                    // x is shadowed below this point
                    *position += g.size();
                    f.clone()
                } else {
                    binders.push(Binder {
                        var: v.clone(),
                        symbol: if is_forall { '∀' } else { '∃' },
                        position: here,
                    });
                    let body = self.formula(g, binders, position);
                    binders.pop();
                    let body = body?;
                    if is_forall {
                        Formula::forall(v.clone(), body)
                    } else {
                        Formula::exists(v.clone(), body)
                    }
                }
            }
        })
    }

    fn term(&self, term: &Term, binders: &[Binder]) -> Result<Term, CaptureError> {
        match term {
            Term::Var(v) if v == self.x => {
                if let Some(b) = binders
                    .iter()
                    .rev()
                    .find(|b| self.term_vars.contains(&b.var))
                {
                    return Err(CaptureError {
                        binder: b.var.clone(),
                        quantifier: format!("{}{}", b.symbol, b.var),
                        position: b.position,
                    });
                }
                Ok(self.t.clone())
            }
            Term::Var(_) | Term::Const(_) => Ok(term.clone()),
            Term::App(name, args) => Ok(Term::App(
                name.clone(),
                args.iter()
                    .map(|a| self.term(a, binders))
                    .collect::<Result<_, _>>()?,
            )),
        }
    }
}

/// `t` is free for `x` in `f` when no free occurrence of `x` sits under a
/// quantifier binding a variable of `t`.
pub fn is_free_for(t: &Term, x: &str, f: &Formula) -> bool {
    let vars = t.vars();
    free_for(&vars, x, f, &mut Vec::new())
}

fn free_for(vars: &BTreeSet<String>, x: &str, f: &Formula, enclosing: &mut Vec<String>) -> bool {
    match f {
        Formula::Top | Formula::Bottom => true,
        Formula::Pred(_, args) => {
            !args.iter().any(|a| a.mentions_var(x)) || !enclosing.iter().any(|b| vars.contains(b))
        }
        Formula::Not(g) => free_for(vars, x, g, enclosing),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            free_for(vars, x, l, enclosing) && free_for(vars, x, r, enclosing)
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            if v == x {
                return true;
            }
            enclosing.push(v.clone());
            let ok = free_for(vars, x, g, enclosing);
            enclosing.pop();
            ok
        }
    }
}

/// Equality up to a consistent renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    let mut lb = Vec::new();
    let mut rb = Vec::new();
    alpha_formula(f, g, &mut lb, &mut rb)
}

fn alpha_formula(f: &Formula, g: &Formula, lb: &mut Vec<String>, rb: &mut Vec<String>) -> bool {
    match (f, g) {
        (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Pred(p, pa), Formula::Pred(q, qa)) => {
            p == q
                && pa.len() == qa.len()
                && pa.iter().zip(qa).all(|(a, b)| alpha_term(a, b, lb, rb))
        }
        (Formula::Not(a), Formula::Not(b)) => alpha_formula(a, b, lb, rb),
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d))
        | (Formula::Iff(a, b), Formula::Iff(c, d)) => {
            alpha_formula(a, c, lb, rb) && alpha_formula(b, d, lb, rb)
        }
        (Formula::Forall(v, a), Formula::Forall(w, b))
        | (Formula::Exists(v, a), Formula::Exists(w, b)) => {
            lb.push(v.clone());
            rb.push(w.clone());
            let ok = alpha_formula(a, b, lb, rb);
            lb.pop();
            rb.pop();
            ok
        }
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, lb: &[String], rb: &[String]) -> bool {
    match (a, b) {
        (Term::Var(v), Term::Var(w)) => {
            match (lb.iter().rposition(|x| x == v), rb.iter().rposition(|x| x == w)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => v == w,
                _ => false,
            }
        }
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, fa), Term::App(g, ga)) => {
            f == g
                && fa.len() == ga.len()
                && fa.iter().zip(ga).all(|(x, y)| alpha_term(x, y, lb, rb))
        }
        _ => false,
    }
}

/// Outcome of asking whether `target` is an instance `pattern[t/x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceMatch {
    /// No term makes the two agree.
    Mismatch,
    /// `target` is `pattern[t/x]`. `None` means `x` does not occur free in
    /// `pattern`, so any term works.
    Instance(Option<Term>),
    /// The shapes agree, but only by substituting a term whose variables
    /// are bound in `target`: the term is not free for `x`.
    Capture(Term),
}

/// Finds the term `t` with `pattern[t/x] = target`, reading the target term
/// off the positions where `x` occurs free. With `alpha` set, bound
/// variables may be renamed consistently; otherwise binders must coincide.
pub fn match_instance(pattern: &Formula, x: &str, target: &Formula, alpha: bool) -> InstanceMatch {
    let mut m = Matcher {
        x,
        alpha,
        binding: None,
        captured: false,
        pb: Vec::new(),
        tb: Vec::new(),
    };
    if !m.formula(pattern, target) {
        return InstanceMatch::Mismatch;
    }
    match (m.binding, m.captured) {
        (Some(t), true) => InstanceMatch::Capture(t),
        (binding, _) => InstanceMatch::Instance(binding),
    }
}

struct Matcher<'a> {
    x: &'a str,
    alpha: bool,
    binding: Option<Term>,
    captured: bool,
    pb: Vec<String>,
    tb: Vec<String>,
}

impl Matcher<'_> {
    fn formula(&mut self, p: &Formula, t: &Formula) -> bool {
        match (p, t) {
            (Formula::Top, Formula::Top) | (Formula::Bottom, Formula::Bottom) => true,
            (Formula::Pred(a, aa), Formula::Pred(b, ba)) => {
                a == b && aa.len() == ba.len() && aa.iter().zip(ba).all(|(x, y)| self.term(x, y))
            }
            (Formula::Not(a), Formula::Not(b)) => self.formula(a, b),
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Imp(a, b), Formula::Imp(c, d))
            | (Formula::Iff(a, b), Formula::Iff(c, d)) => self.formula(a, c) && self.formula(b, d),
            (Formula::Forall(v, a), Formula::Forall(w, b))
            | (Formula::Exists(v, a), Formula::Exists(w, b)) => {
                if !self.alpha && v != w {
                    return false;
                }
                self.pb.push(v.clone());
                self.tb.push(w.clone());
                let ok = self.formula(a, b);
                self.pb.pop();
                self.tb.pop();
                ok
            }
            _ => false,
        }
    }

    fn term(&mut self, p: &Term, t: &Term) -> bool {
        match p {
            Term::Var(v) => {
                if let Some(i) = self.pb.iter().rposition(|b| b == v) {
                    return matches!(t, Term::Var(w) if self.tb.iter().rposition(|b| b == w) == Some(i));
                }
                if v == self.x {
                    if t.vars().iter().any(|w| self.tb.contains(w)) {
                        self.captured = true;
                    }
                    return match &self.binding {
                        Some(b) => b == t,
                        None => {
                            self.binding = Some(t.clone());
                            true
                        }
                    };
                }
                matches!(t, Term::Var(w) if w == v && !self.tb.contains(w))
            }
            Term::Const(c) => matches!(t, Term::Const(d) if c == d),
            Term::App(f, fa) => match t {
                Term::App(g, ga) if f == g && fa.len() == ga.len() => {
                    fa.iter().zip(ga).all(|(a, b)| self.term(a, b))
                }
                _ => false,
            },
        }
    }
}
