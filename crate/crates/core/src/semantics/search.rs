use std::sync::Arc;

use rayon::prelude::*;

use crate::syntax::{free_vars, Formula, Signature, Term};

use super::enumerate::{decode_into, structure_at, structure_count};
use super::structure::{Layout, Structure};
use super::{evaluate, Assignment, SemanticsError, Verdict};

pub const DEFAULT_MAX_STRUCTURES: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse searches over more structures than this, summed over sizes.
    pub max_structures: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_structures: DEFAULT_MAX_STRUCTURES,
        }
    }
}

pub fn entails(
    premises: &[Formula],
    conclusion: &Formula,
    max_n: usize,
) -> Result<Verdict, SemanticsError> {
    entails_with(premises, conclusion, max_n, &SearchOptions::default())
}

pub fn find_countermodel(
    premises: &[Formula],
    conclusion: &Formula,
    max_n: usize,
) -> Result<Option<Structure>, SemanticsError> {
    Ok(match entails(premises, conclusion, max_n)? {
        Verdict::Countermodel { structure } => Some(structure),
        Verdict::ValidUpTo { .. } => None,
    })
}

/// Scans sizes `1..=max_n` and returns the first structure, in enumeration
/// order, that makes every premise true and the conclusion false.
pub fn entails_with(
    premises: &[Formula],
    conclusion: &Formula,
    max_n: usize,
    opts: &SearchOptions,
) -> Result<Verdict, SemanticsError> {
    assert!(max_n >= 1, "domains are non-empty");
    let all: Vec<&Formula> = premises.iter().chain([conclusion]).collect();
    for f in &all {
        if !f.is_sentence() {
            return Err(SemanticsError::OpenFormula(f.to_string()));
        }
    }
    let sig = Signature::infer(all.iter().copied())?;
    let layout = Arc::new(Layout::new(&sig));

    let limit = opts.max_structures;
    let mut total: u128 = 0;
    let mut counts = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let count = structure_count(&layout, n)
            .and_then(|c| total.checked_add(c).map(|t| (c, t)));
        match count {
            Some((c, t)) if t <= limit => {
                total = t;
                counts.push(c);
            }
            Some((_, t)) => return Err(SemanticsError::Resource { count: t, limit }),
            None => return Err(SemanticsError::Resource { count: u128::MAX, limit }),
        }
    }

    let premises_c: Vec<CFormula> = premises.iter().map(|p| compile(&layout, p)).collect();
    let conclusion_c = compile(&layout, conclusion);

    for (n, count) in (1..=max_n).zip(counts) {
        let count = usize::try_from(count).expect("bounded by the structure limit");
        let found = (0..count)
            .into_par_iter()
            .map_init(
                || (Structure::with_layout(Arc::clone(&layout), n), Vec::new()),
                |(s, env), i| {
                    decode_into(s, i as u128);
                    premises_c.iter().all(|p| p.eval(s, env)) && !conclusion_c.eval(s, env)
                },
            )
            .position_first(|hit| hit);
        if let Some(i) = found {
            let structure = structure_at(&layout, n, i as u128);
            let a = Assignment::new();
            let confirmed = premises
                .iter()
                .all(|p| evaluate(&structure, &a, p) == Ok(true))
                && evaluate(&structure, &a, conclusion) == Ok(false);
            assert!(confirmed, "countermodel failed the reference evaluator:\n{structure}");
            return Ok(Verdict::Countermodel { structure });
        }
    }
    Ok(Verdict::ValidUpTo { max_domain: max_n })
}

/// A formula with symbols resolved to table indices and variables to
/// positions on an environment stack.
enum CTerm {
    Var(usize),
    Const(usize),
    App(usize, Vec<CTerm>),
}

enum CFormula {
    Top,
    Bottom,
    Pred(usize, Vec<CTerm>),
    Not(Box<CFormula>),
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Imp(Box<CFormula>, Box<CFormula>),
    Iff(Box<CFormula>, Box<CFormula>),
    Forall(Box<CFormula>),
    Exists(Box<CFormula>),
}

fn compile(layout: &Layout, f: &Formula) -> CFormula {
    debug_assert!(free_vars(f).is_empty());
    compile_in(layout, f, &mut Vec::new())
}

fn compile_in<'a>(layout: &Layout, f: &'a Formula, bound: &mut Vec<&'a str>) -> CFormula {
    let bin = |l, r, bound: &mut Vec<&'a str>| {
        (
            Box::new(compile_in(layout, l, bound)),
            Box::new(compile_in(layout, r, bound)),
        )
    };
    match f {
        Formula::Top => CFormula::Top,
        Formula::Bottom => CFormula::Bottom,
        Formula::Pred(p, args) => CFormula::Pred(
            layout.predicate(p).expect("signature inferred from the formula"),
            args.iter().map(|t| compile_term(layout, t, bound)).collect(),
        ),
        Formula::Not(g) => CFormula::Not(Box::new(compile_in(layout, g, bound))),
        Formula::And(l, r) => {
            let (l, r) = bin(l, r, bound);
            CFormula::And(l, r)
        }
        Formula::Or(l, r) => {
            let (l, r) = bin(l, r, bound);
            CFormula::Or(l, r)
        }
        Formula::Imp(l, r) => {
            let (l, r) = bin(l, r, bound);
            CFormula::Imp(l, r)
        }
        Formula::Iff(l, r) => {
            let (l, r) = bin(l, r, bound);
            CFormula::Iff(l, r)
        }
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            bound.push(x);
            let body = Box::new(compile_in(layout, g, bound));
            bound.pop();
            if matches!(f, Formula::Forall(..)) {
                CFormula::Forall(body)
            } else {
                CFormula::Exists(body)
            }
        }
    }
}

fn compile_term(layout: &Layout, t: &Term, bound: &[&str]) -> CTerm {
    match t {
        Term::Var(v) => CTerm::Var(
            bound
                .iter()
                .rposition(|b| b == v)
                .expect("sentences have no free variables"),
        ),
        Term::Const(c) => CTerm::Const(layout.constant(c).expect("signature inferred")),
        Term::App(g, args) => CTerm::App(
            layout.function(g).expect("signature inferred"),
            args.iter().map(|a| compile_term(layout, a, bound)).collect(),
        ),
    }
}

impl CTerm {
    fn eval(&self, s: &Structure, env: &[usize]) -> usize {
        match self {
            CTerm::Var(i) => env[*i],
            CTerm::Const(c) => s.constants[*c],
            CTerm::App(g, args) => s.functions[*g][slot(s, args, env)],
        }
    }
}

fn slot(s: &Structure, args: &[CTerm], env: &[usize]) -> usize {
    args.iter()
        .rev()
        .fold(0, |acc, t| acc * s.domain_size + t.eval(s, env))
}

impl CFormula {
    fn eval(&self, s: &Structure, env: &mut Vec<usize>) -> bool {
        match self {
            CFormula::Top => true,
            CFormula::Bottom => false,
            CFormula::Pred(p, args) => s.predicates[*p][slot(s, args, env)],
            CFormula::Not(g) => !g.eval(s, env),
            CFormula::And(l, r) => l.eval(s, env) && r.eval(s, env),
            CFormula::Or(l, r) => l.eval(s, env) || r.eval(s, env),
            CFormula::Imp(l, r) => !l.eval(s, env) || r.eval(s, env),
            CFormula::Iff(l, r) => l.eval(s, env) == r.eval(s, env),
            CFormula::Forall(g) | CFormula::Exists(g) => {
                let universal = matches!(self, CFormula::Forall(_));
                env.push(0);
                let mut result = universal;
                for e in 0..s.domain_size {
                    *env.last_mut().expect("pushed") = e;
                    if g.eval(s, env) != universal {
                        result = !universal;
                        break;
                    }
                }
                env.pop();
                result
            }
        }
    }
}
