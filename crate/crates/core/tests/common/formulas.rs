//! Random terms, formulas and structures over a small fixed vocabulary.

use natded::semantics::Structure;
use natded::syntax::{Formula, Signature, Term};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const CONSTANTS: [&str; 3] = ["a", "b", "c"];
pub const VARIABLES: [&str; 3] = ["x", "y", "z"];
pub const PREDICATES: [(&str, usize); 5] = [("A", 0), ("B", 0), ("P", 1), ("Q", 1), ("R", 2)];
pub const FUNCTIONS: [(&str, usize); 2] = [("f", 1), ("g", 2)];

pub fn signature() -> Signature {
    let mut sig = Signature::new();
    for (p, a) in PREDICATES {
        sig = sig.with_predicate(p, a);
    }
    for (g, a) in FUNCTIONS {
        sig = sig.with_function(g, a);
    }
    for c in CONSTANTS {
        sig = sig.with_constant(c);
    }
    sig
}

pub struct FormulaGen<'r> {
    pub rng: &'r mut StdRng,
    /// Allow variables that no quantifier binds.
    pub open: bool,
    pub functions: bool,
    pub constants: Vec<String>,
}

impl<'r> FormulaGen<'r> {
    pub fn new(rng: &'r mut StdRng) -> Self {
        FormulaGen {
            rng,
            open: false,
            functions: true,
            constants: CONSTANTS.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn term(&mut self, depth: usize, bound: &[String]) -> Term {
        let roll = self.rng.gen_range(0..10);
        if self.functions && depth > 0 && roll < 2 {
            let (g, arity) = *FUNCTIONS.choose(self.rng).unwrap();
            let args = (0..arity).map(|_| self.term(depth - 1, bound)).collect();
            return Term::app(g, args);
        }
        let vars: Vec<String> = if self.open {
            VARIABLES.iter().map(|v| v.to_string()).collect()
        } else {
            bound.to_vec()
        };
        if !vars.is_empty() && roll < 6 {
            Term::var(vars.choose(self.rng).unwrap().clone())
        } else {
            Term::constant(self.constants.choose(self.rng).unwrap().clone())
        }
    }

    pub fn atom(&mut self, bound: &[String]) -> Formula {
        match self.rng.gen_range(0..12) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => {
                let (p, arity) = *PREDICATES.choose(self.rng).unwrap();
                let args = (0..arity).map(|_| self.term(1, bound)).collect();
                Formula::pred(p, args)
            }
        }
    }

    /// A formula of height at most `depth`.
    pub fn formula(&mut self, depth: usize) -> Formula {
        self.formula_in(depth, &mut Vec::new())
    }

    fn formula_in(&mut self, depth: usize, bound: &mut Vec<String>) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.atom(bound);
        }
        match self.rng.gen_range(0..8) {
            0 => Formula::not(self.formula_in(depth - 1, bound)),
            1 => Formula::and(self.formula_in(depth - 1, bound), self.formula_in(depth - 1, bound)),
            2 => Formula::or(self.formula_in(depth - 1, bound), self.formula_in(depth - 1, bound)),
            3 => Formula::imp(self.formula_in(depth - 1, bound), self.formula_in(depth - 1, bound)),
            4 => Formula::iff(self.formula_in(depth - 1, bound), self.formula_in(depth - 1, bound)),
            k => {
                let x = VARIABLES.choose(self.rng).unwrap().to_string();
                bound.push(x.clone());
                let body = self.formula_in(depth - 1, bound);
                bound.pop();
                if k == 5 {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                }
            }
        }
    }
}

/// A structure over [`signature`] with random tables.
pub fn random_structure(rng: &mut StdRng, sig: &Signature, n: usize) -> Structure {
    let mut s = Structure::new(sig, n);
    for c in &sig.constants {
        s.set_constant(c, rng.gen_range(0..n)).unwrap();
    }
    for (g, &arity) in &sig.functions {
        for args in tuples(n, arity) {
            s.set_function(g, &args, rng.gen_range(0..n)).unwrap();
        }
    }
    for (p, &arity) in &sig.predicates {
        for args in tuples(n, arity) {
            s.set_predicate(p, &args, rng.gen_bool(0.5)).unwrap();
        }
    }
    s
}

/// All argument tuples of the given arity over `0..n`.
pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(VARIABLES.to_vec()).prop_map(Term::var),
        prop::sample::select(CONSTANTS.to_vec()).prop_map(Term::constant),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

/// Formulas of height at most 6 with possibly free variables.
pub fn formula_strategy() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        2 => prop::sample::select(vec!["A", "B"]).prop_map(Formula::atom),
        4 => (prop::sample::select(vec!["P", "Q"]), term_strategy())
            .prop_map(|(p, t)| Formula::pred(p, vec![t])),
        4 => (term_strategy(), term_strategy()).prop_map(|(s, t)| Formula::pred("R", vec![s, t])),
    ];
    atom.prop_recursive(6, 64, 2, |inner| {
        let var = prop::sample::select(VARIABLES.to_vec());
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::imp(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
            (var.clone(), inner.clone()).prop_map(|(x, b)| Formula::forall(x, b)),
            (var, inner).prop_map(|(x, b)| Formula::exists(x, b)),
        ]
    })
}

pub fn height(f: &Formula) -> usize {
    match f {
        Formula::Top | Formula::Bottom | Formula::Pred(..) => 0,
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => 1 + height(g),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            1 + height(l).max(height(r))
        }
    }
}
