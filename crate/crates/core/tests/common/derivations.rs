//! Random proof documents for soundness testing.
//!
//! The generator applies rules forward from random premises. Some steps are
//! deliberately careless: a witness that is not new, a generalized constant
//! that a premise mentions, a perturbed conclusion, or a random line with a
//! random rule. Whatever the checker accepts must be a valid sequent.

use natded::proofdoc::{
    Citation, Justification, LineKind, ProofDocument, ProofLine, RuleName,
};
use natded::syntax::{constants_of, substitute, Formula, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::formulas::FormulaGen;

pub struct Builder<'r> {
    rng: &'r mut StdRng,
    pub doc: ProofDocument,
    /// Innermost opener of each line, by index.
    scope: Vec<Option<usize>>,
    /// Open subproof openers, outermost first.
    open: Vec<usize>,
    /// Closed subproofs (start, end) with the opener enclosing them.
    closed: Vec<(usize, usize, Option<usize>)>,
    next_fresh: usize,
    /// Probability of a careless step.
    pub sloppiness: f64,
}

const BASE_CONSTANTS: [&str; 2] = ["a", "b"];

impl<'r> Builder<'r> {
    pub fn new(rng: &'r mut StdRng) -> Self {
        Builder {
            rng,
            doc: ProofDocument::new("random"),
            scope: Vec::new(),
            open: Vec::new(),
            closed: Vec::new(),
            next_fresh: 0,
            sloppiness: 0.15,
        }
    }

    fn depth(&self) -> usize {
        self.open.len()
    }

    fn next_number(&self) -> usize {
        self.doc.lines.len() + 1
    }

    fn push(&mut self, kind: LineKind, formula: Option<Formula>, j: Option<Justification>) {
        let number = self.next_number();
        let depth = self.depth() + usize::from(kind.opens_subproof());
        self.doc.lines.push(ProofLine {
            number,
            depth,
            kind: kind.clone(),
            formula,
            justification: j,
        });
        if kind.opens_subproof() {
            self.open.push(number);
        }
        self.scope.push(self.open.last().copied());
    }

    fn derive(&mut self, formula: Formula, rule: RuleName, cited: Vec<Citation>) {
        let formula = if self.rng.gen_bool(self.sloppiness / 3.0) {
            self.perturb(formula)
        } else {
            formula
        };
        self.push(LineKind::Derived, Some(formula), Some(Justification { rule, cited }));
    }

    fn sentence_gen(&mut self) -> FormulaGen<'_> {
        let mut g = FormulaGen::new(self.rng);
        g.functions = false;
        g.constants = BASE_CONSTANTS.iter().map(|c| c.to_string()).collect();
        g
    }

    fn random_sentence(&mut self, depth: usize) -> Formula {
        self.sentence_gen().formula(depth)
    }

    fn fresh_constant(&mut self) -> String {
        self.next_fresh += 1;
        format!("k{}", self.next_fresh)
    }

    /// Constants available for instantiation.
    fn constant_pool(&self) -> Vec<String> {
        let mut pool: Vec<String> = BASE_CONSTANTS.iter().map(|c| c.to_string()).collect();
        for line in &self.doc.lines {
            if let Some(f) = &line.formula {
                pool.extend(constants_of(f));
            }
            if let LineKind::BoxedConstant(c) = &line.kind {
                pool.push(c.clone());
            }
        }
        pool.sort();
        pool.dedup();
        pool
    }

    /// Accessible lines that carry a formula.
    fn accessible(&self) -> Vec<(usize, Formula)> {
        self.doc
            .lines
            .iter()
            .zip(&self.scope)
            .filter(|(_, s)| s.is_none_or(|o| self.open.contains(&o)))
            .filter_map(|(l, _)| l.formula.clone().map(|f| (l.number, f)))
            .collect()
    }

    fn pick(&mut self, lines: &[(usize, Formula)]) -> Option<(usize, Formula)> {
        lines.choose(self.rng).cloned()
    }

    fn pick_where(
        &mut self,
        pred: impl Fn(&Formula) -> bool,
    ) -> Option<(usize, Formula)> {
        let lines: Vec<_> = self.accessible().into_iter().filter(|(_, f)| pred(f)).collect();
        self.pick(&lines)
    }

    /// Small random damage to a formula.
    fn perturb(&mut self, f: Formula) -> Formula {
        let pool = self.constant_pool();
        match self.rng.gen_range(0..4) {
            0 => Formula::not(f),
            1 => match f {
                Formula::Not(g) => *g,
                Formula::Imp(a, b) => Formula::Imp(b, a),
                Formula::And(a, _) => *a,
                Formula::Or(a, b) => Formula::And(a, b),
                Formula::Forall(x, b) => Formula::Exists(x, b),
                Formula::Exists(x, b) => Formula::Forall(x, b),
                other => Formula::not(other),
            },
            2 => {
                let cs: Vec<String> = constants_of(&f).into_iter().collect();
                match (cs.choose(self.rng), pool.choose(self.rng)) {
                    (Some(from), Some(to)) => replace_constant(&f, from, &Term::constant(to.clone())),
                    _ => Formula::not(f),
                }
            }
            _ => Formula::and(f, self.random_sentence(1)),
        }
    }

    pub fn premises(&mut self, k: usize) {
        for _ in 0..k {
            let f = self.random_sentence(3);
            self.push(LineKind::Premise, Some(f), None);
        }
    }

    /// One random step. Returns false if nothing applied.
    pub fn step(&mut self) -> bool {
        let roll = self.rng.gen_range(0..100);
        match roll {
            0..=7 => self.open_assumption(),
            8..=10 => self.open_box(),
            11..=22 => self.close(),
            23..=27 => self.and_intro(),
            28..=32 => self.and_elim(),
            33..=36 => self.or_intro(),
            37..=42 => self.imp_elim(),
            43..=44 => self.not_elim(),
            45..=48 => self.bottom_intro(),
            49..=50 => self.reit(),
            51..=57 => self.forall_elim(),
            58..=63 => self.exists_intro(),
            64..=69 => self.exists_elim(),
            70..=75 => self.forall_intro(),
            76..=79 => self.rewrite(),
            80..=83 => self.iff_steps(),
            84..=88 => self.or_elim(),
            _ => self.junk(),
        }
    }

    fn open_assumption(&mut self) -> bool {
        let acc = self.accessible();
        let f = match self.rng.gen_range(0..4) {
            0 => match self.pick(&acc) {
                Some((_, f)) => Formula::not(f),
                None => self.random_sentence(2),
            },
            1 => {
                // a disjunct, for a later OrE
                let ors: Vec<_> = acc.iter().filter(|(_, f)| matches!(f, Formula::Or(..))).cloned().collect();
                match self.pick(&ors) {
                    Some((_, Formula::Or(l, r))) => {
                        if self.rng.gen_bool(0.5) {
                            *l
                        } else {
                            *r
                        }
                    }
                    _ => self.random_sentence(2),
                }
            }
            _ => self.random_sentence(2),
        };
        self.push(LineKind::Assumption, Some(f), None);
        true
    }

    fn open_box(&mut self) -> bool {
        let c = if self.rng.gen_bool(self.sloppiness) {
            self.constant_pool().choose(self.rng).cloned().unwrap_or_else(|| "a".into())
        } else {
            self.fresh_constant()
        };
        let f = if self.rng.gen_bool(0.4) {
            Some(Formula::pred(["P", "Q"].choose(self.rng).unwrap().to_string(), vec![Term::constant(c.clone())]))
        } else {
            None
        };
        self.push(LineKind::BoxedConstant(c), f, None);
        true
    }

    /// Discharges the innermost subproof.
    pub fn close(&mut self) -> bool {
        let Some(&start) = self.open.last() else {
            return false;
        };
        let own_depth = self.depth();
        let last_own = self
            .doc
            .lines
            .iter()
            .skip(start - 1)
            .rev()
            .find(|l| l.depth == own_depth)
            .cloned()
            .expect("opener");
        let opener = self.doc.lines[start - 1].clone();
        if last_own.formula.is_none() {
            // a bare box needs a line before it can close
            match self.pick(&self.accessible()) {
                Some((n, f)) => self.derive(f, RuleName::Reit, vec![Citation::Line(n)]),
                None => return false,
            }
            return self.close();
        }
        let end = self.next_number() - 1;
        let beta = last_own.formula.clone().unwrap();
        let closed_opener = self.open.pop().unwrap();
        self.closed.push((start, end, self.open.last().copied()));
        debug_assert_eq!(closed_opener, start);
        let range = vec![Citation::Range(start, end)];

        match &opener.kind {
            LineKind::BoxedConstant(c) => {
                let x = unused_variable(&beta, opener.formula.as_ref());
                let body = match &opener.formula {
                    Some(a) => Formula::imp(a.clone(), beta),
                    None => beta,
                };
                let general = Formula::forall(x.clone(), replace_constant(&body, c, &Term::var(x)));
                self.derive(general, RuleName::ForallI, range);
            }
            _ => {
                let alpha = opener.formula.clone().unwrap();
                if beta == Formula::Bottom {
                    match (&alpha, self.rng.gen_bool(0.5)) {
                        (Formula::Not(g), true) => {
                            let rule = if self.rng.gen_bool(0.5) { RuleName::IP } else { RuleName::NotI };
                            self.derive((**g).clone(), rule, range)
                        }
                        _ => self.derive(Formula::not(alpha), RuleName::NotI, range),
                    }
                } else {
                    self.derive(Formula::imp(alpha, beta), RuleName::ImpI, range);
                }
            }
        }
        true
    }

    fn and_intro(&mut self) -> bool {
        let acc = self.accessible();
        let (Some((i, a)), Some((j, b))) = (self.pick(&acc), self.pick(&acc)) else {
            return false;
        };
        self.derive(Formula::and(a, b), RuleName::AndI, vec![Citation::Line(i), Citation::Line(j)]);
        true
    }

    fn and_elim(&mut self) -> bool {
        let Some((n, f)) = self.pick_where(|f| matches!(f, Formula::And(..))) else {
            return false;
        };
        let nodes: Vec<Formula> = f.conjunct_nodes().into_iter().cloned().collect();
        let c = nodes.choose(self.rng).unwrap().clone();
        self.derive(c, RuleName::AndE, vec![Citation::Line(n)]);
        true
    }

    fn or_intro(&mut self) -> bool {
        let Some((n, f)) = self.pick(&self.accessible()) else {
            return false;
        };
        let other = self.random_sentence(1);
        let d = if self.rng.gen_bool(0.5) { Formula::or(f, other) } else { Formula::or(other, f) };
        self.derive(d, RuleName::OrI, vec![Citation::Line(n)]);
        true
    }

    fn imp_elim(&mut self) -> bool {
        let acc = self.accessible();
        let mut options = Vec::new();
        for (i, f) in &acc {
            if let Formula::Imp(a, b) = f {
                for (j, g) in &acc {
                    if g == a.as_ref() {
                        options.push((*i, *j, (**b).clone()));
                    }
                }
            }
        }
        let Some((i, j, b)) = options.choose(self.rng).cloned() else {
            // careless modus ponens on any implication
            let Some((i, Formula::Imp(_, b))) = self.pick_where(|f| matches!(f, Formula::Imp(..))) else {
                return false;
            };
            if !self.rng.gen_bool(self.sloppiness) {
                return false;
            }
            let Some((j, _)) = self.pick(&acc) else { return false };
            self.derive(*b, RuleName::ImpE, vec![Citation::Line(i), Citation::Line(j)]);
            return true;
        };
        let cited = if self.rng.gen_bool(0.5) {
            vec![Citation::Line(i), Citation::Line(j)]
        } else {
            vec![Citation::Line(j), Citation::Line(i)]
        };
        self.derive(b, RuleName::ImpE, cited);
        true
    }

    fn not_elim(&mut self) -> bool {
        let Some((n, Formula::Not(g))) =
            self.pick_where(|f| matches!(f, Formula::Not(g) if matches!(g.as_ref(), Formula::Not(_))))
        else {
            return false;
        };
        let Formula::Not(h) = *g else { unreachable!() };
        self.derive(*h, RuleName::NotE, vec![Citation::Line(n)]);
        true
    }

    fn bottom_intro(&mut self) -> bool {
        let acc = self.accessible();
        let mut options = Vec::new();
        for (i, f) in &acc {
            if let Formula::Not(g) = f {
                for (j, h) in &acc {
                    if h == g.as_ref() {
                        options.push((*j, *i));
                    }
                }
            }
        }
        let Some((j, i)) = options.choose(self.rng).copied() else {
            return false;
        };
        self.derive(Formula::Bottom, RuleName::BottomI, vec![Citation::Line(j), Citation::Line(i)]);
        true
    }

    fn reit(&mut self) -> bool {
        // sometimes reach into a closed subproof
        if self.rng.gen_bool(self.sloppiness) && !self.closed.is_empty() {
            let &(s, e, _) = self.closed.choose(self.rng).unwrap();
            let k = self.rng.gen_range(s..=e);
            if let Some(f) = self.doc.lines[k - 1].formula.clone() {
                self.derive(f, RuleName::Reit, vec![Citation::Line(k)]);
                return true;
            }
        }
        let Some((n, f)) = self.pick(&self.accessible()) else {
            return false;
        };
        self.derive(f, RuleName::Reit, vec![Citation::Line(n)]);
        true
    }

    fn random_closed_term(&mut self) -> Term {
        let pool = self.constant_pool();
        let c = Term::constant(pool.choose(self.rng).cloned().unwrap_or_else(|| "a".into()));
        match self.rng.gen_range(0..10) {
            0 => Term::app("f", vec![c]),
            1 if self.rng.gen_bool(self.sloppiness.min(1.0)) => {
                // a variable: only capture or a free variable can come of it
                Term::var(["x", "y", "z"].choose(self.rng).unwrap().to_string())
            }
            _ => c,
        }
    }

    fn forall_elim(&mut self) -> bool {
        let Some((n, Formula::Forall(x, body))) = self.pick_where(|f| matches!(f, Formula::Forall(..))) else {
            return false;
        };
        let t = self.random_closed_term();
        let inst = match substitute(&body, &x, &t) {
            Ok(f) if f.is_sentence() => f,
            _ => {
                // force the capture through, leaving the checker to refuse it
                let forced = naive_replace(&body, &x, &t);
                if !forced.is_sentence() {
                    return false;
                }
                forced
            }
        };
        self.derive(inst, RuleName::ForallE, vec![Citation::Line(n)]);
        true
    }

    fn exists_intro(&mut self) -> bool {
        let Some((n, f)) = self.pick(&self.accessible()) else {
            return false;
        };
        let cs: Vec<String> = constants_of(&f).into_iter().collect();
        let x = if self.rng.gen_bool(self.sloppiness) {
            ["x", "y", "z"].choose(self.rng).unwrap().to_string()
        } else {
            unused_variable(&f, None)
        };
        let body = match cs.choose(self.rng) {
            Some(c) if self.rng.gen_bool(0.8) => {
                if self.rng.gen_bool(0.7) {
                    replace_constant(&f, c, &Term::var(x.clone()))
                } else {
                    replace_first_constant(&f, c, &Term::var(x.clone()))
                }
            }
            _ => f,
        };
        let e = Formula::exists(x, body);
        if !e.is_sentence() {
            return false;
        }
        self.derive(e, RuleName::ExistsI, vec![Citation::Line(n)]);
        true
    }

    fn exists_elim(&mut self) -> bool {
        let Some((n, Formula::Exists(x, body))) = self.pick_where(|f| matches!(f, Formula::Exists(..))) else {
            return false;
        };
        let w = if self.rng.gen_bool(self.sloppiness) {
            self.constant_pool().choose(self.rng).cloned().unwrap_or_else(|| "a".into())
        } else {
            self.fresh_constant()
        };
        let Ok(inst) = substitute(&body, &x, &Term::constant(w)) else {
            return false;
        };
        self.derive(inst, RuleName::ExistsE, vec![Citation::Line(n)]);
        true
    }

    fn forall_intro(&mut self) -> bool {
        let Some((n, f)) = self.pick(&self.accessible()) else {
            return false;
        };
        let cs: Vec<String> = constants_of(&f).into_iter().collect();
        let x = unused_variable(&f, None);
        let body = match cs.choose(self.rng) {
            Some(c) => replace_constant(&f, c, &Term::var(x.clone())),
            None => f,
        };
        self.derive(Formula::forall(x, body), RuleName::ForallI, vec![Citation::Line(n)]);
        true
    }

    fn rewrite(&mut self) -> bool {
        let Some((n, f)) = self.pick(&self.accessible()) else {
            return false;
        };
        let (rule, out) = match &f {
            Formula::Not(g) => match g.as_ref() {
                Formula::Forall(x, b) => (RuleName::QN, Formula::exists(x, Formula::not((**b).clone()))),
                Formula::Exists(x, b) => (RuleName::QN, Formula::forall(x, Formula::not((**b).clone()))),
                Formula::Imp(a, b) => (RuleName::NegImp, Formula::and((**a).clone(), Formula::not((**b).clone()))),
                _ => return false,
            },
            Formula::Exists(x, b) | Formula::Forall(x, b) => match b.as_ref() {
                Formula::Not(h) => {
                    let q = if matches!(f, Formula::Exists(..)) {
                        Formula::forall(x, (**h).clone())
                    } else {
                        Formula::exists(x, (**h).clone())
                    };
                    (RuleName::QN, Formula::not(q))
                }
                _ => return false,
            },
            Formula::And(a, b) => match b.as_ref() {
                Formula::Not(h) => (RuleName::NegImp, Formula::not(Formula::imp((**a).clone(), (**h).clone()))),
                _ => return false,
            },
            _ => return false,
        };
        self.derive(out, rule, vec![Citation::Line(n)]);
        true
    }

    fn iff_steps(&mut self) -> bool {
        let acc = self.accessible();
        if let Some((n, Formula::Iff(l, r))) = self.pick_where(|f| matches!(f, Formula::Iff(..))) {
            let side = acc.iter().find(|(_, g)| g == l.as_ref() || g == r.as_ref()).cloned();
            match side {
                Some((m, g)) if self.rng.gen_bool(0.6) => {
                    let other = if g == *l { *r } else { *l };
                    self.derive(other, RuleName::IffE, vec![Citation::Line(n), Citation::Line(m)]);
                }
                _ => self.derive(Formula::imp(*l, *r), RuleName::IffE, vec![Citation::Line(n)]),
            }
            return true;
        }
        let mut options = Vec::new();
        for (i, f) in &acc {
            if let Formula::Imp(a, b) = f {
                for (j, g) in &acc {
                    if let Formula::Imp(c, d) = g {
                        if c == b && d == a {
                            options.push((*i, *j, (**a).clone(), (**b).clone()));
                        }
                    }
                }
            }
        }
        let Some((i, j, a, b)) = options.choose(self.rng).cloned() else {
            return false;
        };
        self.derive(Formula::iff(a, b), RuleName::IffI, vec![Citation::Line(i), Citation::Line(j)]);
        true
    }

    fn or_elim(&mut self) -> bool {
        let acc = self.accessible();
        let Some((d, Formula::Or(l, r))) = self.pick_where(|f| matches!(f, Formula::Or(..))) else {
            return false;
        };
        // implication-line cases
        for (i, f) in &acc {
            if let Formula::Imp(a, psi) = f {
                if a.as_ref() != l.as_ref() {
                    continue;
                }
                for (j, g) in &acc {
                    if let Formula::Imp(b, psi2) = g {
                        if b.as_ref() == r.as_ref() && psi2 == psi {
                            self.derive(
                                (**psi).clone(),
                                RuleName::OrE,
                                vec![Citation::Line(d), Citation::Line(*i), Citation::Line(*j)],
                            );
                            return true;
                        }
                    }
                }
            }
        }
        // subproof cases among closed, accessible subproofs
        let subs: Vec<(usize, usize, Formula, Formula)> = self
            .closed
            .iter()
            .filter(|(_, _, parent)| parent.is_none_or(|p| self.open.contains(&p)))
            .filter_map(|&(s, e, _)| {
                let opener = &self.doc.lines[s - 1];
                if opener.kind != LineKind::Assumption {
                    return None;
                }
                let last = self.doc.lines[s - 1..e].iter().rev().find(|x| x.depth == opener.depth)?;
                Some((s, e, opener.formula.clone()?, last.formula.clone()?))
            })
            .collect();
        for (s1, e1, a1, psi) in &subs {
            if a1 != l.as_ref() {
                continue;
            }
            for (s2, e2, a2, psi2) in &subs {
                if a2 == r.as_ref() && psi2 == psi {
                    self.derive(
                        psi.clone(),
                        RuleName::OrE,
                        vec![Citation::Line(d), Citation::Range(*s1, *e1), Citation::Range(*s2, *e2)],
                    );
                    return true;
                }
            }
        }
        false
    }

    fn junk(&mut self) -> bool {
        let n = self.next_number();
        if n <= 1 {
            return false;
        }
        let f = match self.pick(&self.accessible()) {
            Some((_, g)) if self.rng.gen_bool(0.5) => self.perturb(g),
            _ => self.random_sentence(2),
        };
        let rule = *RuleName::ALL.choose(self.rng).unwrap();
        let k = self.rng.gen_range(1..=3);
        let cited = (0..k)
            .map(|_| {
                if self.rng.gen_bool(0.2) && !self.closed.is_empty() {
                    let &(s, e, _) = self.closed.choose(self.rng).unwrap();
                    Citation::Range(s, e)
                } else {
                    Citation::Line(self.rng.gen_range(1..n))
                }
            })
            .collect();
        self.push(LineKind::Derived, Some(f), Some(Justification { rule, cited }));
        true
    }

    pub fn finish(mut self) -> ProofDocument {
        while !self.open.is_empty() {
            self.close();
        }
        self.doc
    }
}

/// A random document of roughly `steps` lines.
pub fn random_derivation(rng: &mut StdRng, steps: usize) -> ProofDocument {
    let premises = rng.gen_range(1..=3);
    let sloppiness = rng.gen_range(0.0..0.3);
    let mut b = Builder::new(rng);
    b.sloppiness = sloppiness;
    b.premises(premises);
    let mut tries = 0;
    while b.doc.lines.len() < premises + steps && tries < steps * 10 {
        b.step();
        tries += 1;
    }
    b.finish()
}

pub fn unused_variable(f: &Formula, g: Option<&Formula>) -> String {
    for v in ["x", "y", "z", "u", "v", "w"] {
        if !mentions_var(f, v) && g.is_none_or(|g| !mentions_var(g, v)) {
            return v.to_string();
        }
    }
    "w9".to_string()
}

fn mentions_var(f: &Formula, v: &str) -> bool {
    fn term(t: &Term, v: &str) -> bool {
        match t {
            Term::Var(x) => x == v,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| term(a, v)),
        }
    }
    match f {
        Formula::Top | Formula::Bottom => false,
        Formula::Pred(_, args) => args.iter().any(|a| term(a, v)),
        Formula::Not(g) => mentions_var(g, v),
        Formula::Forall(x, g) | Formula::Exists(x, g) => x == v || mentions_var(g, v),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            mentions_var(l, v) || mentions_var(r, v)
        }
    }
}

/// Replaces every occurrence of constant `c` by `t`, with no regard for
/// binders.
pub fn replace_constant(f: &Formula, c: &str, t: &Term) -> Formula {
    map_terms(f, &mut |s| replace_in_term(s, c, t, &mut usize::MAX.clone()))
}

fn replace_first_constant(f: &Formula, c: &str, t: &Term) -> Formula {
    let mut budget = 1;
    map_terms(f, &mut |s| replace_in_term(s, c, t, &mut budget))
}

fn replace_in_term(s: &Term, c: &str, t: &Term, budget: &mut usize) -> Term {
    match s {
        Term::Const(k) if k == c && *budget > 0 => {
            *budget -= 1;
            t.clone()
        }
        Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| replace_in_term(a, c, t, budget)).collect()),
        other => other.clone(),
    }
}

/// Substitution for free `x` that ignores capture.
pub fn naive_replace(f: &Formula, x: &str, t: &Term) -> Formula {
    fn term(s: &Term, x: &str, t: &Term) -> Term {
        match s {
            Term::Var(v) if v == x => t.clone(),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(a, x, t)).collect()),
            other => other.clone(),
        }
    }
    match f {
        Formula::Forall(y, _) | Formula::Exists(y, _) if y == x => f.clone(),
        Formula::Forall(y, g) => Formula::forall(y, naive_replace(g, x, t)),
        Formula::Exists(y, g) => Formula::exists(y, naive_replace(g, x, t)),
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| term(a, x, t)).collect()),
        Formula::Not(g) => Formula::not(naive_replace(g, x, t)),
        Formula::And(l, r) => Formula::and(naive_replace(l, x, t), naive_replace(r, x, t)),
        Formula::Or(l, r) => Formula::or(naive_replace(l, x, t), naive_replace(r, x, t)),
        Formula::Imp(l, r) => Formula::imp(naive_replace(l, x, t), naive_replace(r, x, t)),
        Formula::Iff(l, r) => Formula::iff(naive_replace(l, x, t), naive_replace(r, x, t)),
        other => other.clone(),
    }
}

fn map_terms(f: &Formula, m: &mut impl FnMut(&Term) -> Term) -> Formula {
    match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(&mut *m).collect()),
        Formula::Not(g) => Formula::not(map_terms(g, m)),
        Formula::Forall(x, g) => Formula::forall(x, map_terms(g, m)),
        Formula::Exists(x, g) => Formula::exists(x, map_terms(g, m)),
        Formula::And(l, r) => Formula::and(map_terms(l, m), map_terms(r, m)),
        Formula::Or(l, r) => Formula::or(map_terms(l, m), map_terms(r, m)),
        Formula::Imp(l, r) => Formula::imp(map_terms(l, m), map_terms(r, m)),
        Formula::Iff(l, r) => Formula::iff(map_terms(l, m), map_terms(r, m)),
    }
}

/// Random edits of an existing document: a formula, a citation, a rule or
/// a depth changes. The result may not even be well formed.
pub fn mutate(rng: &mut StdRng, doc: &ProofDocument) -> ProofDocument {
    let mut out = doc.clone();
    let edits = rng.gen_range(1..=2);
    for _ in 0..edits {
        let i = rng.gen_range(0..out.lines.len());
        let pool: Vec<String> = {
            let mut p: Vec<String> = out
                .lines
                .iter()
                .filter_map(|l| l.formula.as_ref())
                .flat_map(constants_of)
                .collect();
            p.extend(["a", "b", "c"].map(String::from));
            p.sort();
            p.dedup();
            p
        };
        let n_lines = out.lines.len();
        let line = &mut out.lines[i];
        match rng.gen_range(0..5) {
            0 => {
                if let Some(f) = &line.formula {
                    let cs: Vec<String> = constants_of(f).into_iter().collect();
                    if let (Some(from), Some(to)) = (cs.choose(rng), pool.choose(rng)) {
                        line.formula = Some(replace_constant(f, from, &Term::constant(to.clone())));
                    }
                }
            }
            1 => {
                if let Some(j) = &mut line.justification {
                    if let Some(c) = j.cited.choose_mut(rng) {
                        *c = match *c {
                            Citation::Line(_) => Citation::Line(rng.gen_range(1..=n_lines)),
                            Citation::Range(a, b) => {
                                let shift = rng.gen_range(0..=2);
                                Citation::Range(a, (b + shift).max(a))
                            }
                        };
                    }
                }
            }
            2 => {
                if let Some(j) = &mut line.justification {
                    j.rule = *RuleName::ALL.choose(rng).unwrap();
                }
            }
            3 => {
                if let Some(f) = line.formula.take() {
                    line.formula = Some(match f {
                        Formula::Not(g) => *g,
                        Formula::Forall(x, b) => Formula::Exists(x, b),
                        Formula::Exists(x, b) => Formula::Forall(x, b),
                        Formula::Imp(a, b) => Formula::Imp(b, a),
                        other => Formula::not(other),
                    });
                }
            }
            _ => {
                if line.kind == LineKind::Derived {
                    line.depth = line.depth.saturating_sub(1);
                }
            }
        }
    }
    out
}
