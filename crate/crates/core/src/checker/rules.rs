use crate::proofdoc::{Code, Diagnostic, ProofDocument, RuleName, Scopes};
use crate::syntax::{constants_of, match_instance, substitute, Formula, InstanceMatch, Term};

use super::context::{Ctx, Item, Opener};
use super::CheckConfig;

/// Outcome of a shape check.
enum Verdict {
    Ok,
    /// Accepted, but as `IP` rather than the rule written on the line.
    Relabeled,
    Fail(Diagnostic),
}

type Rule = RuleName;

pub(super) fn check(doc: &ProofDocument, number: usize, cfg: &CheckConfig) -> Vec<Diagnostic> {
    let line = doc.line(number).expect("line exists");
    let j = line.justification.as_ref().expect("derived line has a justification");
    let conclusion = line.formula.as_ref().expect("derived line has a formula");
    let ctx = Ctx {
        doc,
        scopes: Scopes::build(doc),
        number,
        rule: j.rule,
        conclusion,
        alpha: cfg.alpha_matching,
    };

    let mut diags = Vec::new();
    if cfg.strict && j.rule.is_derived() {
        diags.push(ctx.diag(
            Code::DerivedInStrict,
            format!("{} is a derived rule and is not allowed in strict mode", j.rule),
        ));
    }
    let Some(items) = ctx.resolve(&j.cited, &mut diags) else {
        return diags;
    };
    if let Err(d) = arity(&ctx, &items) {
        diags.push(d);
        return diags;
    }
    match validate(&ctx, &items) {
        Verdict::Ok => {}
        Verdict::Relabeled if cfg.strict => diags.push(ctx.diag(
            Code::DerivedInStrict,
            "NotI concludes a positive sentence here; that is indirect proof (IP), a derived rule",
        )),
        Verdict::Relabeled => diags.push(ctx.diag(
            Code::RuleRelabeled,
            "NotI concluding a positive sentence was read as IP",
        )),
        Verdict::Fail(d) => diags.push(d),
    }
    diags
}

#[derive(Clone, Copy, PartialEq)]
enum Want {
    Line,
    Sub,
    Either,
}

/// Number and kind of citations each rule takes.
fn arity(ctx: &Ctx<'_>, items: &[Item<'_>]) -> Result<(), Diagnostic> {
    use Want::*;
    let k = items.len();
    let (ok, expected): (bool, &str) = match ctx.rule {
        Rule::NotE | Rule::AndE | Rule::OrI | Rule::ForallE | Rule::ExistsI | Rule::ExistsE
        | Rule::Reit | Rule::QN | Rule::NegImp => (k == 1 && kinds(items, Line), "one line"),
        Rule::ImpE | Rule::BottomI => (k == 2 && kinds(items, Line), "two lines"),
        Rule::AndI => (k >= 2 && kinds(items, Line), "at least two lines"),
        Rule::NotI | Rule::ImpI | Rule::IP => (k == 1 && kinds(items, Sub), "one subproof"),
        Rule::ForallI => (k == 1, "one line or one subproof"),
        Rule::IffI => (k == 2 && kinds(items, Either), "two lines or subproofs"),
        Rule::IffE => ((1..=2).contains(&k) && kinds(items, Line), "one or two lines"),
        Rule::OrE => (
            k >= 2 && items.iter().any(|i| matches!(i, Item::Line(..))),
            "a disjunction and one case per disjunct",
        ),
    };
    if ok {
        Ok(())
    } else {
        let got: Vec<String> = items.iter().map(Item::label).collect();
        Err(ctx
            .diag(
                Code::BadCitation,
                format!(
                    "{} takes {expected}, got {}",
                    ctx.rule,
                    if got.is_empty() { "nothing".to_string() } else { got.join(", ") }
                ),
            )
            .with_related(items.iter().map(Item::first_line)))
    }
}

fn kinds(items: &[Item<'_>], want: Want) -> bool {
    items.iter().all(|i| {
        matches!(
            (i, want),
            (_, Want::Either) | (Item::Line(..), Want::Line) | (Item::Sub { .. }, Want::Sub)
        )
    })
}

fn validate(ctx: &Ctx<'_>, items: &[Item<'_>]) -> Verdict {
    let c = ctx.conclusion;
    let related: Vec<usize> = items.iter().map(Item::first_line).collect();
    let mismatch = |msg: String| Verdict::Fail(ctx.diag(Code::RuleMismatch, msg).with_related(related.clone()));
    let line = |i: usize| match items[i] {
        Item::Line(_, f) => f,
        Item::Sub { .. } => unreachable!("arity checked"),
    };

    match ctx.rule {
        Rule::Reit => {
            if ctx.eq(line(0), c) {
                Verdict::Ok
            } else {
                mismatch(format!("{c} differs from the cited {}", line(0)))
            }
        }
        Rule::NotE => match line(0) {
            Formula::Not(g) => match g.as_ref() {
                Formula::Not(h) if ctx.eq(h, c) => Verdict::Ok,
                _ => mismatch(format!("NotE needs ¬¬{c}, the cited line is {}", line(0))),
            },
            f => mismatch(format!("NotE needs a double negation, the cited line is {f}")),
        },
        Rule::AndI => {
            let cited: Vec<&Formula> = (0..items.len()).map(line).collect();
            let nested = cited[1..]
                .iter()
                .fold(cited[0].clone(), |acc, f| Formula::and(acc, (*f).clone()));
            let flat_cited: Vec<&Formula> = cited.iter().flat_map(|f| f.flatten_and()).collect();
            let flat_concl = c.flatten_and();
            let flat_ok = flat_cited.len() == flat_concl.len()
                && flat_cited.iter().zip(&flat_concl).all(|(a, b)| ctx.eq(a, b));
            if ctx.eq(&nested, c) || flat_ok {
                Verdict::Ok
            } else {
                mismatch(format!("{c} is not the conjunction of the cited lines ({nested})"))
            }
        }
        Rule::AndE => {
            if line(0).conjunct_nodes().iter().any(|f| ctx.eq(f, c)) {
                Verdict::Ok
            } else {
                mismatch(format!("{c} is not a conjunct of {}", line(0)))
            }
        }
        Rule::OrI => {
            if c.disjunct_nodes().iter().any(|f| ctx.eq(f, line(0))) {
                Verdict::Ok
            } else {
                mismatch(format!("{} is not a disjunct of {c}", line(0)))
            }
        }
        Rule::OrE => or_elim(ctx, items).map_or_else(mismatch, |()| Verdict::Ok),
        Rule::ImpI => {
            let (a, b) = match subproof_parts(ctx, &items[0]) {
                Ok(p) => p,
                Err(v) => return v,
            };
            match c {
                Formula::Imp(l, r) if ctx.eq(l, a) && ctx.eq(r, b) => Verdict::Ok,
                _ => mismatch(format!("the subproof shows {a} → {b}, not {c}")),
            }
        }
        Rule::ImpE => {
            for (i, j) in [(0, 1), (1, 0)] {
                if let Formula::Imp(a, b) = line(i) {
                    if ctx.eq(a, line(j)) && ctx.eq(b, c) {
                        return Verdict::Ok;
                    }
                }
            }
            mismatch(format!(
                "ImpE needs φ → {c} and φ; cited {} and {}",
                line(0),
                line(1)
            ))
        }
        Rule::IffI => {
            let Formula::Iff(l, r) = c else {
                return mismatch(format!("IffI concludes a biconditional, not {c}"));
            };
            let mut implications = Vec::new();
            for item in items {
                match *item {
                    Item::Line(_, Formula::Imp(a, b)) => implications.push((a.as_ref(), b.as_ref())),
                    Item::Line(_, f) => {
                        return mismatch(format!("IffI needs implications, {f} is not one"))
                    }
                    Item::Sub { .. } => match subproof_parts(ctx, item) {
                        Ok(p) => implications.push(p),
                        Err(v) => return v,
                    },
                }
            }
            let fits = |(a, b): (&Formula, &Formula), x: &Formula, y: &Formula| {
                ctx.eq(a, x) && ctx.eq(b, y)
            };
            let (p, q) = (implications[0], implications[1]);
            if (fits(p, l, r) && fits(q, r, l)) || (fits(p, r, l) && fits(q, l, r)) {
                Verdict::Ok
            } else {
                mismatch(format!("the cited items do not give both directions of {c}"))
            }
        }
        Rule::IffE => {
            if items.len() == 1 {
                if let Formula::Iff(l, r) = line(0) {
                    let forward = Formula::imp((**l).clone(), (**r).clone());
                    let backward = Formula::imp((**r).clone(), (**l).clone());
                    if ctx.eq(&forward, c) || ctx.eq(&backward, c) {
                        return Verdict::Ok;
                    }
                }
                return mismatch(format!("{c} is not one direction of {}", line(0)));
            }
            for (i, j) in [(0, 1), (1, 0)] {
                if let Formula::Iff(l, r) = line(i) {
                    let side = line(j);
                    if (ctx.eq(l, side) && ctx.eq(r, c)) || (ctx.eq(r, side) && ctx.eq(l, c)) {
                        return Verdict::Ok;
                    }
                }
            }
            mismatch(format!(
                "IffE needs φ ↔ ψ and one side; cited {} and {}",
                line(0),
                line(1)
            ))
        }
        Rule::ForallE => {
            let Formula::Forall(x, body) = line(0) else {
                return mismatch(format!("ForallE needs a universal, the cited line is {}", line(0)));
            };
            match match_instance(body, x, c, ctx.alpha) {
                InstanceMatch::Instance(_) => Verdict::Ok,
                InstanceMatch::Capture(t) => Verdict::Fail(
                    ctx.diag(
                        Code::NotFreeFor,
                        format!("{t} is not free for {x} in {body}: a variable of {t} would be captured"),
                    )
                    .with_related(related.clone()),
                ),
                InstanceMatch::Mismatch => mismatch(format!("{c} is not an instance of {}", line(0))),
            }
        }
        Rule::ExistsI => {
            let Formula::Exists(x, body) = c else {
                return mismatch(format!("ExistsI concludes an existential, not {c}"));
            };
            match match_instance(body, x, line(0), ctx.alpha) {
                InstanceMatch::Instance(_) => Verdict::Ok,
                InstanceMatch::Capture(t) => Verdict::Fail(
                    ctx.diag(
                        Code::NotFreeFor,
                        format!("{t} is not free for {x} in {body}: a variable of {t} would be captured"),
                    )
                    .with_related(related.clone()),
                ),
                InstanceMatch::Mismatch => mismatch(format!("{} is not an instance of {c}", line(0))),
            }
        }
        Rule::ExistsE => exists_elim(ctx, line(0), &related),
        Rule::ForallI => match items[0] {
            Item::Line(_, phi) => forall_intro_direct(ctx, phi, &related),
            Item::Sub { .. } => forall_intro_boxed(ctx, &items[0], &related),
        },
        Rule::BottomI => {
            if *c != Formula::Bottom {
                return mismatch(format!("BottomI concludes ⊥, not {c}"));
            }
            for (i, j) in [(0, 1), (1, 0)] {
                if let Formula::Not(g) = line(j) {
                    if ctx.eq(g, line(i)) {
                        return Verdict::Ok;
                    }
                }
            }
            mismatch(format!("{} and {} do not contradict each other", line(0), line(1)))
        }
        Rule::NotI | Rule::IP => {
            let (a, b) = match subproof_parts(ctx, &items[0]) {
                Ok(p) => p,
                Err(v) => return v,
            };
            if *b != Formula::Bottom {
                return mismatch(format!("the subproof must end in ⊥, it ends in {b}"));
            }
            let negated = matches!(c, Formula::Not(g) if ctx.eq(g, a));
            let positive = matches!(a, Formula::Not(g) if ctx.eq(g, c));
            match ctx.rule {
                Rule::NotI if negated => Verdict::Ok,
                Rule::NotI if positive => Verdict::Relabeled,
                Rule::IP if positive => Verdict::Ok,
                Rule::NotI => mismatch(format!("assuming {a} and reaching ⊥ gives ¬{a}, not {c}")),
                _ => mismatch(format!("IP needs an assumption ¬{c}, the subproof assumes {a}")),
            }
        }
        Rule::QN => rewrite(ctx, line(0), quantifier_negation, "QN", &related),
        Rule::NegImp => rewrite(ctx, line(0), negated_conditional, "NegImp", &related),
    }
}

/// Assumption and result of a subproof opened by an ordinary assumption.
fn subproof_parts<'a>(
    ctx: &Ctx<'_>,
    item: &Item<'a>,
) -> Result<(&'a Formula, &'a Formula), Verdict> {
    let Item::Sub { start, end, opener, result } = *item else {
        unreachable!("arity checked");
    };
    let fail = |msg: String| Verdict::Fail(ctx.diag(Code::RuleMismatch, msg).with_related([start]));
    match (opener, result) {
        (Opener::Assumption(a), Some(b)) => Ok((a, b)),
        (Opener::Boxed(c, _), _) => Err(fail(format!(
            "subproof {start}-{end} introduces the constant {c}; only ForallI discharges it"
        ))),
        (_, None) => Err(fail(format!("subproof {start}-{end} has no conclusion"))),
    }
}

fn or_elim(ctx: &Ctx<'_>, items: &[Item<'_>]) -> Result<(), String> {
    let c = ctx.conclusion;
    let mut best = format!("OrE needs a disjunction among the cited lines to conclude {c}");
    for (major_idx, major) in items.iter().enumerate() {
        let Item::Line(_, major @ Formula::Or(..)) = *major else {
            continue;
        };
        let mut cases: Vec<&Formula> = Vec::new();
        let mut problem = None;
        for (i, item) in items.iter().enumerate() {
            if i == major_idx {
                continue;
            }
            let (ante, cons) = match *item {
                Item::Line(_, Formula::Imp(a, b)) => (a.as_ref(), b.as_ref()),
                Item::Line(n, f) => {
                    problem = Some(format!("case at line {n} is {f}, not an implication"));
                    break;
                }
                Item::Sub { start, end, opener, result } => match (opener, result) {
                    (Opener::Assumption(a), Some(b)) => (a, b),
                    _ => {
                        problem = Some(format!("subproof {start}-{end} is not an ordinary case"));
                        break;
                    }
                },
            };
            if !ctx.eq(cons, c) {
                problem = Some(format!("a case ends in {cons}, not {c}"));
                break;
            }
            cases.push(ante);
        }
        if let Some(p) = problem {
            best = p;
            continue;
        }
        if covered(ctx, major, &cases) {
            return Ok(());
        }
        best = format!("the cases do not cover every disjunct of {major}");
    }
    Err(best)
}

fn covered(ctx: &Ctx<'_>, d: &Formula, cases: &[&Formula]) -> bool {
    cases.iter().any(|a| ctx.eq(a, d))
        || matches!(d, Formula::Or(l, r) if covered(ctx, l, cases) && covered(ctx, r, cases))
}

fn freshness(ctx: &Ctx<'_>, msg: String, related: impl IntoIterator<Item = usize>) -> Verdict {
    Verdict::Fail(ctx.diag(Code::Freshness, msg).with_related(related))
}

fn exists_elim(ctx: &Ctx<'_>, cited: &Formula, related: &[usize]) -> Verdict {
    let c = ctx.conclusion;
    let mismatch = |msg: String| {
        Verdict::Fail(ctx.diag(Code::RuleMismatch, msg).with_related(related.to_vec()))
    };
    let Formula::Exists(x, body) = cited else {
        return mismatch(format!("ExistsE needs an existential, the cited line is {cited}"));
    };
    match match_instance(body, x, c, ctx.alpha) {
        InstanceMatch::Instance(None) => Verdict::Ok,
        InstanceMatch::Instance(Some(Term::Const(w))) => {
            match ctx.occurs_before(&w, ctx.number) {
                Some(k) => freshness(
                    ctx,
                    format!("the witness {w} must be new, but it already occurs on line {k}"),
                    [k],
                ),
                None => Verdict::Ok,
            }
        }
        InstanceMatch::Instance(Some(t)) | InstanceMatch::Capture(t) => {
            mismatch(format!("the witness must be a new constant, not {t}"))
        }
        InstanceMatch::Mismatch => mismatch(format!("{c} is not an instance of {cited}")),
    }
}

fn forall_intro_direct(ctx: &Ctx<'_>, phi: &Formula, related: &[usize]) -> Verdict {
    let c = ctx.conclusion;
    let mismatch = |msg: String| {
        Verdict::Fail(ctx.diag(Code::RuleMismatch, msg).with_related(related.to_vec()))
    };
    let Formula::Forall(x, psi) = c else {
        return mismatch(format!("ForallI concludes a universal, not {c}"));
    };
    let constant = match match_instance(psi, x, phi, ctx.alpha) {
        InstanceMatch::Instance(None) => return Verdict::Ok,
        InstanceMatch::Instance(Some(Term::Const(k))) => k,
        InstanceMatch::Instance(Some(t)) | InstanceMatch::Capture(t) => {
            return mismatch(format!("ForallI generalizes a constant, not {t}"))
        }
        InstanceMatch::Mismatch => return mismatch(format!("{phi} is not an instance of {c}")),
    };
    let k = constant.as_str();

    if constants_of(c).contains(k) {
        return freshness(ctx, format!("{k} still occurs in the conclusion {c}"), []);
    }
    if let Some(p) = ctx
        .doc
        .lines
        .iter()
        .take_while(|l| l.kind == crate::proofdoc::LineKind::Premise)
        .find(|l| l.formula.as_ref().is_some_and(|f| constants_of(f).contains(k)))
    {
        return freshness(ctx, format!("{k} occurs in the premise on line {}", p.number), [p.number]);
    }
    for sub in ctx.scopes.open_at(ctx.number) {
        let opener = ctx.doc.line(sub.start).expect("opener exists");
        if opener.formula.as_ref().is_some_and(|f| constants_of(f).contains(k)) {
            return freshness(
                ctx,
                format!("{k} occurs in the open assumption on line {}", sub.start),
                [sub.start],
            );
        }
    }
    let witnesses = ctx.exists_witnesses();
    if let Some((_, line)) = witnesses.iter().find(|(w, _)| w == k) {
        return freshness(
            ctx,
            format!("{k} was introduced by ExistsE on line {line} and names one particular object"),
            [*line],
        );
    }
    let first = ctx.first_occurrence(k).unwrap_or(ctx.number);
    let phi_constants = constants_of(phi);
    if let Some((w, line)) = witnesses
        .iter()
        .find(|(w, line)| *line > first && phi_constants.contains(w))
    {
        return freshness(
            ctx,
            format!("{phi} mentions {w}, which ExistsE chose on line {line} after {k} appeared"),
            [*line],
        );
    }
    Verdict::Ok
}

fn forall_intro_boxed(ctx: &Ctx<'_>, item: &Item<'_>, related: &[usize]) -> Verdict {
    let c = ctx.conclusion;
    let mismatch = |msg: String| {
        Verdict::Fail(ctx.diag(Code::RuleMismatch, msg).with_related(related.to_vec()))
    };
    let Item::Sub { start, end, opener, result } = *item else {
        unreachable!("caller matched a subproof");
    };
    let Opener::Boxed(k, assumption) = opener else {
        return mismatch(format!("subproof {start}-{end} does not introduce a constant"));
    };
    let Formula::Forall(x, psi) = c else {
        return mismatch(format!("ForallI concludes a universal, not {c}"));
    };
    let Some(beta) = result else {
        return mismatch(format!("subproof {start}-{end} has no conclusion"));
    };
    let instance = match substitute(psi, x, &Term::constant(k)) {
        Ok(f) => f,
        Err(e) => return mismatch(format!("cannot instantiate {c} with {k}: {e}")),
    };
    let expected = match assumption {
        None => beta.clone(),
        Some(a) => Formula::imp(a.clone(), beta.clone()),
    };
    if !ctx.eq(&instance, &expected) {
        return mismatch(format!("the subproof shows {expected}, which is not {c} instantiated at {k}"));
    }
    if constants_of(c).contains(k) {
        return freshness(ctx, format!("{k} still occurs in the conclusion {c}"), []);
    }
    if let Some(line) = ctx.occurs_before(k, start) {
        return freshness(
            ctx,
            format!("the boxed constant {k} must be new, but it occurs on line {line}"),
            [line],
        );
    }
    let beta_constants = constants_of(&expected);
    if let Some((w, line)) = ctx
        .exists_witnesses()
        .into_iter()
        .find(|(w, line)| (start..=end).contains(line) && beta_constants.contains(w))
    {
        return freshness(
            ctx,
            format!("{w} was chosen by ExistsE on line {line} inside the subproof"),
            [line],
        );
    }
    Verdict::Ok
}

fn rewrite(
    ctx: &Ctx<'_>,
    cited: &Formula,
    step: fn(&Formula) -> Option<Formula>,
    name: &str,
    related: &[usize],
) -> Verdict {
    match step(cited) {
        Some(f) if ctx.eq(&f, ctx.conclusion) => Verdict::Ok,
        Some(f) => Verdict::Fail(
            ctx.diag(
                Code::RuleMismatch,
                format!("{name} turns {cited} into {f}, not {}", ctx.conclusion),
            )
            .with_related(related.to_vec()),
        ),
        None => Verdict::Fail(
            ctx.diag(Code::RuleMismatch, format!("{name} does not apply to {cited}"))
                .with_related(related.to_vec()),
        ),
    }
}

/// ¬∀xφ ⇄ ∃x¬φ and ¬∃xφ ⇄ ∀x¬φ.
pub(crate) fn quantifier_negation(f: &Formula) -> Option<Formula> {
    match f {
        Formula::Not(g) => match g.as_ref() {
            Formula::Forall(x, b) => Some(Formula::exists(x, Formula::not((**b).clone()))),
            Formula::Exists(x, b) => Some(Formula::forall(x, Formula::not((**b).clone()))),
            _ => None,
        },
        Formula::Exists(x, b) => match b.as_ref() {
            Formula::Not(h) => Some(Formula::not(Formula::forall(x, (**h).clone()))),
            _ => None,
        },
        Formula::Forall(x, b) => match b.as_ref() {
            Formula::Not(h) => Some(Formula::not(Formula::exists(x, (**h).clone()))),
            _ => None,
        },
        _ => None,
    }
}

/// ¬(φ → ψ) ⇄ φ ∧ ¬ψ.
pub(crate) fn negated_conditional(f: &Formula) -> Option<Formula> {
    match f {
        Formula::Not(g) => match g.as_ref() {
            Formula::Imp(a, b) => Some(Formula::and((**a).clone(), Formula::not((**b).clone()))),
            _ => None,
        },
        Formula::And(a, b) => match b.as_ref() {
            Formula::Not(h) => Some(Formula::not(Formula::imp((**a).clone(), (**h).clone()))),
            _ => None,
        },
        _ => None,
    }
}
