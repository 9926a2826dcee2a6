//! Reference implementations written without the library's code paths.

use natded::syntax::{Formula, Term};

/// Propositional tree built by [`pratt`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop {
    Atom(String),
    Not(Box<Prop>),
    Bin(&'static str, Box<Prop>, Box<Prop>),
}

/// Precedence-climbing parser for ASCII propositional formulas over
/// uppercase atoms: `~`, `&`, `|`, `->`, `<->`, parentheses.
pub fn pratt(src: &str) -> Option<Prop> {
    let tokens = lex(src)?;
    let mut pos = 0;
    let p = expr(&tokens, &mut pos, 0)?;
    (pos == tokens.len()).then_some(p)
}

fn lex(src: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        match c {
            ' ' => {}
            '~' | '&' | '|' | '(' | ')' => out.push(c.to_string()),
            '-' if src[i..].starts_with("->") => {
                it.next();
                out.push("->".into());
            }
            '<' if src[i..].starts_with("<->") => {
                it.next();
                it.next();
                out.push("<->".into());
            }
            c if c.is_ascii_uppercase() => out.push(c.to_string()),
            _ => return None,
        }
    }
    Some(out)
}

/// (binding power, right associative)
fn infix(op: &str) -> Option<(u8, bool)> {
    match op {
        "<->" => Some((1, true)),
        "->" => Some((2, true)),
        "|" => Some((3, false)),
        "&" => Some((4, false)),
        _ => None,
    }
}

fn expr(t: &[String], pos: &mut usize, min: u8) -> Option<Prop> {
    let mut lhs = prefix(t, pos)?;
    while let Some(op) = t.get(*pos) {
        let Some((bp, right)) = infix(op) else { break };
        if bp < min {
            break;
        }
        *pos += 1;
        let rhs = expr(t, pos, if right { bp } else { bp + 1 })?;
        let name = match op.as_str() {
            "<->" => "iff",
            "->" => "imp",
            "|" => "or",
            _ => "and",
        };
        lhs = Prop::Bin(name, Box::new(lhs), Box::new(rhs));
    }
    Some(lhs)
}

fn prefix(t: &[String], pos: &mut usize) -> Option<Prop> {
    let tok = t.get(*pos)?;
    *pos += 1;
    match tok.as_str() {
        "~" => Some(Prop::Not(Box::new(prefix(t, pos)?))),
        "(" => {
            let e = expr(t, pos, 0)?;
            (t.get(*pos)? == ")").then_some(())?;
            *pos += 1;
            Some(e)
        }
        s if s.len() == 1 && s.chars().all(|c| c.is_ascii_uppercase()) => {
            Some(Prop::Atom(s.to_string()))
        }
        _ => None,
    }
}

/// The library's tree in the oracle's shape, if propositional.
pub fn to_prop(f: &Formula) -> Option<Prop> {
    Some(match f {
        Formula::Pred(p, args) if args.is_empty() => Prop::Atom(p.clone()),
        Formula::Not(g) => Prop::Not(Box::new(to_prop(g)?)),
        Formula::And(l, r) => Prop::Bin("and", Box::new(to_prop(l)?), Box::new(to_prop(r)?)),
        Formula::Or(l, r) => Prop::Bin("or", Box::new(to_prop(l)?), Box::new(to_prop(r)?)),
        Formula::Imp(l, r) => Prop::Bin("imp", Box::new(to_prop(l)?), Box::new(to_prop(r)?)),
        Formula::Iff(l, r) => Prop::Bin("iff", Box::new(to_prop(l)?), Box::new(to_prop(r)?)),
        _ => return None,
    })
}

/// Nameless form: a bound variable becomes the distance to its binder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Db {
    Bound(usize),
    Free(String),
    Const(String),
    App(String, Vec<Db>),
    Pred(String, Vec<Db>),
    Op(&'static str, Vec<Db>),
}

pub fn de_bruijn(f: &Formula) -> Db {
    db_formula(f, &mut Vec::new())
}

fn db_formula(f: &Formula, stack: &mut Vec<String>) -> Db {
    let op = |name: &'static str, parts: &[&Formula], stack: &mut Vec<String>| {
        Db::Op(name, parts.iter().map(|p| db_formula(p, stack)).collect())
    };
    match f {
        Formula::Top => Db::Op("top", vec![]),
        Formula::Bottom => Db::Op("bot", vec![]),
        Formula::Pred(p, args) => Db::Pred(p.clone(), args.iter().map(|t| db_term(t, stack)).collect()),
        Formula::Not(g) => op("not", &[g], stack),
        Formula::And(l, r) => op("and", &[l, r], stack),
        Formula::Or(l, r) => op("or", &[l, r], stack),
        Formula::Imp(l, r) => op("imp", &[l, r], stack),
        Formula::Iff(l, r) => op("iff", &[l, r], stack),
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            stack.push(x.clone());
            let body = db_formula(g, stack);
            stack.pop();
            let name = if matches!(f, Formula::Forall(..)) { "all" } else { "ex" };
            Db::Op(name, vec![body])
        }
    }
}

fn db_term(t: &Term, stack: &[String]) -> Db {
    match t {
        Term::Var(v) => match stack.iter().rev().position(|b| b == v) {
            Some(i) => Db::Bound(i),
            None => Db::Free(v.clone()),
        },
        Term::Const(c) => Db::Const(c.clone()),
        Term::App(g, args) => Db::App(g.clone(), args.iter().map(|a| db_term(a, stack)).collect()),
    }
}
