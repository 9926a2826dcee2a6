use std::fmt;

use serde::Serialize;

use super::{is_variable_name, Formula, Term};

/// A formula that could not be read. `offset` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Imp,
    Iff,
    Forall,
    Exists,
    Top,
    Bottom,
    LParen,
    RParen,
    Comma,
    Dot,
    Ident(String),
    Eof,
    Unexpected(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "`¬`".into(),
            Tok::And => "`∧`".into(),
            Tok::Or => "`∨`".into(),
            Tok::Imp => "`→`".into(),
            Tok::Iff => "`↔`".into(),
            Tok::Forall => "`∀`".into(),
            Tok::Exists => "`∃`".into(),
            Tok::Top => "`⊤`".into(),
            Tok::Bottom => "`⊥`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Eof => "end of input".into(),
            Tok::Unexpected(c) => format!("character `{c}`"),
        }
    }
}

const FORMULA_START: &[&str] = &["¬", "∀", "∃", "(", "⊤", "⊥", "identifier"];
const BINARY_OPS: &[&str] = &["∧", "∨", "→", "↔"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

/// Parses a formula in either the Unicode or the ASCII spelling.
///
/// Binding strength, tightest first: `¬` and quantifier prefixes, `∧`, `∨`,
/// `→`, `↔`. Conjunction and disjunction group to the left, the conditional
/// and biconditional to the right. A quantifier prefix binds like negation,
/// so `∀x P(x) → Q` reads as `(∀x P(x)) → Q`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let f = p.formula()?;
    p.expect_end(BINARY_OPS)?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.term()?;
    p.expect_end(&[])?;
    Ok(t)
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// Returns the next token with its start offset and length, without
    /// consuming it.
    fn peek(&mut self) -> (Tok, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            return (Tok::Eof, start, 0);
        };
        let single = |t: Tok| (t, start, c.len_utf8());
        match c {
            '¬' | '~' => single(Tok::Not),
            '∧' | '&' => single(Tok::And),
            '∨' | '|' => single(Tok::Or),
            '→' => single(Tok::Imp),
            '↔' => single(Tok::Iff),
            '∀' => single(Tok::Forall),
            '∃' => single(Tok::Exists),
            '⊤' => single(Tok::Top),
            '⊥' => single(Tok::Bottom),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            ',' => single(Tok::Comma),
            '.' => single(Tok::Dot),
            '-' if rest.starts_with("->") => (Tok::Imp, start, 2),
            '<' if rest.starts_with("<->") => (Tok::Iff, start, 3),
            c if c.is_alphabetic() => {
                let len = rest
                    .char_indices()
                    .find(|&(_, ch)| !(ch.is_alphanumeric() || ch == '_'))
                    .map_or(rest.len(), |(i, _)| i);
                let word = &rest[..len];
                let tok = match word {
                    "not" => Tok::Not,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "true" => Tok::Top,
                    "false" => Tok::Bottom,
                    _ => Tok::Ident(word.to_string()),
                };
                (tok, start, len)
            }
            other => single(Tok::Unexpected(other)),
        }
    }

    fn bump(&mut self) -> Tok {
        let (tok, start, len) = self.peek();
        self.pos = start + len;
        tok
    }

    fn error(&self, offset: usize, expected: &[&str], found: &Tok) -> ParseError {
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: format!("unexpected {}", found.describe()),
        }
    }

    fn expect_end(&mut self, also: &[&str]) -> PResult<()> {
        let (tok, start, _) = self.peek();
        if tok == Tok::Eof {
            return Ok(());
        }
        let mut expected: Vec<&str> = also.to_vec();
        expected.push("end of input");
        Err(self.error(start, &expected, &tok))
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.implication()?;
        if self.peek().0 == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if self.peek().0 == Tok::Imp {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek().0 == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.peek().0 == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        let (tok, start, _) = self.peek();
        match tok {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                self.bump();
                let var = self.bound_variable()?;
                if self.peek().0 == Tok::Dot {
                    self.bump();
                }
                let body = self.unary()?;
                Ok(if tok == Tok::Forall {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.close_paren(BINARY_OPS)?;
                Ok(inner)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) => {
                self.bump();
                if is_variable_name(&name) {
                    return Err(ParseError {
                        offset: start,
                        expected: vec!["predicate".into()],
                        message: format!("variable `{name}` cannot stand as a formula"),
                    });
                }
                let args = if self.peek().0 == Tok::LParen {
                    self.arguments()?
                } else {
                    Vec::new()
                };
                Ok(Formula::Pred(name, args))
            }
            other => Err(self.error(start, FORMULA_START, &other)),
        }
    }

    /// Reads the variable after a quantifier symbol. Only the variable shape
    /// is consumed, so `∃xM(x)` splits into `x` and `M(x)`.
    fn bound_variable(&mut self) -> PResult<String> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        if let Some((_, 'u'..='z')) = chars.next() {
            let len = chars
                .find(|&(_, c)| !c.is_ascii_digit())
                .map_or(rest.len(), |(i, _)| i);
            // `forall xs ...` is a misspelt variable, not `x` followed by `s`.
            let tail = &rest[len..];
            let glued_lower = tail
                .chars()
                .next()
                .is_some_and(|c| c.is_lowercase() || c == '_');
            if !glued_lower {
                let name = rest[..len].to_string();
                self.pos += len;
                return Ok(name);
            }
        }
        let (tok, start, _) = self.peek();
        Err(ParseError {
            offset: start,
            expected: vec!["variable (u-z, optionally followed by digits)".into()],
            message: format!("quantifier must bind a variable, found {}", tok.describe()),
        })
    }

    fn close_paren(&mut self, also: &[&str]) -> PResult<()> {
        let (tok, start, _) = self.peek();
        if tok == Tok::RParen {
            self.bump();
            return Ok(());
        }
        let mut expected: Vec<&str> = also.to_vec();
        expected.push(")");
        Err(self.error(start, &expected, &tok))
    }

    fn arguments(&mut self) -> PResult<Vec<Term>> {
        self.bump();
        let mut args = vec![self.term()?];
        loop {
            let (tok, start, _) = self.peek();
            match tok {
                Tok::Comma => {
                    self.bump();
                    args.push(self.term()?);
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                other => return Err(self.error(start, &[",", ")"], &other)),
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let (tok, start, _) = self.peek();
        let Tok::Ident(name) = tok else {
            return Err(self.error(start, &["term"], &tok));
        };
        self.bump();
        if self.peek().0 == Tok::LParen {
            if is_variable_name(&name) {
                return Err(ParseError {
                    offset: start,
                    expected: vec!["function symbol".into()],
                    message: format!("variable `{name}` cannot be applied to arguments"),
                });
            }
            let args = self.arguments()?;
            return Ok(Term::App(name, args));
        }
        Ok(if is_variable_name(&name) {
            Term::Var(name)
        } else {
            Term::Const(name)
        })
    }
}
