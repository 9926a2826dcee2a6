//! The native `.ndp` text format.
//!
//! ```text
//! @name socrates_direct
//! @goal ∃x M(x)
//! 1. ∀x (H(x) → M(x)) ; premise
//! 2. H(s) ; premise
//! 3. | ¬M(s) ; assume
//! 4. | [c] ; assume
//! 5. ... ; ImpE 3, 2
//! ```
//!
//! Each proof line is `<number>. <"|" per depth> <formula or [c] or [c] formula> ; <justification>`.
//! `#` starts a comment.

use super::{
    Citation, Justification, LineKind, ParseCode, ProofDocument, ProofLine, ProofParseError,
    RuleName,
};
use crate::syntax::{format_formula, parse_formula};

struct SourceLine<'a> {
    /// 1-based line in the source text.
    text_line: usize,
    /// Byte offset of `content` within the source line.
    content_start: usize,
    content: &'a str,
}

pub fn parse_proof(text: &str) -> Result<ProofDocument, ProofParseError> {
    let mut doc = ProofDocument::new("");
    // proof line number -> (text line, column of the formula)
    let mut positions: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let text_line = idx + 1;
        let without_comment = raw.find('#').map_or(raw, |i| &raw[..i]);
        let trimmed = without_comment.trim_start();
        let content_start = without_comment.len() - trimmed.len();
        let content = trimmed.trim_end();
        if content.is_empty() {
            continue;
        }
        let src = SourceLine {
            text_line,
            content_start,
            content,
        };
        if let Some(rest) = content.strip_prefix('@') {
            parse_directive(&mut doc, &src, rest)?;
            continue;
        }
        let (line, column) = parse_line(&src)?;
        positions.push((text_line, column));
        doc.lines.push(line);
    }

    doc.validate_with(|n| {
        n.checked_sub(1)
            .and_then(|i| positions.get(i).copied())
            .unwrap_or((0, 0))
    })?;
    Ok(doc)
}

fn syntax_error(src: &SourceLine<'_>, offset: usize, message: String) -> ProofParseError {
    let column = src.content[..offset.min(src.content.len())].chars().count() + 1;
    ProofParseError::new(
        ParseCode::Syntax,
        src.text_line,
        src.content_start + column,
        message,
    )
}

fn parse_directive(
    doc: &mut ProofDocument,
    src: &SourceLine<'_>,
    rest: &str,
) -> Result<(), ProofParseError> {
    let (key, value) = rest
        .split_once(char::is_whitespace)
        .map_or((rest, ""), |(k, v)| (k, v.trim()));
    match key {
        "name" => {
            doc.name = value.to_string();
            Ok(())
        }
        "goal" => {
            let offset = src.content.len() - value.len();
            let goal = parse_formula(value).map_err(|e| {
                syntax_error(src, offset + e.offset, format!("goal: {}", e.message))
            })?;
            doc.declared_goal = Some(goal);
            Ok(())
        }
        other => Err(syntax_error(src, 0, format!("unknown directive `@{other}`"))),
    }
}

fn parse_line(src: &SourceLine<'_>) -> Result<(ProofLine, usize), ProofParseError> {
    let content = src.content;
    let digits = content
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(content.len());
    if digits == 0 || !content[digits..].starts_with('.') {
        return Err(syntax_error(
            src,
            digits,
            "expected a line number followed by `.`".into(),
        ));
    }
    let number: usize = content[..digits]
        .parse()
        .map_err(|_| syntax_error(src, 0, "line number out of range".into()))?;

    let after_number = digits + 1;
    let Some(semi) = content[after_number..].find(';').map(|i| after_number + i) else {
        return Err(syntax_error(
            src,
            content.len(),
            "expected `;` followed by a justification".into(),
        ));
    };

    // bars
    let body = &content[after_number..semi];
    let mut depth = 0;
    let mut pos = after_number;
    for c in body.chars() {
        match c {
            '|' => depth += 1,
            c if c.is_whitespace() => {}
            _ => break,
        }
        pos += c.len_utf8();
    }
    let item = content[pos..semi].trim_end();
    let item_offset = pos;
    let column = src.content_start + content[..item_offset].chars().count() + 1;

    let (boxed, formula_text, formula_offset) = if let Some(inner) = item.strip_prefix('[') {
        let Some(close) = inner.find(']') else {
            return Err(syntax_error(src, item_offset, "unclosed `[`".into()));
        };
        let constant = inner[..close].trim().to_string();
        let after = &inner[close + 1..];
        let trimmed = after.trim_start();
        let offset = item_offset + 1 + close + 1 + (after.len() - trimmed.len());
        (Some(constant), trimmed, offset)
    } else {
        (None, item, item_offset)
    };

    let formula = if formula_text.is_empty() {
        if boxed.is_none() {
            return Err(syntax_error(src, item_offset, "expected a formula".into()));
        }
        None
    } else {
        Some(parse_formula(formula_text).map_err(|e| {
            let mut message = e.message.clone();
            if !e.expected.is_empty() {
                message.push_str(&format!(" (expected {})", e.expected.join(", ")));
            }
            syntax_error(src, formula_offset + e.offset, message)
        })?)
    };

    let just_offset = semi + 1;
    let just_text = content[just_offset..].trim();
    let just_offset = just_offset + (content[just_offset..].len() - content[just_offset..].trim_start().len());
    let (kind, justification) =
        parse_justification(src, just_text, just_offset, boxed)?;

    Ok((
        ProofLine {
            number,
            depth,
            kind,
            formula,
            justification,
        },
        column,
    ))
}

fn parse_justification(
    src: &SourceLine<'_>,
    text: &str,
    offset: usize,
    boxed: Option<String>,
) -> Result<(LineKind, Option<Justification>), ProofParseError> {
    let rule_len = text
        .find(|c: char| c.is_whitespace() || c == ',')
        .unwrap_or(text.len());
    let (rule_text, rest) = text.split_at(rule_len);
    if rule_text.is_empty() {
        return Err(syntax_error(src, offset, "missing justification".into()));
    }
    let rest = rest.trim_start().trim_start_matches(',').trim();

    let lowered = rule_text.to_ascii_lowercase();
    let opener = matches!(lowered.as_str(), "assume" | "assumption" | "hyp");
    if let Some(constant) = boxed {
        if !opener {
            return Err(syntax_error(
                src,
                offset,
                "a boxed constant line opens a subproof and must be justified by `assume`".into(),
            ));
        }
        if !rest.is_empty() {
            return Err(syntax_error(src, offset, "`assume` takes no citations".into()));
        }
        return Ok((LineKind::BoxedConstant(constant), None));
    }
    if lowered == "premise" || opener {
        if !rest.is_empty() {
            return Err(syntax_error(
                src,
                offset,
                format!("`{rule_text}` takes no citations"),
            ));
        }
        let kind = if opener {
            LineKind::Assumption
        } else {
            LineKind::Premise
        };
        return Ok((kind, None));
    }

    let rule: RuleName = rule_text.parse().map_err(|_| {
        let column = src.content[..offset].chars().count() + 1;
        ProofParseError::new(
            ParseCode::UnknownRule,
            src.text_line,
            src.content_start + column,
            format!("unknown rule `{rule_text}`"),
        )
    })?;
    let cited = parse_citations(rest)
        .map_err(|m| syntax_error(src, offset + rule_len, m))?;
    Ok((LineKind::Derived, Some(Justification { rule, cited })))
}

fn parse_citations(text: &str) -> Result<Vec<Citation>, String> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let number = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("malformed citation `{part}`"))
            };
            match part.split_once(['-', '–']) {
                Some((a, b)) => {
                    let (a, b) = (number(a)?, number(b)?);
                    if a > b {
                        return Err(format!("range `{part}` runs backwards"));
                    }
                    Ok(Citation::Range(a, b))
                }
                None => Ok(Citation::Line(number(part)?)),
            }
        })
        .collect()
}

/// Canonical text rendering. `parse_proof(&format_proof(d)) == d` for every
/// valid document.
pub fn format_proof(doc: &ProofDocument) -> String {
    let mut out = String::new();
    if !doc.name.is_empty() {
        out.push_str(&format!("@name {}\n", doc.name));
    }
    if let Some(goal) = &doc.declared_goal {
        out.push_str(&format!("@goal {}\n", format_formula(goal)));
    }
    for line in &doc.lines {
        out.push_str(&format!("{}. ", line.number));
        for _ in 0..line.depth {
            out.push_str("| ");
        }
        if let LineKind::BoxedConstant(c) = &line.kind {
            out.push_str(&format!("[{c}]"));
            if line.formula.is_some() {
                out.push(' ');
            }
        }
        if let Some(f) = &line.formula {
            out.push_str(&format_formula(f));
        }
        out.push_str(" ; ");
        match (&line.kind, &line.justification) {
            (LineKind::Premise, _) => out.push_str("premise"),
            (LineKind::Assumption | LineKind::BoxedConstant(_), _) => out.push_str("assume"),
            (LineKind::Derived, Some(j)) => {
                out.push_str(j.rule.as_str());
                if !j.cited.is_empty() {
                    let cited: Vec<String> = j.cited.iter().map(|c| c.to_string()).collect();
                    out.push(' ');
                    out.push_str(&cited.join(", "));
                }
            }
            (LineKind::Derived, None) => {}
        }
        out.push('\n');
    }
    out
}
