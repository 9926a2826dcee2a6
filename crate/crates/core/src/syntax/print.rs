use super::Formula;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

/// Canonical Unicode rendering with the fewest parentheses that still
/// parse back to the same tree.
pub fn format_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, 0, &mut out);
    out
}

fn write_formula(f: &Formula, min: u8, out: &mut String) {
    let parens = precedence(f) < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Top => out.push('⊤'),
        Formula::Bottom => out.push('⊥'),
        Formula::Pred(name, args) => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&a.to_string());
                }
                out.push(')');
            }
        }
        Formula::Not(g) => {
            out.push('¬');
            write_formula(g, PREFIX, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            out.push(if matches!(f, Formula::Forall(..)) { '∀' } else { '∃' });
            out.push_str(v);
            out.push(' ');
            write_formula(g, PREFIX, out);
        }
        // left-associative: a right operand of the same strength needs parens
        Formula::And(l, r) => binary(l, " ∧ ", r, AND, AND + 1, out),
        Formula::Or(l, r) => binary(l, " ∨ ", r, OR, OR + 1, out),
        // right-associative: the left operand needs parens instead
        Formula::Imp(l, r) => binary(l, " → ", r, IMP + 1, IMP, out),
        Formula::Iff(l, r) => binary(l, " ↔ ", r, IFF + 1, IFF, out),
    }
    if parens {
        out.push(')');
    }
}

fn binary(l: &Formula, op: &str, r: &Formula, lmin: u8, rmin: u8, out: &mut String) {
    write_formula(l, lmin, out);
    out.push_str(op);
    write_formula(r, rmin, out);
}
