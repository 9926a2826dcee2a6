#![allow(dead_code)]

pub mod derivations;
pub mod formulas;
pub mod oracles;

use natded::syntax::{parse_formula, Formula};

pub fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}
