//! The bundled example proofs.

use serde::Serialize;

use crate::proofdoc::{parse_proof, Code, ProofDocument, ProofParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    /// A complete proof that the checker accepts.
    Proof,
    /// A listing kept with its original rule labels and slips.
    Literal,
    /// A deliberately broken proof; `expected` names the one code it earns.
    Doctored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: &'static str,
    pub title: &'static str,
    pub kind: EntryKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Code>,
    #[serde(skip)]
    pub source: &'static str,
}

impl Entry {
    pub fn document(&self) -> Result<ProofDocument, ProofParseError> {
        parse_proof(self.source)
    }
}

macro_rules! entry {
    ($id:literal, $title:literal, $kind:ident) => {
        entry!($id, $title, $kind, None, "")
    };
    ($id:literal, $title:literal, $kind:ident, $expected:expr, $dir:literal) => {
        Entry {
            id: $id,
            title: $title,
            kind: EntryKind::$kind,
            expected: $expected,
            source: include_str!(concat!("../../../corpus/", $dir, $id, ".ndp")),
        }
    };
}

macro_rules! doctored {
    ($id:literal, $title:literal, $code:ident) => {
        entry!($id, $title, Doctored, Some(Code::$code), "doctored/")
    };
}

pub const ENTRIES: &[Entry] = &[
    entry!("lion_milk", "Lions drink milk", Proof),
    entry!("socrates_direct", "Mortality and Socrates, direct", Proof),
    entry!("socrates_indirect", "Mortality and Socrates, by contradiction", Proof),
    entry!("trees_direct", "Living trees, direct", Proof),
    entry!("trees_indirect", "Living trees, by contradiction", Proof),
    entry!("cats_direct", "Cats and rabbits, direct", Proof),
    entry!("cats_indirect", "Cats and rabbits, by contradiction", Proof),
    entry!("socrates_indirect_literal", "Mortality and Socrates, as printed", Literal),
    entry!("trees_indirect_literal", "Living trees, as printed", Literal),
    entry!("cats_direct_literal", "Cats and rabbits, direct, as printed", Literal),
    entry!("cats_indirect_literal", "Cats and rabbits, by contradiction, as printed", Literal),
    doctored!("forall_i_premise_constant", "∀I over a premise constant", Freshness),
    doctored!("forall_i_exists_constant", "∀I over an ∃E witness", Freshness),
    doctored!("exists_e_witness_clash", "∃E witness already in use", Freshness),
    doctored!("exists_e_witness_leak", "∃E witness in the conclusion", Freshness),
    doctored!("closed_subproof_citation", "Citing into a closed subproof", Scope),
    doctored!("forall_e_capture", "Capture in ∀E", NotFreeFor),
    doctored!("exists_i_capture", "Capture in ∃I", NotFreeFor),
    doctored!("modus_ponens_wrong_consequent", "→E with the wrong consequent", RuleMismatch),
    doctored!("self_citation", "A line citing itself", BadCitation),
    doctored!("range_not_subproof", "A range that is not a subproof", BadCitation),
    doctored!("forall_i_over_later_witness", "∀I over a constant an ∃E witness depends on", Freshness),
    doctored!("boxed_constant_not_fresh", "A boxed constant that is not new", Freshness),
];

pub fn get(id: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.id == id)
}

pub fn of_kind(kind: EntryKind) -> impl Iterator<Item = &'static Entry> {
    ENTRIES.iter().filter(move |e| e.kind == kind)
}
