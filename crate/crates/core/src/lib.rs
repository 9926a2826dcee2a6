//! A checker for first-order natural deduction proofs written in Fitch
//! style, with a finite-model search for countermodels.
//!
//! ```
//! use natded::checker::{check_proof, CheckConfig};
//! use natded::proofdoc::parse_proof;
//!
//! let doc = parse_proof(
//!     "1. ∀x (H(x) → M(x)) ; premise
//!      2. H(s) ; premise
//!      3. H(s) → M(s) ; ForallE 1
//!      4. M(s) ; ImpE 3, 2
//!      5. ∃x M(x) ; ExistsI 4",
//! )
//! .unwrap();
//! let report = check_proof(&doc, &CheckConfig::default());
//! assert!(report.accepted);
//! assert_eq!(report.proved.unwrap().to_string(), "∃x M(x)");
//! ```

pub mod checker;
pub mod corpus;
pub mod proofdoc;
pub mod semantics;
pub mod syntax;
