//! Terms, literals, clauses, substitutions, unification and the
//! Knuth-Bendix ordering.

pub mod clause;
pub mod display;
pub mod kbo;
pub mod parse;
pub mod symbol;
pub mod term;
pub mod unify;

pub use clause::{Atom, Clause, ClauseSet, ClauseSetError, Literal, Provenance};
pub use kbo::{kbo, kbo_compare, KboOrdering};
pub use symbol::{Symbol, SymbolId, SymbolKind, VocabError, Vocabulary};
pub use term::{encode_power, Term, TermError};
pub use unify::{match_term, unify, unify_with, Subst};
