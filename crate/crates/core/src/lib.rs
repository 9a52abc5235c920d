//! Orderability questions about finitely presented groups, posed as
//! first-order theories and settled by a saturation prover or a finite
//! model finder.

pub mod harness;
pub mod interop;
pub mod kernel;
pub mod modelfinder;
pub mod presentation;
pub mod prover;
pub mod theories;

pub use kernel::{Atom, Clause, ClauseSet, KboOrdering, Literal, SymbolId, Term, Vocabulary};
