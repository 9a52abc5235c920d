//! Prover9, Mace4 and TPTP file formats, and optional external runs.

mod ladr;
mod process;
mod tptp;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ladr::{
    emit_mace4, emit_prover9, parse_mace4_model, parse_prover9_output, read_ladr_input, ExternalStatus, Prover9Options,
    Prover9Result,
};
pub use process::{run_external, ExternalRun};
pub use tptp::{emit_tptp, parse_tptp};

use crate::kernel::Vocabulary;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InteropError {
    #[error("symbol `{0}` cannot be written in this format")]
    Unsupported(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("output is truncated: {0}")]
    Truncated(String),
    #[error("model block does not fit the vocabulary: {0}")]
    Model(String),
    #[error("external process failed: {0}")]
    Process(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArtifactKind {
    Prover9Input,
    Mace4Input,
    TptpCnf,
    Prover9Output,
    Mace4Output,
}

impl ArtifactKind {
    pub fn extension(self) -> &'static str {
        match self {
            ArtifactKind::Prover9Input => "p9.in",
            ArtifactKind::Mace4Input => "m4.in",
            ArtifactKind::TptpCnf => "p",
            ArtifactKind::Prover9Output => "p9.out",
            ArtifactKind::Mace4Output => "m4.out",
        }
    }
}

/// A file produced for, or by, an external tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalArtifact {
    pub kind: ArtifactKind,
    pub task_id: String,
    pub payload: String,
}

impl ExternalArtifact {
    pub fn file_name(&self) -> String {
        format!("task_{}.{}", self.task_id, self.kind.extension())
    }
}

/// Prover9 reads names starting with `u`..`z` as variables, and only the
/// order, circular-order and cone predicates are in scope.
fn check_ladr_vocabulary(vocab: &Vocabulary) -> Result<(), InteropError> {
    for g in vocab.generators() {
        let name = vocab.name(g);
        if name.starts_with(|c: char| ('u'..='z').contains(&c)) {
            return Err(InteropError::Unsupported(format!("{name} (would be read as a variable)")));
        }
    }
    for p in vocab.predicates() {
        let name = vocab.name(p);
        let arity = vocab.symbol(p).arity();
        if !matches!((name, arity), ("L", 2) | ("C", 3) | ("P", 1) | ("P", 2)) {
            return Err(InteropError::Unsupported(format!("{name}/{arity}")));
        }
    }
    Ok(())
}
