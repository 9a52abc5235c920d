//! Task manifests, the shipped catalog, and the mapping from engine
//! outcomes to group-theoretic verdicts.

mod catalog;
mod manifest;
mod run;
mod verdict;

use thiserror::Error;

pub use catalog::{catalog, select};
pub use manifest::{
    parse_manifest, Budget, CofinalityPremise, EngineChoice, Expectation, ExpectedOutcome, OrderingSettings, TaskSpec,
};
pub use run::{
    dependency_order, discover_statements, run_catalog, run_task, run_tasks, ReportStore, RunOptions, TaskReport,
};
pub use verdict::{interpret, refutation_conclusion, Conclusion, Evidence, Verdict};

pub const EXIT_VERDICT: i32 = 0;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("theory does not fit its question: {0}")]
    Shape(String),
    #[error("theory: {0}")]
    Theory(String),
    #[error("task {task}: unmet dependency {missing}")]
    Dependency { task: String, missing: String },
    #[error("{0}")]
    Cofinality(String),
    #[error("budget: {0}")]
    Budget(String),
    #[error("engine: {0}")]
    Engine(String),
    #[error("{0}")]
    Io(String),
}

impl HarnessError {
    /// All harness errors are input errors from the caller's point of view.
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}
