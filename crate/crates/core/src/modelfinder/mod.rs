//! Finite model search and independent model checking.

mod model;
mod search;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use model::{check_model, FiniteModel, ModelError, PredicateTable};
pub use search::{SearchStats, MAX_SIZE};

use crate::kernel::{ClauseSet, Term, Vocabulary};
use crate::presentation::{StatementItem, StatementKind, StatementSet};
use search::{SizeSearch, Stop};

/// Domain sizes to try, in increasing order, and the time allowed per size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub min_size: usize,
    pub max_size: usize,
    pub seconds_per_size: Option<f64>,
}

impl SearchBudget {
    pub fn new(min_size: usize, max_size: usize) -> Result<Self, ModelError> {
        if min_size == 0 || min_size > max_size {
            return Err(ModelError::Budget(format!("size range {min_size}..{max_size} is empty or starts at 0")));
        }
        if max_size > MAX_SIZE {
            return Err(ModelError::Budget(format!("sizes above {MAX_SIZE} are not supported")));
        }
        Ok(SearchBudget {
            min_size,
            max_size,
            seconds_per_size: None,
        })
    }

    pub fn with_seconds(mut self, seconds: f64) -> Self {
        self.seconds_per_size = Some(seconds);
        self
    }
}

/// What happened at one domain size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizeResult {
    Found,
    /// The search space was exhausted: no model of this size exists.
    NoModel,
    TimedOut,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SizeReport {
    pub size: usize,
    pub result: SizeResult,
    pub decisions: u64,
    pub propagations: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub model: Option<FiniteModel>,
    pub sizes: Vec<SizeReport>,
}

impl SearchReport {
    /// True when every size in the budget was searched to exhaustion.
    pub fn exhausted(&self) -> bool {
        self.model.is_none() && self.sizes.iter().all(|s| s.result == SizeResult::NoModel)
    }
}

/// Searches sizes in increasing order and returns the first model found.
/// A missing model with a timed-out size means the budget ran out, not
/// that no model exists.
pub fn find_model(cs: &ClauseSet, budget: &SearchBudget) -> Result<SearchReport, ModelError> {
    let budget = SearchBudget::new(budget.min_size, budget.max_size).map(|b| SearchBudget {
        seconds_per_size: budget.seconds_per_size,
        ..b
    })?;
    for c in cs {
        c.validate(&cs.vocab).map_err(|e| ModelError::Vocabulary(e.to_string()))?;
    }
    let mut report = SearchReport {
        model: None,
        sizes: Vec::new(),
    };
    for size in budget.min_size..=budget.max_size {
        let start = Instant::now();
        let deadline = budget.seconds_per_size.map(|s| start + Duration::from_secs_f64(s));
        let mut found = None;
        let (stop, stats) = SizeSearch { cs, size, deadline }.run(|m| {
            found = Some(m);
            false
        });
        let result = match stop {
            Stop::Halted => SizeResult::Found,
            Stop::Exhausted => SizeResult::NoModel,
            Stop::Deadline => SizeResult::TimedOut,
        };
        report.sizes.push(SizeReport {
            size,
            result,
            decisions: stats.decisions,
            propagations: stats.propagations,
            seconds: start.elapsed().as_secs_f64(),
        });
        if let Some(m) = found {
            check_model(&m, cs)?;
            report.model = Some(m);
            break;
        }
    }
    Ok(report)
}

/// All models of one size, up to the search's symmetry breaking: every
/// model is isomorphic to at least one returned model. Stops after
/// `limit` models; `None` when the deadline passes first.
pub fn enumerate_models(
    cs: &ClauseSet,
    size: usize,
    limit: usize,
    seconds: Option<f64>,
) -> Result<Option<Vec<FiniteModel>>, ModelError> {
    SearchBudget::new(size, size)?;
    for c in cs {
        c.validate(&cs.vocab).map_err(|e| ModelError::Vocabulary(e.to_string()))?;
    }
    let deadline = seconds.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let mut out = Vec::new();
    let (stop, _) = SizeSearch { cs, size, deadline }.run(|m| {
        out.push(m);
        out.len() < limit
    });
    match stop {
        Stop::Deadline => Ok(None),
        _ => Ok(Some(out)),
    }
}

/// The candidate pairs whose two sides evaluate differently in `m`, as a
/// set of disequation statements.
pub fn extract_true_inequalities(
    m: &FiniteModel,
    vocab: &Vocabulary,
    candidates: &[(Term, Term)],
) -> Result<StatementSet, ModelError> {
    let mut out = StatementSet::new(StatementKind::Inequalities);
    for (s, t) in candidates {
        if m.eval_ground(s, vocab)? != m.eval_ground(t, vocab)? {
            out.items.push(StatementItem::new(vec![s.clone(), t.clone()], false));
        }
    }
    Ok(out)
}
