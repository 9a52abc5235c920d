//! TOML task manifests.
//!
//! A manifest holds an optional `[presentations]` table of named
//! presentations and one or more `[[task]]` tables:
//!
//! ```toml
//! [presentations]
//! klein = "< a, b | a^-1 b a = b^-1 >"
//!
//! [[task]]
//! id = "1.2"
//! presentation = "klein"            # a name above, or a literal "< ... >"
//! question = { kind = "bi-order" }
//! groups = ["AxL", "OrdB"]
//! statements = { kind = "inequalities", items = [["b", "e"]], strict = 0 }
//! depends = ["1.1"]
//! engine = "prover"                 # prover | model | external
//! budget = { seconds = 60, max_clauses = 100000, max_weight = 100, min_size = 1, max_size = 8 }
//! ordering = { weights = { "'" = 2 }, precedence = ["e", "'", "*", "a", "b"] }
//! ```
//!
//! Question kinds: `left-order`, `bi-order`, `circular-order`,
//! `bi-circular-order`, `torsion { term }`, `generalised-torsion { term }`,
//! `monoid { t1, t2 }`, `closure { target, generators }`,
//! `fixed-point { cofinal, isolated }` and `statements`. Terms are words
//! in the generators such as `"a b^-1"`. Statement kinds are
//! `inequalities`, `order`, `circular`, `cone` and `cone-binary`; `strict`
//! is the index of the single strengthened item.
//!
//! Further keys: `case` (clauses in Prover9 syntax for one branch of a user
//! case split), `completes_case_split` (id of the task holding the other
//! branch), `cofinality` (per cofinal element, the closure tasks that
//! establish it and an optional symmetry note), `caveats`, `model_file`
//! (a supplied finite model), `external_only` and `expect`.
//!
//! A fixed-point task without `statements` gets the cone pairs `(e, t)` for
//! its cofinal elements, the first one strict.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::kernel::parse::{ClauseReader, VarStyle};
use crate::kernel::{ClauseSet, Provenance, Term, VocabError, Vocabulary};
use crate::modelfinder::FiniteModel;
use crate::presentation::{parse_presentation, Presentation, StatementItem, StatementKind, StatementSet};
use crate::prover::SaturationLimits;
use crate::theories::{compile, AxiomGroup, Question, TheorySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    Prover,
    Model,
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Prover time limit, or per-size time limit for the model finder.
    pub seconds: f64,
    pub max_clauses: usize,
    pub max_weight: u32,
    pub min_size: usize,
    pub max_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        let limits = SaturationLimits::default();
        Budget {
            seconds: 120.0,
            max_clauses: limits.max_clauses,
            max_weight: limits.max_weight,
            min_size: 1,
            max_size: 8,
        }
    }
}

impl Budget {
    pub fn limits(&self) -> SaturationLimits {
        SaturationLimits {
            max_seconds: self.seconds,
            max_clauses: self.max_clauses,
            max_weight: self.max_weight,
            ..SaturationLimits::default()
        }
    }
}

/// Outcome class recorded for regression checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub outcome: ExpectedOutcome,
    #[serde(default)]
    pub size: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedOutcome {
    Refutation,
    Model,
}

/// Premise that `⟨element⟩` is left absolutely cofinal.
#[derive(Clone, Debug, PartialEq)]
pub struct CofinalityPremise {
    pub element: Term,
    pub word: String,
    pub tasks: Vec<String>,
    pub symmetry: Option<String>,
}

/// Knuth-Bendix parameters applied on top of the default symbol weights
/// and precedence. Predicates keep their defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderingSettings {
    #[serde(default)]
    pub weights: BTreeMap<String, u32>,
    /// At most the lightest symbol weight.
    #[serde(default)]
    pub var_weight: Option<u32>,
    /// Every function symbol (`e`, `'`, `*` and the generators), lowest first.
    #[serde(default)]
    pub precedence: Vec<String>,
}

impl OrderingSettings {
    pub fn is_default(&self) -> bool {
        *self == OrderingSettings::default()
    }

    pub fn apply(&self, vocab: &mut Vocabulary) -> Result<(), VocabError> {
        for (name, weight) in &self.weights {
            vocab.set_weight(name, *weight)?;
        }
        if let Some(w) = self.var_weight {
            vocab.set_var_weight(w)?;
        }
        if !self.precedence.is_empty() {
            let names: Vec<&str> = self.precedence.iter().map(String::as_str).collect();
            vocab.set_precedence(&names)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TaskSpec {
    pub id: String,
    pub title: String,
    pub theory: TheorySpec,
    pub engine: EngineChoice,
    pub budget: Budget,
    pub ordering: OrderingSettings,
    pub depends: Vec<String>,
    pub cofinality: Vec<CofinalityPremise>,
    pub caveats: Vec<String>,
    pub supplied_model: Option<FiniteModel>,
    pub external_only: bool,
    pub completes_case_split: Option<String>,
    pub expect: Option<Expectation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    #[serde(default)]
    presentations: BTreeMap<String, String>,
    #[serde(default)]
    task: Vec<RawTask>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    id: String,
    #[serde(default)]
    title: Option<String>,
    presentation: String,
    question: RawQuestion,
    #[serde(default)]
    groups: Vec<String>,
    #[serde(default)]
    statements: Option<RawStatements>,
    #[serde(default)]
    case: Vec<String>,
    #[serde(default)]
    completes_case_split: Option<String>,
    engine: EngineChoice,
    #[serde(default)]
    depends: Vec<String>,
    #[serde(default)]
    cofinality: Vec<RawCofinality>,
    #[serde(default)]
    caveats: Vec<String>,
    #[serde(default)]
    budget: RawBudget,
    #[serde(default)]
    ordering: OrderingSettings,
    #[serde(default)]
    model_file: Option<String>,
    #[serde(default)]
    external_only: bool,
    #[serde(default)]
    expect: Option<Expectation>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawQuestion {
    LeftOrder,
    BiOrder,
    CircularOrder,
    BiCircularOrder,
    Torsion {
        term: String,
    },
    GeneralisedTorsion {
        term: String,
    },
    Monoid {
        t1: String,
        t2: String,
    },
    Closure {
        target: String,
        generators: Vec<String>,
    },
    FixedPoint {
        cofinal: Vec<String>,
        #[serde(default)]
        isolated: Vec<u32>,
    },
    Statements,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStatements {
    kind: String,
    items: Vec<Vec<String>>,
    #[serde(default)]
    strict: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCofinality {
    element: String,
    tasks: Vec<String>,
    #[serde(default)]
    symmetry: Option<String>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBudget {
    seconds: Option<f64>,
    max_clauses: Option<usize>,
    max_weight: Option<u32>,
    min_size: Option<usize>,
    max_size: Option<usize>,
}

/// Parses a manifest. `resolve` returns the text of a `model_file`.
pub fn parse_manifest(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, HarnessError>,
) -> Result<Vec<TaskSpec>, HarnessError> {
    let raw: RawManifest = toml::from_str(text).map_err(|e| HarnessError::Manifest(e.to_string()))?;
    let mut out = Vec::new();
    for t in raw.task {
        let id = t.id.clone();
        let spec = build_task(t, &raw.presentations, resolve).map_err(|e| match e {
            HarnessError::Manifest(m) => HarnessError::Manifest(format!("task {id}: {m}")),
            e => e,
        })?;
        if out.iter().any(|s: &TaskSpec| s.id == spec.id) {
            return Err(HarnessError::Manifest(format!("duplicate task id {}", spec.id)));
        }
        out.push(spec);
    }
    Ok(out)
}

fn bad(msg: impl Into<String>) -> HarnessError {
    HarnessError::Manifest(msg.into())
}

fn build_task(
    t: RawTask,
    presentations: &BTreeMap<String, String>,
    resolve: &dyn Fn(&str) -> Result<String, HarnessError>,
) -> Result<TaskSpec, HarnessError> {
    let text = if t.presentation.trim_start().starts_with('<') {
        t.presentation.clone()
    } else {
        presentations
            .get(&t.presentation)
            .cloned()
            .ok_or_else(|| bad(format!("unknown presentation `{}`", t.presentation)))?
    };
    let p = parse_presentation(&text).map_err(|e| bad(e.to_string()))?;
    let word = |w: &str| word_term(&p, w);

    let question = match &t.question {
        RawQuestion::LeftOrder => Question::LeftOrder,
        RawQuestion::BiOrder => Question::BiOrder,
        RawQuestion::CircularOrder => Question::CircularOrder,
        RawQuestion::BiCircularOrder => Question::BiCircularOrder,
        RawQuestion::Torsion { term } => Question::Torsion(word(term)?),
        RawQuestion::GeneralisedTorsion { term } => Question::GeneralisedTorsion(word(term)?),
        RawQuestion::Monoid { t1, t2 } => Question::MonoidMembership(word(t1)?, word(t2)?),
        RawQuestion::Closure { target, generators } => Question::ClosureMembership {
            target: word(target)?,
            generators: generators.iter().map(|g| word(g)).collect::<Result<_, _>>()?,
        },
        RawQuestion::FixedPoint { cofinal, isolated } => Question::FixedPoint {
            cofinal: cofinal.iter().map(|g| word(g)).collect::<Result<_, _>>()?,
            isolated: isolated.clone(),
        },
        RawQuestion::Statements => Question::Statements,
    };

    let groups = t
        .groups
        .iter()
        .map(|g| g.parse::<AxiomGroup>().map_err(|e| bad(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;

    let statements = match (&t.statements, &question) {
        (Some(s), _) => statement_set(&p, s)?,
        (None, Question::FixedPoint { cofinal, .. }) => StatementSet {
            kind: StatementKind::Cone,
            items: cofinal
                .iter()
                .enumerate()
                .map(|(i, c)| StatementItem::new(vec![Term::identity(), c.clone()], i == 0))
                .collect(),
        },
        (None, _) => StatementSet::new(StatementKind::Inequalities),
    };

    let mut theory = TheorySpec::new(p.clone(), groups, statements, question);
    if !t.case.is_empty() {
        theory.case = Some(case_clauses(&theory, &t.case)?);
    }

    let cofinality = t
        .cofinality
        .iter()
        .map(|c| {
            Ok(CofinalityPremise {
                element: word(&c.element)?,
                word: c.element.clone(),
                tasks: c.tasks.clone(),
                symmetry: c.symmetry.clone(),
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    for c in &cofinality {
        for dep in &c.tasks {
            if !t.depends.contains(dep) {
                return Err(bad(format!("cofinality task {dep} is not listed in depends")));
            }
        }
    }
    if t.depends.contains(&t.id) {
        return Err(bad("a task cannot depend on itself"));
    }

    let defaults = Budget::default();
    let budget = Budget {
        seconds: t.budget.seconds.unwrap_or(defaults.seconds),
        max_clauses: t.budget.max_clauses.unwrap_or(defaults.max_clauses),
        max_weight: t.budget.max_weight.unwrap_or(defaults.max_weight),
        min_size: t.budget.min_size.unwrap_or(defaults.min_size),
        max_size: t.budget.max_size.unwrap_or(defaults.max_size),
    };

    let mut probe = p.vocabulary();
    t.ordering
        .apply(&mut probe)
        .map_err(|e| bad(format!("ordering: {e}")))?;

    let supplied_model = match &t.model_file {
        Some(name) => {
            let text = resolve(name)?;
            Some(FiniteModel::from_text(&text).map_err(|e| bad(format!("{name}: {e}")))?)
        }
        None => None,
    };

    Ok(TaskSpec {
        title: t.title.clone().unwrap_or_else(|| t.id.clone()),
        id: t.id,
        theory,
        engine: t.engine,
        budget,
        ordering: t.ordering,
        depends: t.depends,
        cofinality,
        caveats: t.caveats,
        supplied_model,
        external_only: t.external_only,
        completes_case_split: t.completes_case_split,
        expect: t.expect,
    })
}

impl TaskSpec {
    /// The task's clause set, with its ordering settings applied.
    pub fn compile(&self) -> Result<ClauseSet, HarnessError> {
        let mut cs = compile(&self.theory).map_err(|e| HarnessError::Theory(e.to_string()))?;
        self.ordering
            .apply(&mut cs.vocab)
            .map_err(|e| HarnessError::Theory(e.to_string()))?;
        Ok(cs)
    }
}

pub(crate) fn word_term(p: &Presentation, w: &str) -> Result<Term, HarnessError> {
    let word = p.parse_word(w).map_err(|e| bad(format!("`{w}`: {e}")))?;
    p.word_to_term(&word, &p.vocabulary())
        .map_err(|e| bad(format!("`{w}`: {e}")))
}

fn statement_set(p: &Presentation, s: &RawStatements) -> Result<StatementSet, HarnessError> {
    let kind = StatementKind::from_name(&s.kind).ok_or_else(|| bad(format!("unknown statement kind `{}`", s.kind)))?;
    let mut set = StatementSet::new(kind);
    for (i, item) in s.items.iter().enumerate() {
        if item.len() != kind.arity() {
            return Err(bad(format!(
                "{} statements take {} terms, item {} has {}",
                kind.name(),
                kind.arity(),
                i + 1,
                item.len()
            )));
        }
        let terms = item.iter().map(|w| word_term(p, w)).collect::<Result<Vec<_>, _>>()?;
        set.items.push(StatementItem::new(terms, s.strict == Some(i)));
    }
    if let Some(k) = s.strict {
        if k >= s.items.len() {
            return Err(bad(format!("strict index {k} is out of range")));
        }
    }
    Ok(set)
}

fn case_clauses(theory: &TheorySpec, formulas: &[String]) -> Result<ClauseSet, HarnessError> {
    let mut vocab = theory.presentation.vocabulary();
    for g in &theory.groups {
        if let Some((name, arity)) = g.predicate() {
            vocab.add_predicate(name, arity).map_err(|e| bad(e.to_string()))?;
        }
    }
    let mut clauses = Vec::new();
    {
        let mut reader = ClauseReader {
            vocab: &mut vocab,
            style: VarStyle::Named,
            extend: false,
        };
        for (i, f) in formulas.iter().enumerate() {
            let c = reader
                .clause(f, Provenance::new("case", i as u32 + 1))
                .map_err(|e| bad(format!("case `{f}`: {e}")))?;
            clauses.push(c);
        }
    }
    let mut cs = ClauseSet::new(vocab);
    for c in clauses {
        cs.push(c).map_err(|e| bad(e.to_string()))?;
    }
    Ok(cs)
}
