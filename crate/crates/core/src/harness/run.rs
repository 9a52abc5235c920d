//! Running tasks, the shipped catalog, and statement discovery.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::manifest::{Budget, EngineChoice, ExpectedOutcome, TaskSpec};
use super::verdict::{interpret, refutation_conclusion, Conclusion, Evidence, Verdict};
use super::HarnessError;
use crate::interop::{
    emit_mace4, emit_prover9, emit_tptp, parse_mace4_model, parse_prover9_output, run_external, ArtifactKind,
    ExternalArtifact, ExternalStatus, Prover9Options,
};
use crate::kernel::display::{clause_to_formula, VarNames};
use crate::kernel::{Clause, ClauseSet, Literal, Provenance, Term};
use crate::modelfinder::{check_model, extract_true_inequalities, find_model, FiniteModel, SearchBudget, SizeReport};
use crate::presentation::{relations_to_axioms, Presentation, StatementSet};
use crate::prover::{saturate, verify_proof, ProverStats, Status};
use crate::theories::{build_axiom_group, lift_statements, AxiomGroup, Question, TheorySpec};

/// Command-line overrides applied on top of each task's budget.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    /// Directory holding `prover9` and `mace4`.
    pub external_bin: Option<PathBuf>,
    pub engine: Option<EngineChoice>,
    pub seconds: Option<f64>,
    pub max_clauses: Option<usize>,
    pub sizes: Option<(usize, usize)>,
}

impl RunOptions {
    fn budget(&self, base: &Budget) -> Budget {
        let (min_size, max_size) = self.sizes.unwrap_or((base.min_size, base.max_size));
        Budget {
            seconds: self.seconds.unwrap_or(base.seconds),
            max_clauses: self.max_clauses.unwrap_or(base.max_clauses),
            min_size,
            max_size,
            ..*base
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaskReport {
    pub id: String,
    pub title: String,
    pub engine: EngineChoice,
    pub verdict: Verdict,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prover_stats: Option<ProverStats>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<SizeReport>,
    pub artifacts: Vec<String>,
    /// Whether the outcome class matches the manifest's `expect`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_met: Option<bool>,
    /// Set when the task could not be run at all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TaskReport {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            3
        } else {
            self.verdict.exit_code()
        }
    }
}

/// Append-only record of reports, consulted for task dependencies.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ReportStore {
    reports: Vec<TaskReport>,
}

impl ReportStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, id: &str) -> Option<&TaskReport> {
        self.reports.iter().rev().find(|r| r.id == id)
    }

    pub fn push(&mut self, r: TaskReport) {
        self.reports.push(r);
    }

    pub fn reports(&self) -> &[TaskReport] {
        &self.reports
    }

    /// Writes `index.json` with one line of summary per report.
    pub fn write_index(&self, dir: &Path) -> Result<PathBuf, HarnessError> {
        #[derive(Serialize)]
        struct Entry<'a> {
            id: &'a str,
            conclusion: &'a Conclusion,
            seconds: f64,
            report: String,
        }
        let entries: Vec<_> = self
            .reports
            .iter()
            .map(|r| Entry {
                id: &r.id,
                conclusion: &r.verdict.conclusion,
                seconds: r.seconds,
                report: format!("task_{}.json", r.id),
            })
            .collect();
        let path = dir.join("index.json");
        write_file(&path, &serde_json::to_string_pretty(&entries).expect("index serialises"))?;
        Ok(path)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| HarnessError::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

/// Checks that every dependency already has a verdict and, for fixed-point
/// tasks, that each cofinal element has a verified closure premise.
/// Returns the caveats these premises contribute.
fn check_premises(spec: &TaskSpec, store: &ReportStore) -> Result<Vec<String>, HarnessError> {
    for dep in &spec.depends {
        match store.get(dep) {
            Some(r) if !r.verdict.is_unknown() && r.error.is_none() => {}
            Some(_) => {
                return Err(HarnessError::Dependency {
                    task: spec.id.clone(),
                    missing: format!("{dep} (no verdict)"),
                })
            }
            None => {
                return Err(HarnessError::Dependency {
                    task: spec.id.clone(),
                    missing: dep.clone(),
                })
            }
        }
    }
    let mut caveats = Vec::new();
    if let Question::FixedPoint { cofinal, .. } = &spec.theory.question {
        for t in cofinal {
            let premise = spec.cofinality.iter().find(|c| c.element == *t).ok_or_else(|| {
                HarnessError::Cofinality(format!(
                    "task {}: no cofinality premise for a cofinal element",
                    spec.id
                ))
            })?;
            if premise.tasks.is_empty() {
                return Err(HarnessError::Cofinality(format!(
                    "task {}: cofinality of <{}> names no closure task",
                    spec.id, premise.word
                )));
            }
            for dep in &premise.tasks {
                let ok = store
                    .get(dep)
                    .is_some_and(|r| matches!(r.verdict.conclusion, Conclusion::InClosure { .. }));
                if !ok {
                    return Err(HarnessError::Cofinality(format!(
                        "task {}: cofinality of <{}> needs a closure verdict from task {dep}",
                        spec.id, premise.word
                    )));
                }
            }
            let from = premise.tasks.join(", ");
            caveats.push(match &premise.symmetry {
                Some(note) => format!("cofinality of <{}> from tasks {from} by symmetry: {note}", premise.word),
                None => format!("cofinality of <{}> from tasks {from}", premise.word),
            });
        }
    }
    Ok(caveats)
}

fn confirmed_statements(theory: &TheorySpec, cs: &ClauseSet) -> Vec<String> {
    if theory.statements.is_empty() {
        return Vec::new();
    }
    match lift_statements(&theory.statements, theory.statements.kind, &cs.vocab) {
        Ok(lifted) => lifted
            .iter()
            .map(|c| clause_to_formula(c, &lifted.vocab, VarNames::Letters))
            .collect(),
        Err(_) => Vec::new(),
    }
}

fn model_evidence(theory: &TheorySpec, cs: &ClauseSet, m: &FiniteModel) -> Evidence {
    match check_model(m, cs) {
        Ok(()) => Evidence::Model {
            size: m.size,
            verified: true,
            confirmed: confirmed_statements(theory, cs),
            rejection: None,
        },
        Err(e) => Evidence::Model {
            size: m.size,
            verified: false,
            confirmed: Vec::new(),
            rejection: Some(e.to_string()),
        },
    }
}

struct EngineRun {
    evidence: Evidence,
    stats: Option<ProverStats>,
    sizes: Vec<SizeReport>,
    artifacts: Vec<ExternalArtifact>,
}

fn uses_model_finder(spec: &TaskSpec, engine: EngineChoice) -> bool {
    engine == EngineChoice::Model || (engine == EngineChoice::External && spec.theory.question == Question::Statements)
}

fn run_builtin_prover(cs: &ClauseSet, budget: &Budget) -> Result<EngineRun, HarnessError> {
    let out = saturate(cs, &budget.limits()).map_err(|e| HarnessError::Engine(e.to_string()))?;
    let mut artifacts = Vec::new();
    let evidence = match (&out.status, &out.proof) {
        (Status::Refutation, Some(proof)) => {
            let check = verify_proof(proof, cs);
            artifacts.push(ExternalArtifact {
                kind: ArtifactKind::Prover9Output,
                task_id: String::new(),
                payload: proof.to_text(&cs.vocab),
            });
            Evidence::Proof {
                steps: proof.steps.len(),
                verified: check.is_ok(),
                rejection: check.err().map(|e| e.to_string()),
            }
        }
        (Status::Refutation, None) => Evidence::Proof {
            steps: 0,
            verified: false,
            rejection: Some("no proof was extracted".into()),
        },
        (Status::Saturated, _) if out.incomplete => Evidence::ResourceOut {
            reason: "clauses over the weight limit were discarded".into(),
        },
        (Status::Saturated, _) => Evidence::Saturated,
        (Status::ResourceOut(r), _) => Evidence::ResourceOut { reason: r.clone() },
    };
    Ok(EngineRun {
        evidence,
        stats: Some(out.stats),
        sizes: Vec::new(),
        artifacts,
    })
}

fn run_builtin_finder(spec: &TaskSpec, cs: &ClauseSet, budget: &Budget) -> Result<EngineRun, HarnessError> {
    if let Some(m) = &spec.supplied_model {
        return Ok(EngineRun {
            evidence: model_evidence(&spec.theory, cs, m),
            stats: None,
            sizes: Vec::new(),
            artifacts: Vec::new(),
        });
    }
    let search = SearchBudget::new(budget.min_size, budget.max_size)
        .map_err(|e| HarnessError::Budget(e.to_string()))?
        .with_seconds(budget.seconds);
    let report = find_model(cs, &search).map_err(|e| HarnessError::Engine(e.to_string()))?;
    let mut artifacts = Vec::new();
    let evidence = match &report.model {
        Some(m) => {
            artifacts.push(ExternalArtifact {
                kind: ArtifactKind::Mace4Output,
                task_id: String::new(),
                payload: m.to_text(),
            });
            model_evidence(&spec.theory, cs, m)
        }
        None if report.exhausted() => Evidence::NoModelInRange {
            min: budget.min_size,
            max: budget.max_size,
        },
        None => Evidence::ResourceOut {
            reason: "model search timed out".into(),
        },
    };
    Ok(EngineRun {
        evidence,
        stats: None,
        sizes: report.sizes,
        artifacts,
    })
}

fn run_external_engine(
    spec: &TaskSpec,
    cs: &ClauseSet,
    budget: &Budget,
    dir: &Path,
    scratch: &Path,
) -> Result<EngineRun, HarnessError> {
    let model = uses_model_finder(spec, EngineChoice::External);
    let (bin, input, kind) = if model {
        let text = emit_mace4(cs, budget.min_size, budget.max_size).map_err(|e| HarnessError::Engine(e.to_string()))?;
        (dir.join("mace4"), text, ArtifactKind::Mace4Output)
    } else {
        let opts = Prover9Options {
            max_seconds: Some(budget.seconds.ceil() as u32),
            ..Prover9Options::default()
        };
        let text = emit_prover9(cs, &opts).map_err(|e| HarnessError::Engine(e.to_string()))?;
        (dir.join("prover9"), text, ArtifactKind::Prover9Output)
    };
    let input_path = scratch.join(format!("task_{}.in", spec.id));
    write_file(&input_path, &input)?;
    let timeout = Duration::from_secs_f64(budget.seconds + 5.0);
    let run = run_external(&bin, &input_path, timeout).map_err(|e| HarnessError::Engine(e.to_string()))?;
    let artifacts = vec![ExternalArtifact {
        kind,
        task_id: String::new(),
        payload: run.stdout.clone(),
    }];
    let evidence = if run.timed_out {
        Evidence::ResourceOut {
            reason: format!("{} timed out", bin.display()),
        }
    } else if model {
        match parse_mace4_model(&run.stdout, &cs.vocab) {
            Ok(m) => model_evidence(&spec.theory, cs, &m),
            Err(e) => Evidence::ResourceOut {
                reason: format!("no model read from mace4 output: {e}"),
            },
        }
    } else {
        match parse_prover9_output(&run.stdout) {
            Ok(r) => match r.status {
                ExternalStatus::Proved => Evidence::Unverified {
                    claim: "prover9 reports a proof; it is not re-checked locally".into(),
                },
                ExternalStatus::Saturated => Evidence::Saturated,
                ExternalStatus::ResourceOut => Evidence::ResourceOut {
                    reason: "prover9 reached a limit".into(),
                },
            },
            Err(e) => Evidence::ResourceOut {
                reason: format!("unreadable prover9 output: {e}"),
            },
        }
    };
    Ok(EngineRun {
        evidence,
        stats: None,
        sizes: Vec::new(),
        artifacts,
    })
}

/// Input files for external tools, for whichever formats the vocabulary
/// supports.
fn input_artifacts(cs: &ClauseSet, budget: &Budget) -> Vec<ExternalArtifact> {
    let mut out = Vec::new();
    let opts = Prover9Options {
        max_seconds: Some(budget.seconds.ceil() as u32),
        ..Prover9Options::default()
    };
    if let Ok(text) = emit_prover9(cs, &opts) {
        out.push(ExternalArtifact {
            kind: ArtifactKind::Prover9Input,
            task_id: String::new(),
            payload: text,
        });
    }
    if let Ok(text) = emit_mace4(cs, budget.min_size, budget.max_size) {
        out.push(ExternalArtifact {
            kind: ArtifactKind::Mace4Input,
            task_id: String::new(),
            payload: text,
        });
    }
    if let Ok(text) = emit_tptp(cs) {
        out.push(ExternalArtifact {
            kind: ArtifactKind::TptpCnf,
            task_id: String::new(),
            payload: text,
        });
    }
    out
}

/// Compiles, runs and interprets one task. Dependencies must already be in
/// `store`; the report is not added to it.
pub fn run_task(spec: &TaskSpec, store: &ReportStore, opts: &RunOptions) -> Result<TaskReport, HarnessError> {
    let start = Instant::now();
    let premise_caveats = check_premises(spec, store)?;
    let cs = spec.compile()?;
    let budget = opts.budget(&spec.budget);
    let engine = opts.engine.unwrap_or(spec.engine);

    let mut artifacts = input_artifacts(&cs, &budget);
    let external_dir = opts.external_bin.as_deref();
    let run = match (engine, external_dir) {
        (EngineChoice::External, Some(dir)) => {
            let scratch = opts.out.clone().unwrap_or_else(std::env::temp_dir);
            run_external_engine(spec, &cs, &budget, dir, &scratch)?
        }
        (_, None) if engine == EngineChoice::External || spec.external_only => EngineRun {
            evidence: Evidence::Skipped {
                reason: "external-only task and no external binaries configured; input files emitted".into(),
            },
            stats: None,
            sizes: Vec::new(),
            artifacts: Vec::new(),
        },
        (EngineChoice::Model, _) => run_builtin_finder(spec, &cs, &budget)?,
        _ => run_builtin_prover(&cs, &budget)?,
    };
    artifacts.extend(run.artifacts);

    let mut verdict = interpret(&spec.theory, &run.evidence)?;
    if !verdict.is_unknown() {
        verdict.caveats.extend(premise_caveats);
        verdict.caveats.extend(spec.caveats.iter().cloned());
    }
    if let (Conclusion::CaseRefuted, Some(partner)) = (&verdict.conclusion, &spec.completes_case_split) {
        let joined = store
            .get(partner)
            .is_some_and(|r| r.verdict.conclusion == Conclusion::CaseRefuted);
        if joined {
            verdict.conclusion = refutation_conclusion(&spec.theory);
            verdict
                .caveats
                .push(format!("combined with the refuted complementary case in task {partner}"));
        } else {
            verdict
                .caveats
                .push(format!("the complementary case in task {partner} has not been refuted"));
        }
    }

    let expectation_met = spec.expect.as_ref().map(|e| match (e.outcome, &verdict.evidence) {
        (ExpectedOutcome::Refutation, Evidence::Proof { verified: true, .. }) => true,
        (ExpectedOutcome::Model, Evidence::Model { size, verified: true, .. }) => e.size.is_none_or(|s| s == *size),
        _ => false,
    });

    let mut paths = Vec::new();
    if let Some(dir) = &opts.out {
        for mut a in artifacts {
            a.task_id = spec.id.clone();
            let path = dir.join(a.file_name());
            write_file(&path, &a.payload)?;
            paths.push(path.display().to_string());
        }
    }
    let report = TaskReport {
        id: spec.id.clone(),
        title: spec.title.clone(),
        engine,
        verdict,
        seconds: start.elapsed().as_secs_f64(),
        prover_stats: run.stats,
        sizes: run.sizes,
        artifacts: paths,
        expectation_met,
        error: None,
    };
    if let Some(dir) = &opts.out {
        let json = serde_json::to_string_pretty(&report).expect("report serialises");
        write_file(&dir.join(format!("task_{}.json", spec.id)), &json)?;
    }
    Ok(report)
}

/// Orders tasks so that each comes after its dependencies present in the
/// list, keeping the given order otherwise.
pub fn dependency_order(tasks: &[TaskSpec]) -> Result<Vec<TaskSpec>, HarnessError> {
    let ids: BTreeSet<&str> = tasks.iter().map(|t| t.id.as_str()).collect();
    let mut done: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    let mut pending: Vec<&TaskSpec> = tasks.iter().collect();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|t| {
            let ready = t.depends.iter().all(|d| !ids.contains(d.as_str()) || done.contains(d));
            if ready {
                done.insert(t.id.clone());
                out.push((*t).clone());
            }
            !ready
        });
        if pending.len() == before {
            let stuck: Vec<_> = pending.iter().map(|t| t.id.as_str()).collect();
            return Err(HarnessError::Manifest(format!("dependency cycle among tasks {}", stuck.join(", "))));
        }
    }
    Ok(out)
}

/// Runs tasks in dependency order. Per-task errors become reports with
/// an `Unknown` verdict and the error recorded.
pub fn run_tasks(tasks: &[TaskSpec], opts: &RunOptions) -> Result<ReportStore, HarnessError> {
    let mut store = ReportStore::new();
    for spec in dependency_order(tasks)? {
        let report = match run_task(&spec, &store, opts) {
            Ok(r) => r,
            Err(e) => TaskReport {
                id: spec.id.clone(),
                title: spec.title.clone(),
                engine: spec.engine,
                verdict: Verdict::unknown(Evidence::Skipped { reason: e.to_string() }),
                seconds: 0.0,
                prover_stats: None,
                sizes: Vec::new(),
                artifacts: Vec::new(),
                expectation_met: spec.expect.as_ref().map(|_| false),
                error: Some(e.to_string()),
            },
        };
        store.push(report);
    }
    if let Some(dir) = &opts.out {
        store.write_index(dir)?;
    }
    Ok(store)
}

/// Runs the catalog tasks selected by `filter` together with the tasks
/// they depend on.
pub fn run_catalog(filter: &str, opts: &RunOptions) -> Result<ReportStore, HarnessError> {
    let tasks = super::catalog::select(&super::catalog::catalog()?, filter)?;
    run_tasks(&tasks, opts)
}

/// Finds a model of `Gr ∪ Ax_R` with the candidate disequations, jointly
/// if possible and otherwise adding candidates one at a time, and returns
/// the candidates that hold in the last model found.
pub fn discover_statements(p: &Presentation, candidates: &[(Term, Term)], budget: &SearchBudget) -> StatementSet {
    let empty = StatementSet::inequalities(std::iter::empty());
    let base = match build_axiom_group(&AxiomGroup::Gr, &p.vocabulary()) {
        Ok(mut cs) => {
            if cs.extend(&relations_to_axioms(p)).is_err() {
                return empty;
            }
            cs
        }
        Err(_) => return empty,
    };
    let with = |pairs: &[&(Term, Term)]| -> Option<FiniteModel> {
        let mut cs = base.clone();
        for (i, (s, t)) in pairs.iter().enumerate() {
            let c = Clause::new(vec![Literal::neq(s.clone(), t.clone())], Provenance::new("stmt", i as u32 + 1));
            cs.push(c).ok()?;
        }
        find_model(&cs, budget).ok()?.model
    };
    let all: Vec<&(Term, Term)> = candidates.iter().collect();
    let model = match with(&all) {
        Some(m) => Some(m),
        None => {
            let mut kept: Vec<&(Term, Term)> = Vec::new();
            let mut last = None;
            for c in candidates {
                kept.push(c);
                match with(&kept) {
                    Some(m) => last = Some(m),
                    None => {
                        kept.pop();
                    }
                }
            }
            last
        }
    };
    match model {
        Some(m) => extract_true_inequalities(&m, &base.vocab, candidates).unwrap_or(empty),
        None => empty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::parse_manifest;
    use crate::presentation::parse_presentation;

    fn tasks(text: &str) -> Vec<TaskSpec> {
        parse_manifest(text, &|n| Err(HarnessError::Manifest(n.into()))).unwrap()
    }

    const KLEIN: &str = r#"
        [presentations]
        klein = "< a, b | a^-1 b a = b^-1 >"

        [[task]]
        id = "m"
        presentation = "klein"
        question = { kind = "statements" }
        statements = { kind = "inequalities", items = [["b", "e"]] }
        engine = "model"
        budget = { max_size = 4 }
        expect = { outcome = "model", size = 2 }

        [[task]]
        id = "p"
        presentation = "klein"
        question = { kind = "bi-order" }
        groups = ["AxL", "OrdB"]
        statements = { kind = "inequalities", items = [["b", "e"]] }
        depends = ["m"]
        engine = "prover"
        budget = { seconds = 30 }
        expect = { outcome = "refutation" }
    "#;

    #[test]
    fn klein_tasks_run_in_order() {
        let mut ts = tasks(KLEIN);
        ts.reverse();
        let store = run_tasks(&ts, &RunOptions::default()).unwrap();
        let r = store.reports();
        assert_eq!(r[0].id, "m");
        assert!(matches!(r[0].verdict.conclusion, Conclusion::ConsistentAtSize { size: 2, .. }));
        assert_eq!(r[1].verdict.conclusion, Conclusion::NotBiOrderable);
        assert!(r.iter().all(|r| r.expectation_met == Some(true)));
    }

    #[test]
    fn missing_dependency_is_refused() {
        let ts = tasks(KLEIN);
        let err = run_task(&ts[1], &ReportStore::new(), &RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn timeout_gives_unknown() {
        let ts = tasks(
            r#"
            [[task]]
            id = "t"
            presentation = "< a, b | >"
            question = { kind = "left-order" }
            groups = ["AxL", "OrdL"]
            statements = { kind = "inequalities", items = [["a", "e"]] }
            engine = "prover"
            budget = { seconds = 0.3 }
        "#,
        );
        let r = run_task(&ts[0], &ReportStore::new(), &RunOptions::default()).unwrap();
        assert!(r.verdict.is_unknown());
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn artifacts_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let opts = RunOptions {
            out: Some(dir.path().to_path_buf()),
            ..RunOptions::default()
        };
        run_tasks(&tasks(KLEIN), &opts).unwrap();
        for f in ["index.json", "task_p.json", "task_p.p9.in", "task_p.p9.out", "task_m.m4.out", "task_m.p"] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
    }

    #[test]
    fn external_only_without_binaries_is_skipped() {
        let mut ts = tasks(KLEIN);
        ts[0].external_only = true;
        let r = run_task(&ts[0], &ReportStore::new(), &RunOptions::default()).unwrap();
        assert!(matches!(r.verdict.evidence, Evidence::Skipped { .. }));
    }

    #[test]
    fn discovery_on_klein_and_trivial_groups() {
        let p = parse_presentation("< a, b | a^-1 b a = b^-1 >").unwrap();
        let b = Term::constant(p.vocabulary().lookup("b").unwrap());
        let budget = SearchBudget::new(1, 4).unwrap();
        let found = discover_statements(&p, &[(Term::identity(), b)], &budget);
        assert_eq!(found.items.len(), 1);

        let trivial = parse_presentation("< a | a = e >").unwrap();
        let a = Term::constant(trivial.vocabulary().lookup("a").unwrap());
        assert!(discover_statements(&trivial, &[(Term::identity(), a)], &budget).is_empty());
    }
}
