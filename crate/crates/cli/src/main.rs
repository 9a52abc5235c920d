//! `ordo`: compile orderability questions about finitely presented groups,
//! run the built-in prover and model finder, and report verdicts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordo::harness::{
    self, discover_statements, parse_manifest, run_catalog, run_tasks, Conclusion, EngineChoice, HarnessError,
    ReportStore, RunOptions, TaskReport, TaskSpec,
};
use ordo::interop::{emit_mace4, emit_prover9, emit_tptp, Prover9Options};
use ordo::kernel::display::{clause_to_formula, VarNames};
use ordo::modelfinder::{check_model, find_model, FiniteModel, SearchBudget};
use ordo::presentation::parse_presentation;
use ordo::prover::{saturate, verify_proof, Proof, Status};

#[derive(Parser)]
#[command(name = "ordo", version, about = "Orderability of finitely presented groups by saturation and finite models")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Prover time limit, or per-size limit for the model finder
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Maximum number of kept clauses
    #[arg(long, global = true)]
    max_clauses: Option<usize>,
    /// Model sizes to search, as `a..b`
    #[arg(long, global = true, value_parser = parse_sizes)]
    sizes: Option<(usize, usize)>,
    /// Engine family for `run` and `catalog`
    #[arg(long, global = true, value_enum)]
    engine: Option<EngineFlag>,
    /// Directory for reports and emitted files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory containing `prover9` and `mace4`
    #[arg(long, global = true)]
    external_bin: Option<PathBuf>,
    /// Print reports as JSON
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineFlag {
    Builtin,
    External,
}

#[derive(Subcommand)]
enum Command {
    /// Write Prover9, Mace4 and TPTP input files for manifest tasks
    Compile(TaskArgs),
    /// Run the saturation prover on manifest tasks, ignoring dependencies
    Prove(TaskArgs),
    /// Run the model finder on manifest tasks, ignoring dependencies
    Model(TaskArgs),
    /// Re-check a stored proof or model against a task's theory
    Verify {
        manifest: PathBuf,
        #[arg(long)]
        task: String,
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        proof: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Run manifest tasks in dependency order and report verdicts
    Run(TaskArgs),
    /// Run the shipped catalog, or the tasks matching a filter such as `1.*,16.2`
    Catalog {
        #[arg(default_value = "")]
        filter: String,
        /// List tasks without running them
        #[arg(long)]
        list: bool,
    },
    /// Search for a finite quotient confirming candidate disequations
    Discover {
        /// Presentation such as `< a, b | a^-1 b a = b^-1 >`
        presentation: String,
        /// Candidate pairs `s=t`, meaning the statement `s != t`
        #[arg(long = "candidate", required = true)]
        candidates: Vec<String>,
    },
}

#[derive(Args)]
struct TaskArgs {
    manifest: PathBuf,
    /// Only these task ids
    #[arg(long)]
    task: Vec<String>,
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("empty size range {a}..{b}"));
    }
    Ok((a, b))
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(harness::EXIT_INPUT as u8)
}

fn load_tasks(args: &TaskArgs) -> Result<Vec<TaskSpec>, HarnessError> {
    let text = fs::read_to_string(&args.manifest)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", args.manifest.display())))?;
    let base = args.manifest.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = move |name: &str| {
        let path = base.join(name);
        fs::read_to_string(&path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
    };
    let tasks = parse_manifest(&text, &resolve)?;
    if args.task.is_empty() {
        return Ok(tasks);
    }
    for id in &args.task {
        if !tasks.iter().any(|t| &t.id == id) {
            return Err(HarnessError::Manifest(format!("no task {id} in {}", args.manifest.display())));
        }
    }
    Ok(tasks.into_iter().filter(|t| args.task.contains(&t.id)).collect())
}

fn options(c: &Common) -> RunOptions {
    RunOptions {
        out: c.out.clone(),
        external_bin: c.external_bin.clone(),
        engine: c.engine.and_then(|e| match e {
            EngineFlag::Builtin => None,
            EngineFlag::External => Some(EngineChoice::External),
        }),
        seconds: c.budget_seconds,
        max_clauses: c.max_clauses,
        sizes: c.sizes,
    }
}

fn conclusion_text(c: &Conclusion) -> String {
    match c {
        Conclusion::IsTorsion { term } => format!("IsTorsion({term})"),
        Conclusion::IsGeneralisedTorsion { term } => format!("IsGeneralisedTorsion({term})"),
        Conclusion::MonoidMembership { t1, t2 } => format!("MonoidMembership({t2}' in <{t2}, C({t1})>)"),
        Conclusion::InClosure { target, generators } => format!("InClosure({target} in cl({}))", generators.join(", ")),
        Conclusion::ConsistentAtSize { size, .. } => format!("ConsistentAtSize({size})"),
        other => format!("{other:?}"),
    }
}

fn print_reports(store: &ReportStore, json: bool) -> ExitCode {
    let reports = store.reports();
    if json {
        println!("{}", serde_json::to_string_pretty(reports).expect("reports serialise"));
    } else {
        for r in reports {
            print_report(r);
        }
    }
    let code = if reports.iter().any(|r| r.error.is_some()) {
        harness::EXIT_INPUT
    } else if reports.iter().any(|r| r.verdict.is_unknown()) {
        harness::EXIT_UNKNOWN
    } else {
        harness::EXIT_VERDICT
    };
    ExitCode::from(code as u8)
}

fn print_report(r: &TaskReport) {
    println!("task {:<6} {:<40} {:>8.2}s", r.id, conclusion_text(&r.verdict.conclusion), r.seconds);
    println!("    {}", r.verdict.justification);
    if let Some(e) = &r.error {
        println!("    error: {e}");
    }
    if let Conclusion::ConsistentAtSize { confirmed, .. } = &r.verdict.conclusion {
        for s in confirmed {
            println!("    holds: {s}");
        }
    }
    for c in &r.verdict.caveats {
        println!("    caveat: {c}");
    }
    if r.expectation_met == Some(false) {
        println!("    note: outcome differs from the recorded expectation");
    }
}

fn compile_cmd(args: &TaskArgs, common: &Common) -> ExitCode {
    let tasks = match load_tasks(args) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    for t in &tasks {
        let cs = match t.compile() {
            Ok(cs) => cs,
            Err(e) => return input_error(format!("task {}: {e}", t.id)),
        };
        let opts = Prover9Options {
            max_seconds: Some(common.budget_seconds.unwrap_or(t.budget.seconds).ceil() as u32),
            ..Prover9Options::default()
        };
        let (min, max) = common.sizes.unwrap_or((t.budget.min_size, t.budget.max_size));
        let files = [
            ("p9.in", emit_prover9(&cs, &opts)),
            ("m4.in", emit_mace4(&cs, min, max)),
            ("p", emit_tptp(&cs)),
        ];
        for (ext, text) in files {
            let text = match text {
                Ok(t) => t,
                Err(e) => return input_error(format!("task {}: {e}", t.id)),
            };
            match &common.out {
                Some(dir) => {
                    let path = dir.join(format!("task_{}.{ext}", t.id));
                    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, text)) {
                        return input_error(format!("{}: {e}", path.display()));
                    }
                    println!("{}", path.display());
                }
                None if ext == "p9.in" => print!("% task {}\n{text}", t.id),
                None => {}
            }
        }
    }
    ExitCode::SUCCESS
}

fn prove_cmd(args: &TaskArgs, common: &Common) -> ExitCode {
    let tasks = match load_tasks(args) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let opts = options(common);
    let mut code = harness::EXIT_VERDICT;
    for t in &tasks {
        let cs = match t.compile() {
            Ok(cs) => cs,
            Err(e) => return input_error(format!("task {}: {e}", t.id)),
        };
        let limits = {
            let mut b = t.budget;
            b.seconds = opts.seconds.unwrap_or(b.seconds);
            b.max_clauses = opts.max_clauses.unwrap_or(b.max_clauses);
            b.limits()
        };
        let out = match saturate(&cs, &limits) {
            Ok(o) => o,
            Err(e) => return input_error(e),
        };
        println!(
            "task {}: {:?} in {:.2}s (given {}, generated {}, kept {})",
            t.id, out.status, out.seconds, out.stats.given, out.stats.generated, out.stats.kept
        );
        match (&out.status, &out.proof) {
            (Status::Refutation, Some(proof)) => {
                let checked = verify_proof(proof, &cs);
                println!("    proof of {} steps, checker: {}", proof.steps.len(), match &checked {
                    Ok(()) => "accepted".to_string(),
                    Err(e) => format!("rejected ({e})"),
                });
                if checked.is_err() {
                    code = harness::EXIT_UNKNOWN;
                }
                if let Some(dir) = &common.out {
                    let path = dir.join(format!("task_{}.proof", t.id));
                    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, proof.to_text(&cs.vocab))) {
                        return input_error(format!("{}: {e}", path.display()));
                    }
                    println!("    written to {}", path.display());
                }
            }
            _ => code = harness::EXIT_UNKNOWN,
        }
    }
    ExitCode::from(code as u8)
}

fn model_cmd(args: &TaskArgs, common: &Common) -> ExitCode {
    let tasks = match load_tasks(args) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let mut code = harness::EXIT_VERDICT;
    for t in &tasks {
        let cs = match t.compile() {
            Ok(cs) => cs,
            Err(e) => return input_error(format!("task {}: {e}", t.id)),
        };
        let (min, max) = common.sizes.unwrap_or((t.budget.min_size, t.budget.max_size));
        let budget = match SearchBudget::new(min, max) {
            Ok(b) => b.with_seconds(common.budget_seconds.unwrap_or(t.budget.seconds)),
            Err(e) => return input_error(e),
        };
        let report = match find_model(&cs, &budget) {
            Ok(r) => r,
            Err(e) => return input_error(e),
        };
        for s in &report.sizes {
            println!("task {} size {:>3}: {:?} in {:.2}s", t.id, s.size, s.result, s.seconds);
        }
        match &report.model {
            Some(m) => {
                if let Some(dir) = &common.out {
                    let path = dir.join(format!("task_{}.model", t.id));
                    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, m.to_text())) {
                        return input_error(format!("{}: {e}", path.display()));
                    }
                    println!("    written to {}", path.display());
                }
            }
            None => code = harness::EXIT_UNKNOWN,
        }
    }
    ExitCode::from(code as u8)
}

fn verify_cmd(manifest: &Path, task: &str, proof: Option<&Path>, model: Option<&Path>) -> ExitCode {
    let args = TaskArgs {
        manifest: manifest.to_path_buf(),
        task: vec![task.to_string()],
    };
    let spec = match load_tasks(&args) {
        Ok(mut t) => t.remove(0),
        Err(e) => return input_error(e),
    };
    let cs = match spec.compile() {
        Ok(cs) => cs,
        Err(e) => return input_error(e),
    };
    let (path, result) = match (proof, model) {
        (Some(p), _) => {
            let text = match fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", p.display())),
            };
            let proof = match Proof::parse(&text, &cs.vocab) {
                Ok(pr) => pr,
                Err(e) => return input_error(format!("{}: {e}", p.display())),
            };
            (p, verify_proof(&proof, &cs).map_err(|e| e.to_string()))
        }
        (None, Some(m)) => {
            let text = match fs::read_to_string(m) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", m.display())),
            };
            let model = match FiniteModel::from_text(&text) {
                Ok(fm) => fm,
                Err(e) => return input_error(format!("{}: {e}", m.display())),
            };
            (m, check_model(&model, &cs).map_err(|e| e.to_string()))
        }
        (None, None) => return input_error("give --proof or --model"),
    };
    match result {
        Ok(()) => {
            println!("{}: accepted for task {}", path.display(), spec.id);
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}: rejected for task {}: {e}", path.display(), spec.id);
            ExitCode::from(harness::EXIT_UNKNOWN as u8)
        }
    }
}

fn discover_cmd(presentation: &str, candidates: &[String], common: &Common) -> ExitCode {
    let p = match parse_presentation(presentation) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let mut pairs = Vec::new();
    for c in candidates {
        let Some((s, t)) = c.split_once('=') else {
            return input_error(format!("candidate `{c}` is not of the form s=t"));
        };
        let term = |w: &str| {
            p.parse_word(w.trim())
                .map_err(|e| e.to_string())
                .and_then(|w| p.word_to_term(&w, &p.vocabulary()).map_err(|e| e.to_string()))
        };
        match (term(s), term(t)) {
            (Ok(s), Ok(t)) => pairs.push((s, t)),
            (Err(e), _) | (_, Err(e)) => return input_error(format!("candidate `{c}`: {e}")),
        }
    }
    let (min, max) = common.sizes.unwrap_or((1, 8));
    let budget = match SearchBudget::new(min, max) {
        Ok(b) => match common.budget_seconds {
            Some(s) => b.with_seconds(s),
            None => b,
        },
        Err(e) => return input_error(e),
    };
    let found = discover_statements(&p, &pairs, &budget);
    let lifted = ordo::theories::lift_statements(&found, found.kind, &p.vocabulary());
    match lifted {
        Ok(cs) if !cs.is_empty() => {
            for c in &cs {
                println!("{}", clause_to_formula(c, &cs.vocab, VarNames::Letters));
            }
            ExitCode::SUCCESS
        }
        _ => {
            println!("no candidate confirmed in sizes {min}..{max}");
            ExitCode::from(harness::EXIT_UNKNOWN as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = &cli.common;
    match &cli.command {
        Command::Compile(args) => compile_cmd(args, common),
        Command::Prove(args) => prove_cmd(args, common),
        Command::Model(args) => model_cmd(args, common),
        Command::Verify {
            manifest,
            task,
            proof,
            model,
        } => verify_cmd(manifest, task, proof.as_deref(), model.as_deref()),
        Command::Run(args) => match load_tasks(args).and_then(|t| run_tasks(&t, &options(common))) {
            Ok(store) => print_reports(&store, common.json),
            Err(e) => input_error(e),
        },
        Command::Catalog { filter, list } => {
            if *list {
                return match harness::catalog() {
                    Ok(tasks) => {
                        for t in tasks {
                            println!("{:<6} {:?}  {}", t.id, t.engine, t.title);
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => input_error(e),
                };
            }
            match run_catalog(filter, &options(common)) {
                Ok(store) => print_reports(&store, common.json),
                Err(e) => input_error(e),
            }
        }
        Command::Discover {
            presentation,
            candidates,
        } => discover_cmd(presentation, candidates, common),
    }
}
