//! The shipped task catalog, embedded at build time.

use super::manifest::{parse_manifest, TaskSpec};
use super::HarnessError;

const MANIFESTS: &[(&str, &str)] = &[
    ("klein_sl2.toml", include_str!("../../catalog/klein_sl2.toml")),
    ("fibonacci.toml", include_str!("../../catalog/fibonacci.toml")),
    ("braid_dihedral.toml", include_str!("../../catalog/braid_dihedral.toml")),
    ("poincare_knot.toml", include_str!("../../catalog/poincare_knot.toml")),
    ("weeks.toml", include_str!("../../catalog/weeks.toml")),
    ("fourfold.toml", include_str!("../../catalog/fourfold.toml")),
    ("hyde.toml", include_str!("../../catalog/hyde.toml")),
];

const MODELS: &[(&str, &str)] = &[("poincare_120.model", include_str!("../../catalog/poincare_120.model"))];

fn task_key(id: &str) -> Vec<u32> {
    id.split('.').map(|p| p.parse().unwrap_or(u32::MAX)).collect()
}

/// Every catalog task, sorted by id.
pub fn catalog() -> Result<Vec<TaskSpec>, HarnessError> {
    let resolve = |name: &str| {
        MODELS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| HarnessError::Manifest(format!("no shipped model file {name}")))
    };
    let mut out = Vec::new();
    for (file, text) in MANIFESTS {
        let tasks = parse_manifest(text, &resolve).map_err(|e| HarnessError::Manifest(format!("{file}: {e}")))?;
        out.extend(tasks);
    }
    out.sort_by_key(|t| task_key(&t.id));
    Ok(out)
}

fn matches(pattern: &str, id: &str) -> bool {
    match pattern.strip_suffix('*') {
        Some(prefix) => id.starts_with(prefix),
        None => pattern == id,
    }
}

/// Tasks whose id matches one of the comma-separated patterns (`1.2`,
/// `9.*`, or empty for all), plus their transitive dependencies.
pub fn select(tasks: &[TaskSpec], filter: &str) -> Result<Vec<TaskSpec>, HarnessError> {
    let patterns: Vec<&str> = filter.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let mut chosen: Vec<String> = tasks
        .iter()
        .filter(|t| patterns.is_empty() || patterns.iter().any(|p| matches(p, &t.id)))
        .map(|t| t.id.clone())
        .collect();
    if chosen.is_empty() {
        return Err(HarnessError::Manifest(format!("no catalog task matches `{filter}`")));
    }
    let mut i = 0;
    while i < chosen.len() {
        let t = tasks.iter().find(|t| t.id == chosen[i]).expect("chosen ids come from the list");
        for d in &t.depends {
            if !chosen.contains(d) {
                if !tasks.iter().any(|t| &t.id == d) {
                    return Err(HarnessError::Manifest(format!("task {} depends on unknown task {d}", t.id)));
                }
                chosen.push(d.clone());
            }
        }
        i += 1;
    }
    Ok(tasks.iter().filter(|t| chosen.contains(&t.id)).cloned().collect())
}
