//! Deterministic model export: DOT for eyes, JSON for tools, and the JSON
//! importer backing the model-checking subcommand.

use super::TransitionSystem;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("model JSON: {0}")]
    Shape(String),
}

pub fn export_dot(ts: &TransitionSystem) -> String {
    let mut out = String::from("digraph model {\n");
    for s in &ts.states {
        let _ = writeln!(out, "  s{} [label=\"{}: {{{}}}\"];", s.id, s.id, s.props.join(","));
    }
    let _ = writeln!(out, "  init [shape=point];");
    let _ = writeln!(out, "  init -> s{};", ts.initial);
    for (a, b) in &ts.edges {
        let _ = writeln!(out, "  s{a} -> s{b};");
    }
    out.push_str("}\n");
    out
}

pub fn export_json(ts: &TransitionSystem) -> String {
    let mut canonical = ts.clone();
    canonical.edges.sort();
    for (i, s) in canonical.states.iter_mut().enumerate() {
        s.id = i;
        s.props.sort();
    }
    serde_json::to_string_pretty(&canonical).expect("model serialization cannot fail") + "\n"
}

pub fn import_json(text: &str) -> Result<TransitionSystem, ExportError> {
    let ts: TransitionSystem = serde_json::from_str(text)?;
    let n = ts.states.len();
    if n == 0 {
        return Err(ExportError::Shape("model has no states".into()));
    }
    if ts.initial >= n {
        return Err(ExportError::Shape("initial state out of range".into()));
    }
    for (i, s) in ts.states.iter().enumerate() {
        if s.id != i {
            return Err(ExportError::Shape(format!("state ids must be 0..{}", n - 1)));
        }
    }
    for &(a, b) in &ts.edges {
        if a >= n || b >= n {
            return Err(ExportError::Shape(format!("edge ({a},{b}) out of range")));
        }
    }
    if !ts.is_total() {
        return Err(ExportError::Shape("transition system must be total".into()));
    }
    Ok(ts)
}
