//! Quiver files and built-in quivers.
//!
//! ```json
//! {
//!   "vertices": ["1", "2"],
//!   "edges": [{ "src": "1", "tgt": "2", "weight": [1] }],
//!   "torus_rank": 1,
//!   "tripled": false
//! }
//! ```
//!
//! `weight` lists the coefficients `n_k` of the edge class `Σ n_k ℏ_k / 2`;
//! it defaults to zero. `tripled: true` replaces the quiver by its tripling.
//! Instead of a path, `builtin:<name>` selects one of the standard quivers.

use std::path::Path;

use coha_core::Quiver;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
    torus_rank: Option<usize>,
    #[serde(default)]
    tripled: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    src: String,
    tgt: String,
    #[serde(default)]
    weight: Vec<i64>,
}

/// Names accepted after `builtin:`.
pub const BUILTINS: &[&str] = &[
    "g-loop-0", "g-loop-1", "g-loop-2", "g-loop-3", "jordan", "a2", "a3", "triple-a1", "triple-a2", "triple-a3",
];

/// A built-in quiver: `g-loop-<g>` (zero weights), `jordan` (loop of weight
/// `ℏ/2`), `a<n>` (linear orientation) or `triple-a<n>`.
pub fn builtin(name: &str) -> Option<Quiver> {
    if let Some(g) = name.strip_prefix("g-loop-") {
        return g.parse().ok().filter(|&g: &usize| g <= 16).map(|g| Quiver::g_loop(g, vec![]));
    }
    if name == "jordan" {
        return Some(Quiver::g_loop(1, vec![1]));
    }
    let (tripled, rest) = match name.strip_prefix("triple-") {
        Some(r) => (true, r),
        None => (false, name),
    };
    let n: usize = rest.strip_prefix('a')?.parse().ok().filter(|&n| (1..=8).contains(&n))?;
    let q = Quiver::a_n(n);
    Some(if tripled { q.triple() } else { q })
}

/// Parses the JSON text of a quiver file.
pub fn parse_quiver(text: &str, origin: &str) -> Result<Quiver, CliError> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| CliError::QuiverJson {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rank = file.torus_rank.unwrap_or_else(|| file.edges.iter().map(|e| e.weight.len()).max().unwrap_or(0));
    let edges: Vec<(String, String, Vec<i64>)> = file.edges.into_iter().map(|e| (e.src, e.tgt, e.weight)).collect();
    let q = Quiver::from_ids(file.vertices, &edges, rank)
        .map_err(|e| CliError::InvalidQuiver { path: origin.to_string(), message: e.to_string() })?;
    Ok(if file.tripled { q.triple() } else { q })
}

/// Loads a quiver from a path or a `builtin:` name.
pub fn load_quiver(spec: &str) -> Result<Quiver, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| {
            CliError::Usage(format!("unknown built-in quiver '{name}'; available: {}", BUILTINS.join(", ")))
        });
    }
    let text = std::fs::read_to_string(Path::new(spec))
        .map_err(|e| CliError::Io { path: spec.to_string(), message: e.to_string() })?;
    parse_quiver(&text, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weighted_jordan() {
        let q = parse_quiver(r#"{"vertices":["v"],"edges":[{"src":"v","tgt":"v","weight":[1]}]}"#, "t").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.torus_rank(), 1);
    }

    #[test]
    fn reports_position_of_bad_json() {
        let err = parse_quiver("{\n  \"vertices\": [\"1\"],\n  \"edgez\": []\n}", "bad.json").unwrap_err();
        match err {
            CliError::QuiverJson { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let err = parse_quiver(r#"{"vertices":["1"],"edges":[{"src":"1","tgt":"2"}]}"#, "t").unwrap_err();
        assert!(matches!(err, CliError::InvalidQuiver { .. }));
    }

    #[test]
    fn builtins_resolve() {
        for name in BUILTINS {
            assert!(builtin(name).is_some(), "{name}");
        }
        assert!(builtin("triple-a2").unwrap().is_tripled());
        assert!(builtin("b2").is_none());
    }
}
