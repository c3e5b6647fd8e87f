//! Verification reports.
//!
//! The JSON form (`--json`) has this shape; field order is fixed and no
//! timing or host information is included, so identical inputs give
//! byte-identical output:
//!
//! ```text
//! {
//!   "schema": "cohaq.verify/1",
//!   "quiver": { "vertices": [..], "edges": n, "torus_rank": n, "symmetric": b, "tripled": b },
//!   "options": { "max_dim": n, "seed": n, ... },
//!   "suites": [
//!     { "name": "psi", "identity": "...", "status": "pass" | "fail" | "skipped",
//!       "cases": n, "passed": n, "skipped_reason": null | "...",
//!       "failures": [ { "identity": "...", "component": "...", "first_difference": "..." } ] }
//!   ],
//!   "passed": b
//! }
//! ```

use std::fmt::Write as _;

use coha_core::Quiver;
use serde::Serialize;

use crate::suites::SuiteOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub identity: String,
    pub component: String,
    pub first_difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub identity: String,
    pub status: Status,
    pub cases: usize,
    pub passed: usize,
    pub skipped_reason: Option<String>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverSummary {
    pub vertices: Vec<String>,
    pub edges: usize,
    pub torus_rank: usize,
    pub symmetric: bool,
    pub tripled: bool,
}

impl QuiverSummary {
    pub fn of(q: &Quiver) -> Self {
        QuiverSummary {
            vertices: q.vertices().to_vec(),
            edges: q.edges().len(),
            torus_rank: q.torus_rank(),
            symmetric: q.is_symmetric(),
            tripled: q.is_tripled(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OptionsSummary {
    pub max_dim: u32,
    pub seed: u64,
    pub random_classes: usize,
    pub class_degree: u32,
    pub generator_degree: u32,
    pub taut_order: usize,
    pub phi_order: usize,
    pub yangian_order: usize,
    pub max_exp: u32,
    pub bps_order: i64,
    pub hexagon_correction: bool,
}

impl OptionsSummary {
    pub fn of(o: &SuiteOptions) -> Self {
        OptionsSummary {
            max_dim: o.max_dim,
            seed: o.seed,
            random_classes: o.random_classes,
            class_degree: o.class_degree,
            generator_degree: o.generator_degree,
            taut_order: o.taut_order,
            phi_order: o.phi_order,
            yangian_order: o.yangian_order,
            max_exp: o.max_exp,
            bps_order: o.bps_order,
            hexagon_correction: o.hexagon_correction,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub quiver: QuiverSummary,
    pub options: OptionsSummary,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn new(q: &Quiver, o: &SuiteOptions, suites: Vec<SuiteReport>) -> Self {
        let passed = suites.iter().all(|s| s.status != Status::Fail);
        VerifyReport {
            schema: "cohaq.verify/1",
            quiver: QuiverSummary::of(q),
            options: OptionsSummary::of(o),
            suites,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "quiver: {} vertices, {} edges, torus rank {}{}{}",
            q.vertices.len(),
            q.edges,
            q.torus_rank,
            if q.symmetric { ", symmetric" } else { "" },
            if q.tripled { ", tripled" } else { "" }
        );
        let _ = writeln!(out, "max |d| = {}, seed = {}", self.options.max_dim, self.options.seed);
        for s in &self.suites {
            let counts = match s.status {
                Status::Skipped => format!("({})", s.skipped_reason.as_deref().unwrap_or("")),
                _ => format!("{}/{}", s.passed, s.cases),
            };
            let _ = writeln!(out, "{:<14} {:<8} {}", s.name, s.status.as_str(), counts);
            for f in &s.failures {
                let _ = writeln!(out, "  {} [{}]: first difference {}", f.identity, f.component, f.first_difference);
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }
}
