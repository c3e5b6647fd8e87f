//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use coha_core::cohomology::CohClass;
use coha_core::coproducts::{delta_loc, delta_z, shuffle_product, Twist};
use coha_core::enumerative::{bps_invariants, check_integrality, check_reconstruction};
use coha_core::extdata::{r_matrix, RMode};
use coha_core::{Frac, Quiver, Var};
use serde::Serialize;

use crate::expr::{parse_class, parse_dim};
use crate::quiver_io::load_quiver;
use crate::report::VerifyReport;
use crate::suites::{run_suite, Suite, SuiteOptions, YangianChecks};
use crate::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "cohaq", version, about = "Exact verification of cohomological Hall algebra identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identity suites on a quiver.
    Verify(VerifyArgs),
    /// Print an R-matrix component.
    Rmatrix(RmatrixArgs),
    /// Print the localised or vertex coproduct of a class.
    Coproduct(CoproductArgs),
    /// Multiply two classes in the shuffle algebra.
    CohaMult(CohaMultArgs),
    /// Check Yangian relations and coproducts on the tripled quiver.
    Yangian(YangianArgs),
    /// Extract BPS series from the CoHA character.
    Bps(BpsArgs),
    /// List the identity suites.
    ListSuites {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct QuiverArg {
    /// Quiver JSON file, or `builtin:<name>`.
    #[arg(long)]
    quiver: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    /// Suite name, comma-separated names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 3)]
    max_dim: u32,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Random classes in the davison-joyce suite.
    #[arg(long, default_value_t = 20)]
    classes: usize,
    /// q-order for the bps suite.
    #[arg(long, default_value_t = 20)]
    bps_order: i64,
    /// z⁻¹-order for the Drinfeld comparison.
    #[arg(long, default_value_t = 8)]
    yangian_order: usize,
    /// Bound on generator exponents in the yangian suite.
    #[arg(long, default_value_t = 4)]
    max_exp: u32,
    /// Control run: drop the χ̃ factors from the tautological hexagons.
    #[arg(long)]
    uncorrected_hexagons: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    #[value(alias = "loc")]
    Localised,
    #[value(alias = "taut")]
    Tautological,
}

#[derive(Debug, Args)]
struct RmatrixArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    #[arg(long)]
    d1: String,
    #[arg(long)]
    d2: String,
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,
    /// Also print the expansion in z⁻¹ through this order.
    #[arg(long)]
    order: Option<i64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoproductKind {
    Vertex,
    #[value(alias = "loc")]
    Localised,
}

#[derive(Debug, Args)]
struct CoproductArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    /// Dimension of the class, e.g. `2` or `1,1`.
    #[arg(long)]
    dim: String,
    /// Class expression, e.g. `p[1,1]^2 + h`.
    #[arg(long, default_value = "1")]
    class: String,
    #[arg(long)]
    d1: String,
    #[arg(long)]
    d2: String,
    #[arg(long, value_enum, default_value = "vertex")]
    kind: CoproductKind,
    /// Also print the expansion in z⁻¹ through this order.
    #[arg(long)]
    order: Option<i64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TwistArg {
    None,
    Chi,
    Triangular,
}

#[derive(Debug, Args)]
struct CohaMultArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    #[arg(long)]
    dim1: String,
    #[arg(long, default_value = "1")]
    class1: String,
    #[arg(long)]
    dim2: String,
    #[arg(long, default_value = "1")]
    class2: String,
    #[arg(long, value_enum, default_value = "none")]
    twist: TwistArg,
}

#[derive(Debug, Args)]
struct YangianArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    /// Comma-separated subset of r2, r3, drinfeld.
    #[arg(long, default_value = "r2,r3,drinfeld")]
    check: String,
    /// z⁻¹-order for the Drinfeld comparison.
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 4)]
    max_exp: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BpsArgs {
    #[command(flatten)]
    quiver: QuiverArg,
    #[arg(long, default_value_t = 4)]
    max_dim: u32,
    #[arg(long, default_value_t = 20)]
    order: i64,
    #[arg(long)]
    json: bool,
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return exit::USAGE;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit::USAGE
        }
    }
}

fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("COHAQ_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("COHAQ_THREADS must be a positive integer, got {v:?}"))?;
        anyhow::ensure!(n > 0, "COHAQ_THREADS must be positive");
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

fn parse_suites(spec: &str) -> Result<Vec<Suite>, CliError> {
    if spec == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    spec.split(',')
        .map(|name| {
            Suite::from_name(name.trim()).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                CliError::Usage(format!("unknown suite '{name}'; valid suites: {}, all", names.join(", ")))
            })
        })
        .collect()
}

fn run_suites(q: Quiver, suites: &[Suite], o: &SuiteOptions, json: bool) -> (String, i32) {
    let q = Arc::new(q);
    let reports = suites.iter().map(|s| run_suite(*s, &q, o)).collect();
    let report = VerifyReport::new(&q, o, reports);
    let code = if report.passed { exit::OK } else { exit::IDENTITY_FAILED };
    (if json { report.to_json() } else { report.to_text() }, code)
}

fn dispatch(cmd: Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::ListSuites { json } => Ok((list_suites(json), exit::OK)),
        Command::Verify(a) => {
            let suites = parse_suites(&a.suite)?;
            let q = load_quiver(&a.quiver.quiver)?;
            let mut o = SuiteOptions::new(a.max_dim);
            o.seed = a.seed;
            o.random_classes = a.classes;
            o.bps_order = a.bps_order;
            o.yangian_order = a.yangian_order.max(1);
            o.max_exp = a.max_exp;
            o.hexagon_correction = !a.uncorrected_hexagons;
            Ok(run_suites(q, &suites, &o, a.json))
        }
        Command::Yangian(a) => {
            let mut checks = YangianChecks { r2: false, r3: false, drinfeld: false };
            for c in a.check.split(',') {
                match c.trim() {
                    "r2" => checks.r2 = true,
                    "r3" => checks.r3 = true,
                    "drinfeld" => checks.drinfeld = true,
                    other => {
                        return Err(CliError::Usage(format!("unknown check '{other}'; valid: r2, r3, drinfeld")))
                    }
                }
            }
            if a.order == 0 {
                return Err(CliError::Usage(String::from("--order must be at least 1")));
            }
            let base = load_quiver(&a.quiver.quiver)?;
            let q = if base.is_tripled() { base } else { base.triple() };
            let mut o = SuiteOptions::new(1);
            o.yangian_order = a.order;
            o.max_exp = a.max_exp;
            o.yangian_checks = checks;
            Ok(run_suites(q, &[Suite::Yangian], &o, a.json))
        }
        Command::Rmatrix(a) => {
            let q = load_quiver(&a.quiver.quiver)?;
            let n = q.vertex_count();
            let (d1, d2) = (parse_dim(&a.d1, n)?, parse_dim(&a.d2, n)?);
            let mode = match a.mode {
                ModeArg::Full => RMode::Full,
                ModeArg::Localised => RMode::Localised,
                ModeArg::Tautological => RMode::Tautological,
            };
            let r = r_matrix(&q, &d1, &d2, mode)?;
            Ok((fraction_output(&r, a.order)?, exit::OK))
        }
        Command::Coproduct(a) => {
            let q = load_quiver(&a.quiver.quiver)?;
            let n = q.vertex_count();
            let dim = parse_dim(&a.dim, n)?;
            let (d1, d2) = (parse_dim(&a.d1, n)?, parse_dim(&a.d2, n)?);
            let class = CohClass::new(dim.clone(), parse_class(&a.class, &dim)?)?;
            let f = match a.kind {
                CoproductKind::Vertex => delta_z(&q, &class, &d1, &d2)?,
                CoproductKind::Localised => delta_loc(&q, &class, &d1, &d2)?,
            };
            Ok((fraction_output(&f, a.order)?, exit::OK))
        }
        Command::CohaMult(a) => {
            let q = load_quiver(&a.quiver.quiver)?;
            let n = q.vertex_count();
            let (e1, e2) = (parse_dim(&a.dim1, n)?, parse_dim(&a.dim2, n)?);
            let c1 = CohClass::new(e1.clone(), parse_class(&a.class1, &e1)?)?;
            let c2 = CohClass::new(e2.clone(), parse_class(&a.class2, &e2)?)?;
            let twist = match a.twist {
                TwistArg::None => Twist::None,
                TwistArg::Chi => Twist::Chi,
                TwistArg::Triangular => Twist::Triangular,
            };
            let p = shuffle_product(&q, &c1, &c2, twist)?;
            Ok((format!("dim: {}\nclass: {}\n", p.dim, p.poly.to_canonical()), exit::OK))
        }
        Command::Bps(a) => bps(a),
    }
}

fn fraction_output(f: &Frac, order: Option<i64>) -> Result<String, CliError> {
    let mut s = format!("{}\n", f.to_canonical());
    if let Some(order) = order {
        let series = f.expand(Var::Z, order)?;
        s.push_str("expansion:\n");
        s.push_str(&series.to_canonical());
    }
    Ok(s)
}

#[derive(Serialize)]
struct SuiteEntry {
    name: &'static str,
    identity: &'static str,
}

fn list_suites(json: bool) -> String {
    if json {
        let list: Vec<SuiteEntry> = Suite::ALL.iter().map(|s| SuiteEntry { name: s.name(), identity: s.identity() }).collect();
        let mut s = serde_json::to_string_pretty(&list).expect("serialises");
        s.push('\n');
        s
    } else {
        Suite::ALL.iter().map(|s| format!("{:<14} {}\n", s.name(), s.identity())).collect()
    }
}

#[derive(Serialize)]
struct BpsRow {
    dim: Vec<u32>,
    omega: String,
    integral: bool,
}

#[derive(Serialize)]
struct BpsReport {
    schema: &'static str,
    max_dim: u32,
    order: i64,
    rows: Vec<BpsRow>,
    integral: bool,
    reconstruction: bool,
}

fn bps(a: BpsArgs) -> Result<(String, i32), CliError> {
    if a.order < 1 {
        return Err(CliError::Usage(String::from("--order must be at least 1")));
    }
    let q = load_quiver(&a.quiver.quiver)?;
    let omega = bps_invariants(&q, a.max_dim, a.order)?;
    let integral = check_integrality(&omega).is_pass();
    let reconstruction = check_reconstruction(&q, a.max_dim, a.order)?.is_pass();
    let rows: Vec<BpsRow> = omega
        .iter()
        .map(|(d, s)| BpsRow { dim: d.components().to_vec(), omega: s.to_canonical(), integral: s.is_integral() })
        .collect();
    let code = if integral && reconstruction { exit::OK } else { exit::IDENTITY_FAILED };
    let report = BpsReport { schema: "cohaq.bps/1", max_dim: a.max_dim, order: a.order, rows, integral, reconstruction };
    let text = if a.json {
        let mut s = serde_json::to_string_pretty(&report).expect("serialises");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for r in &report.rows {
            let d: Vec<String> = r.dim.iter().map(u32::to_string).collect();
            s.push_str(&format!("Ω({}) = {}\n", d.join(","), r.omega));
        }
        s.push_str(&format!("integrality: {}\n", if integral { "pass" } else { "FAIL" }));
        s.push_str(&format!("reconstruction: {}\n", if reconstruction { "pass" } else { "FAIL" }));
        s
    };
    Ok((text, code))
}
