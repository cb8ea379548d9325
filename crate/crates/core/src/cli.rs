//! Command-line front end. Every invocation produces one JSON report; exit status 0 means
//! the report contains no failures, 1 means a check failed, 2 means the run was refused or
//! an input could not be read.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::action::act_chain;
use crate::hochschild::{AInfinityStructure, AlgebraJson, Cochain, CochainJson};
use crate::homology::{self, ChainComplexData};
use crate::minimal_operad::{self as mo, MinimalOperad, TermJson};
use crate::operad::{Associative, DgOperad};
use crate::orders;
use crate::resolution;
use crate::trees::{PlanarTree, TreeJson};
use crate::verify::{self, CheckResult, OperadKind};

#[derive(Parser, Debug, Clone)]
#[command(name = "minop", version, about = "Minimal operad, its resolution, and the action on Hochschild cochains")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Override the arity limit above which runs are refused.
    #[arg(long, global = true)]
    pub max_arity: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadArg {
    #[value(name = "M")]
    M,
    #[value(name = "As")]
    As,
    #[value(name = "P-M")]
    PM,
    #[value(name = "P-As")]
    PAs,
}

impl From<OperadArg> for OperadKind {
    fn from(o: OperadArg) -> Self {
        match o {
            OperadArg::M => OperadKind::M,
            OperadArg::As => OperadKind::As,
            OperadArg::PM => OperadKind::PM,
            OperadArg::PAs => OperadKind::PAs,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DSquared,
    Leibniz,
    OperadAxioms,
    ActionAxioms,
    DgCompat,
    Gerstenhaber,
    Orders,
    All,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerate a basis in arity n.
    Basis {
        #[arg(long, value_enum)]
        operad: OperadArg,
        #[arg(long)]
        arity: usize,
        /// For P-M and P-As, list only generators (no infinite edges).
        #[arg(long)]
        generators: bool,
    },
    /// Betti numbers of the arity-n component.
    Betti {
        #[arg(long, value_enum)]
        operad: OperadArg,
        #[arg(long)]
        arity: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Operad for the d-squared suite (default: all of M, P-M, P-As).
        #[arg(long, value_enum)]
        operad: Option<OperadArg>,
        /// Main size bound of the suite.
        #[arg(long)]
        arity: Option<usize>,
        /// Arity cap for cochains.
        #[arg(long, default_value_t = 5)]
        cap: usize,
        /// Number of seeded samples for sampled checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Evaluate the action of an M-chain on cochains of an A∞-algebra.
    Act {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        cochains: PathBuf,
        /// Tree JSON, or an M-chain as a list of {coeff, tree}.
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },
    /// The meta-tree poset on P-M(n) within a degree window.
    Poset {
        #[arg(long)]
        arity: usize,
        #[arg(long, allow_hyphen_values = true)]
        min_degree: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        max_degree: Option<i64>,
    },
    /// Export the arity-n complex with its differential matrices.
    Export {
        #[arg(long, value_enum)]
        operad: OperadArg,
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

enum Failure {
    Refused { estimate: u128, limit: usize, arity: usize, exact: bool },
    Input { file: Option<String>, message: String },
}

fn input(file: Option<&Path>, message: impl ToString) -> Failure {
    Failure::Input { file: file.map(|p| p.display().to_string()), message: message.to_string() }
}

fn default_limit(kind: OperadKind) -> usize {
    match kind {
        OperadKind::M => 5,
        OperadKind::As => 8,
        OperadKind::PM => 4,
        OperadKind::PAs => 4,
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Size of the arity-n basis: exact for M and As, the size of the underlying operad
/// (a lower bound) for resolutions.
fn size_estimate(kind: OperadKind, n: usize) -> (u128, bool) {
    match kind {
        OperadKind::M => (verify::count_admissible(n), true),
        OperadKind::As => (factorial(n), true),
        OperadKind::PM => (verify::count_admissible(n), false),
        OperadKind::PAs => (factorial(n), false),
    }
}

fn guard(kind: OperadKind, n: usize, limit: Option<usize>) -> Result<(), Failure> {
    let limit = limit.unwrap_or_else(|| default_limit(kind));
    if n > limit {
        let (estimate, exact) = size_estimate(kind, n);
        return Err(Failure::Refused { estimate, limit, arity: n, exact });
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Outcome {
    let (name, config) = describe(cli);
    let result = match &cli.command {
        Command::Basis { operad, arity, generators } => basis(*operad, *arity, *generators, cli.max_arity),
        Command::Betti { operad, arity } => betti(*operad, *arity, cli.max_arity),
        Command::Export { operad, arity } => export(*operad, *arity, cli.max_arity),
        Command::Verify { suite, operad, arity, cap, samples } => {
            run_verify(*suite, *operad, *arity, *cap, *samples, cli.seed, cli.max_arity)
        }
        Command::Act { algebra, cochains, tree, cap } => act(algebra, cochains, tree, *cap),
        Command::Poset { arity, min_degree, max_degree } => poset(*arity, *min_degree, *max_degree, cli.max_arity),
    };
    let mut report = json!({ "command": name, "config": config });
    let exit_code = match result {
        Ok(Done::Result(v)) => {
            report["status"] = json!("pass");
            report["result"] = v;
            0
        }
        Ok(Done::Checks(mut checks)) => {
            checks.sort_by(|a, b| a.id.cmp(&b.id));
            let passed = checks.iter().all(|c| c.passed);
            report["status"] = json!(if passed { "pass" } else { "fail" });
            report["failed"] = json!(checks.iter().filter(|c| !c.passed).count());
            report["checks"] = serde_json::to_value(&checks).expect("serializable");
            if passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Refused { estimate, limit, arity, exact }) => {
            report["status"] = json!("refused");
            report["error"] = json!({
                "kind": "resource-bound",
                "message": format!("arity {arity} exceeds the limit {limit}; raise it with --max-arity"),
                "arity": arity,
                "limit": limit,
                "size_estimate": estimate.to_string(),
                "estimate_is_lower_bound": !exact,
            });
            2
        }
        Err(Failure::Input { file, message }) => {
            report["status"] = json!("error");
            report["error"] = json!({ "kind": "input", "file": file, "message": message });
            2
        }
    };
    Outcome { exit_code, report }
}

enum Done {
    Result(Value),
    Checks(Vec<CheckResult>),
}

fn describe(cli: &Cli) -> (&'static str, Value) {
    let base = json!({ "seed": cli.seed, "max_arity": cli.max_arity });
    let (name, extra) = match &cli.command {
        Command::Basis { operad, arity, generators } => {
            ("basis", json!({ "operad": OperadKind::from(*operad).to_string(), "arity": arity, "generators": generators }))
        }
        Command::Betti { operad, arity } => ("betti", json!({ "operad": OperadKind::from(*operad).to_string(), "arity": arity })),
        Command::Export { operad, arity } => ("export", json!({ "operad": OperadKind::from(*operad).to_string(), "arity": arity })),
        Command::Verify { suite, operad, arity, cap, samples } => (
            "verify",
            json!({
                "suite": suite.to_possible_value().expect("named").get_name(),
                "operad": operad.map(|o| OperadKind::from(o).to_string()),
                "arity": arity,
                "cap": cap,
                "samples": samples,
            }),
        ),
        Command::Act { algebra, cochains, tree, cap } => (
            "act",
            json!({ "algebra": algebra.display().to_string(), "cochains": cochains.display().to_string(), "tree": tree.display().to_string(), "cap": cap }),
        ),
        Command::Poset { arity, min_degree, max_degree } => {
            ("poset", json!({ "arity": arity, "min_degree": min_degree, "max_degree": max_degree }))
        }
    };
    let mut config = base;
    for (k, v) in extra.as_object().expect("object") {
        config[k] = v.clone();
    }
    (name, config)
}

fn element_strings<R: DgOperad>(r: &R, n: usize, generators: bool, resolved: bool) -> Vec<(String, i64)> {
    if resolved {
        let elems = if generators { resolution::generators(r, n) } else { resolution::basis_p(r, n) };
        elems.iter().map(|t| (t.to_string(), resolution::degree(r, t))).collect()
    } else {
        r.basis(n).iter().map(|x| (format!("{x:?}"), r.degree(x))).collect()
    }
}

fn basis(operad: OperadArg, n: usize, generators: bool, limit: Option<usize>) -> Result<Done, Failure> {
    let kind = OperadKind::from(operad);
    guard(kind, n, limit)?;
    let elems = match kind {
        OperadKind::M => mo::basis(n).iter().map(|t| (t.to_string(), mo::degree(t))).collect(),
        OperadKind::As => element_strings(&Associative, n, false, false),
        OperadKind::PM => element_strings(&MinimalOperad, n, generators, true),
        OperadKind::PAs => element_strings(&Associative, n, generators, true),
    };
    let mut per_degree = std::collections::BTreeMap::new();
    for (_, d) in &elems {
        *per_degree.entry(d.to_string()).or_insert(0usize) += 1;
    }
    Ok(Done::Result(json!({
        "count": elems.len(),
        "per_degree": per_degree,
        "elements": elems.iter().map(|(s, d)| json!({ "element": s, "degree": d })).collect::<Vec<_>>(),
    })))
}

/// The arity-n complex of an operad kind, checked for `d² = 0`.
pub fn complex(kind: OperadKind, n: usize) -> Result<ChainComplexData, homology::HomologyError> {
    match kind {
        OperadKind::M => homology::assemble(&mo::basis(n), mo::degree, mo::differential),
        OperadKind::As => {
            let names: Vec<String> = Associative.basis(n).iter().map(|x| format!("{x:?}")).collect();
            let mut c = ChainComplexData::default();
            if !names.is_empty() {
                let zero = homology::SparseMatrix { rows: 0, columns: vec![Vec::new(); names.len()] };
                c.basis.insert(0, names);
                c.differentials.insert(0, zero);
            }
            Ok(c)
        }
        OperadKind::PM => {
            homology::assemble(&resolution::basis_p(&MinimalOperad, n), |t| resolution::degree(&MinimalOperad, t), |t| {
                resolution::d_p(&MinimalOperad, t)
            })
        }
        OperadKind::PAs => {
            homology::assemble(&resolution::basis_p(&Associative, n), |t| resolution::degree(&Associative, t), |t| {
                resolution::d_p(&Associative, t)
            })
        }
    }
}

fn keyed<V: serde::Serialize>(m: &std::collections::BTreeMap<i64, V>) -> Value {
    let mut out = serde_json::Map::new();
    for (d, v) in m {
        out.insert(d.to_string(), serde_json::to_value(v).expect("serializable"));
    }
    Value::Object(out)
}

fn betti(operad: OperadArg, n: usize, limit: Option<usize>) -> Result<Done, Failure> {
    let kind = OperadKind::from(operad);
    guard(kind, n, limit)?;
    let c = complex(kind, n).map_err(|e| input(None, e))?;
    let b = homology::betti(&c);
    Ok(Done::Result(json!({
        "betti": keyed(&b.betti),
        "euler": b.euler,
        "dimensions": keyed(&c.dimensions()),
    })))
}

fn export(operad: OperadArg, n: usize, limit: Option<usize>) -> Result<Done, Failure> {
    let kind = OperadKind::from(operad);
    guard(kind, n, limit)?;
    let c = complex(kind, n).map_err(|e| input(None, e))?;
    Ok(Done::Result(c.to_json()))
}

fn run_verify(
    suite: Suite,
    operad: Option<OperadArg>,
    arity: Option<usize>,
    cap: usize,
    samples: usize,
    seed: u64,
    limit: Option<usize>,
) -> Result<Done, Failure> {
    let suites: Vec<Suite> = if suite == Suite::All {
        vec![
            Suite::DSquared,
            Suite::Leibniz,
            Suite::OperadAxioms,
            Suite::ActionAxioms,
            Suite::DgCompat,
            Suite::Gerstenhaber,
            Suite::Orders,
        ]
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for s in suites {
        match s {
            Suite::DSquared => {
                let kinds = match operad {
                    Some(o) => vec![(OperadKind::from(o), arity)],
                    None => vec![(OperadKind::M, None), (OperadKind::PM, None), (OperadKind::PAs, None)],
                };
                for (kind, a) in kinds {
                    let n = a.unwrap_or(match kind {
                        OperadKind::PM => 3,
                        _ => 4,
                    });
                    guard(kind, n, limit)?;
                    checks.extend(verify::d_squared(kind, n));
                }
            }
            Suite::Leibniz => {
                let n = arity.unwrap_or(3);
                guard(OperadKind::M, n + 1, limit.or(Some(6)))?;
                checks.extend(verify::leibniz(n, Some((n + 1, samples)), seed));
            }
            Suite::OperadAxioms => {
                let n = arity.unwrap_or(5);
                guard(OperadKind::M, n, limit.or(Some(5)))?;
                checks.extend(verify::operad_axioms(n.min(4), n, n.min(3)));
            }
            Suite::ActionAxioms => {
                let n = arity.unwrap_or(3);
                guard(OperadKind::M, n, limit.or(Some(4)))?;
                checks.extend(verify::action_axioms(n, cap, seed));
            }
            Suite::DgCompat => {
                let n = arity.unwrap_or(3);
                guard(OperadKind::M, n, limit.or(Some(4)))?;
                checks.extend(verify::dg_compat(n, 2, cap, seed));
            }
            Suite::Gerstenhaber => {
                checks.extend(verify::gerstenhaber(samples.max(1), cap, seed));
            }
            Suite::Orders => {
                let n = arity.unwrap_or(4);
                guard(OperadKind::PM, n, limit)?;
                checks.extend(verify::order_properties(n));
            }
            Suite::All => unreachable!(),
        }
    }
    Ok(Done::Checks(checks))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(Some(path), e))?;
    serde_json::from_str(&text).map_err(|e| input(Some(path), format!("schema: {e}")))
}

fn act(algebra: &Path, cochains: &Path, tree: &Path, cap: usize) -> Result<Done, Failure> {
    let aj: AlgebraJson = read_json(algebra)?;
    let m = AInfinityStructure::from_json(&aj).map_err(|e| input(Some(algebra), e))?;
    let space: Arc<_> = m.space().clone();
    let cj: Vec<CochainJson> = read_json(cochains)?;
    let gammas = cj
        .iter()
        .map(|j| Cochain::from_json(&space, j))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| input(Some(cochains), e))?;
    let tv: Value = read_json(tree)?;
    let chain = if tv.is_array() {
        let terms: Vec<TermJson> = serde_json::from_value(tv).map_err(|e| input(Some(tree), format!("schema: {e}")))?;
        mo::chain_from_json(&terms).map_err(|e| input(Some(tree), e))?
    } else {
        let tj: TreeJson = serde_json::from_value(tv).map_err(|e| input(Some(tree), format!("schema: {e}")))?;
        crate::Chain::basis(PlanarTree::from_json(&tj).map_err(|e| input(Some(tree), e))?)
    };
    match act_chain(&chain, &gammas, &m, cap).map_err(|e| input(None, e))? {
        Some(c) => Ok(Done::Result(serde_json::to_value(c.to_json()).expect("serializable"))),
        None => Ok(Done::Result(Value::Null)),
    }
}

fn poset(n: usize, lo: Option<i64>, hi: Option<i64>, limit: Option<usize>) -> Result<Done, Failure> {
    guard(OperadKind::PM, n, limit)?;
    let window = (lo.unwrap_or(i64::MIN), hi.unwrap_or(i64::MAX));
    let p = orders::meta_tree_poset(n, window).map_err(|e| match e {
        orders::OrderError::WindowTooLarge(size, bound) => {
            Failure::Refused { estimate: size as u128, limit: bound, arity: n, exact: true }
        }
        e => input(None, e),
    })?;
    let mut per_degree = serde_json::Map::new();
    for (d, c) in &p.per_degree {
        per_degree.insert(d.to_string(), json!(c));
    }
    Ok(Done::Result(json!({
        "elements": p.elements.iter().zip(&p.degrees).map(|(e, d)| json!({ "element": e, "degree": d })).collect::<Vec<_>>(),
        "covers": p.covers,
        "relation_size": p.relation_size,
        "per_degree": per_degree,
    })))
}

/// Plain-text rendering of a report.
pub fn render_table(report: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", report["command"].as_str().unwrap_or("?"), report["status"].as_str().unwrap_or("?")));
    if let Some(checks) = report["checks"].as_array() {
        for c in checks {
            out.push_str(&format!(
                "{:<48} {:<5} cases={} failures={}\n",
                c["id"].as_str().unwrap_or(""),
                if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                c["cases"],
                c["failures"]
            ));
        }
    }
    if let Some(r) = report.get("result") {
        if let Some(b) = r.get("betti").and_then(Value::as_object) {
            out.push_str("degree  dim  betti\n");
            let dims = r["dimensions"].as_object();
            let mut ds: Vec<i64> = b.keys().filter_map(|k| k.parse().ok()).collect();
            ds.sort_unstable_by(|a, b| b.cmp(a));
            for d in ds {
                let k = d.to_string();
                out.push_str(&format!("{d:>6} {:>4} {:>6}\n", dims.map_or(json!(null), |m| m[&k].clone()), b[&k]));
            }
            out.push_str(&format!("euler {}\n", r["euler"]));
        } else if let Some(c) = r.get("count") {
            out.push_str(&format!("count {c}\n"));
            if let Some(es) = r["elements"].as_array() {
                for e in es {
                    out.push_str(&format!("{:>4}  {}\n", e["degree"], e["element"].as_str().unwrap_or("")));
                }
            }
        } else {
            out.push_str(&serde_json::to_string_pretty(r).expect("serializable"));
            out.push('\n');
        }
    }
    if let Some(e) = report.get("error") {
        out.push_str(&format!("error: {}\n", e["message"].as_str().unwrap_or("")));
    }
    out
}

/// Parses arguments, runs, prints the report, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n",
        Format::Table => render_table(&outcome.report),
    };
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes());
    outcome.exit_code
}
