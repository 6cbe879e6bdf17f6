use std::error::Error;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use diograph::conditions::{check_against, CheckOptions, ConditionCheck, ConditionReport, Overall, Verdict};
use diograph::format::{parse_graph, serialize_graph, GraphFormat};
use diograph::labeler::{find_labeling, LabelOptions, LabelVerdict, LabelingOutcome, DEFAULT_LABEL_BUDGET};
use diograph::maximal::{self, DiophantineRule, DnProfile, LabelRule, ProfileOptions, DEFAULT_BUILD_CAP};
use diograph::numtheory::{PrimeTable, DEFAULT_SIEVE_LIMIT};
use diograph::report::{profiles_csv, profiles_text};
use diograph::solver::{ExactOptions, DEFAULT_MAX_ORDER, DEFAULT_NODE_BUDGET};
use diograph::{Graph, Label};

const SIEVE_ENV: &str = "DIOGRAPH_SIEVE_LIMIT";

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    /// Not Diophantine, no labeling, an invalid certificate or an audit mismatch.
    Negative = 1,
    /// A budget or time limit ran out before a verdict.
    Unknown = 2,
    Input = 3,
}

#[derive(Parser)]
#[command(name = "diograph", version, about = "Maximal Diophantine graphs: construction, invariants, conditions and labeling")]
struct Cli {
    /// Output encoding. Graph commands default to edges; reports print text unless this is json.
    #[arg(long, global = true)]
    format: Option<GraphFormat>,
    /// Input graph encoding; by default guessed from the file extension.
    #[arg(long, global = true)]
    input_format: Option<GraphFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximal Diophantine graph of order N (vertex i carries label i).
    Build { n: Label },
    /// Print the closed-form invariants of D_N as JSON.
    Profile {
        n: Label,
        /// Cross-check the closed forms against the built graph with exact solvers.
        #[arg(long)]
        audit: bool,
    },
    /// Tabulate invariants of D_n for A <= n <= B.
    Table {
        a: Label,
        b: Label,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        audit: bool,
    },
    /// Evaluate the six necessary conditions and the sufficient condition.
    Check {
        #[arg(long)]
        graph: PathBuf,
        /// Compare against D_N; the graph is padded with isolated vertices up to N.
        #[arg(long)]
        n: Option<Label>,
        #[arg(long)]
        early_exit: bool,
        /// Largest order handed to the exact clique solvers.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search for a Diophantine labeling.
    Label {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Re-encode a graph file.
    Export {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check a claimed labeling.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// `v l` lines, a JSON list of [v, l] pairs, or the JSON output of `label`.
        #[arg(long)]
        labels: PathBuf,
    },
}

#[derive(Args)]
struct Limits {
    /// Search-node budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock ceiling in seconds, checked on top of the node budget.
    #[arg(long)]
    timeout: Option<f64>,
}

impl Limits {
    fn deadline(&self) -> CliResult<Option<Instant>> {
        match self.timeout {
            None => Ok(None),
            Some(s) if s.is_finite() && s >= 0.0 => Ok(Some(Instant::now() + Duration::from_secs_f64(s))),
            Some(s) => Err(format!("bad timeout {s}").into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Input as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, status)) => {
            print!("{out}");
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Input as u8)
        }
    }
}

fn run(cli: &Cli) -> CliResult<(String, Status)> {
    let graph_format = cli.format.unwrap_or(GraphFormat::EdgeList);
    let json = cli.format == Some(GraphFormat::Json);
    match &cli.command {
        Command::Build { n } => {
            let d = maximal::build_dn_with_cap(*n, DEFAULT_BUILD_CAP)?;
            Ok((serialize_graph(d.graph(), graph_format), Status::Ok))
        }
        Command::Profile { n, audit } => {
            let table = prime_table(*n)?;
            let p = profile(*n, &table, *audit)?;
            let status = audit_status(std::slice::from_ref(&p));
            Ok((to_json(&p)?, status))
        }
        Command::Table { a, b, csv, audit } => {
            if a > b || *a == 0 {
                return Err(format!("bad range {a}..={b}").into());
            }
            let table = prime_table(*b)?;
            let rows = (*a..=*b)
                .into_par_iter()
                .map(|n| profile(n, &table, *audit))
                .collect::<diograph::Result<Vec<_>>>()?;
            let out = if *csv { profiles_csv(&rows) } else { profiles_text(&rows) };
            Ok((out, audit_status(&rows)))
        }
        Command::Check { graph, n, early_exit, max_order, limits } => {
            let mut g = read_graph(graph, cli.input_format)?;
            if let Some(n) = n {
                g = pad(&g, *n)?;
            }
            let order = g.order() as Label;
            if order == 0 {
                return Err("the graph has no vertices".into());
            }
            let table = prime_table(order)?;
            let dn = maximal::profile(order, &table)?;
            let opts = CheckOptions {
                exact: ExactOptions {
                    node_budget: limits.budget.unwrap_or(DEFAULT_NODE_BUDGET),
                    max_order: *max_order,
                    deadline: limits.deadline()?,
                },
                early_exit: *early_exit,
            };
            let report = check_against(&g, &dn, &opts)?;
            let status = match report.overall {
                Overall::NotDiophantine => Status::Negative,
                _ if report.has_unknown() => Status::Unknown,
                _ => Status::Ok,
            };
            let out = if json { to_json(&report)? } else { render_report(&report) };
            Ok((out, status))
        }
        Command::Label { graph, limits } => {
            let g = read_graph(graph, cli.input_format)?;
            let rule = DiophantineRule::new(g.order() as Label);
            let opts = LabelOptions {
                node_budget: limits.budget.unwrap_or(DEFAULT_LABEL_BUDGET),
                deadline: limits.deadline()?,
            };
            let outcome = find_labeling(&g, &rule, &opts)?;
            let status = match outcome.verdict {
                LabelVerdict::Labeled => Status::Ok,
                LabelVerdict::None => Status::Negative,
                LabelVerdict::Unknown => Status::Unknown,
            };
            let out = if json { to_json(&outcome)? } else { render_labeling(&outcome) };
            Ok((out, status))
        }
        Command::Export { graph } => {
            let g = read_graph(graph, cli.input_format)?;
            Ok((serialize_graph(&g, graph_format), Status::Ok))
        }
        Command::Verify { graph, labels } => {
            let g = read_graph(graph, cli.input_format)?;
            let labels = read_labels(labels, g.order())?;
            let rule = DiophantineRule::new(g.order() as Label);
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            if sorted != rule.universe() {
                return Err(format!("labels must be a permutation of 1..={}", g.order()).into());
            }
            let violations: Vec<[Label; 2]> = g
                .edges()
                .into_iter()
                .map(|(u, v)| [labels[u - 1], labels[v - 1]])
                .filter(|[a, b]| !rule.compatible(a, b))
                .collect();
            let valid = violations.is_empty();
            let out = if json {
                to_json(&Verification { valid, violations: &violations })?
            } else if valid {
                "valid\n".to_string()
            } else {
                let mut s = String::from("invalid\n");
                for [a, b] in &violations {
                    let _ = writeln!(s, "labels {a} and {b} are adjacent but gcd does not divide {}", g.order());
                }
                s
            };
            Ok((out, if valid { Status::Ok } else { Status::Negative }))
        }
    }
}

#[derive(Serialize)]
struct Verification<'a> {
    valid: bool,
    /// Label pairs on edges whose gcd does not divide the order.
    violations: &'a [[Label; 2]],
}

fn prime_table(limit: Label) -> CliResult<PrimeTable> {
    let cap = match std::env::var(SIEVE_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("{SIEVE_ENV}: not a number: `{v}`"))?,
        Err(_) => DEFAULT_SIEVE_LIMIT,
    };
    let limit = usize::try_from(limit).map_err(|_| "order too large")?;
    Ok(PrimeTable::with_cap(limit.max(2), cap)?)
}

fn profile(n: Label, table: &PrimeTable, audit: bool) -> diograph::Result<DnProfile> {
    if !audit {
        return maximal::profile(n, table);
    }
    let opts = ProfileOptions {
        audit_cap: n,
        exact: ExactOptions::default().max_order(n as usize),
    };
    maximal::profile_with(n, table, &opts)
}

fn audit_status(rows: &[DnProfile]) -> Status {
    let audits = rows.iter().filter_map(|p| p.audit.as_ref());
    let mut status = Status::Ok;
    for a in audits {
        if !a.mismatches.is_empty() {
            eprintln!("audit mismatch: {}", a.mismatches.join(", "));
            return Status::Negative;
        }
        if a.clique_number_exact.value().is_none() || a.independence_number_exact.value().is_none() {
            status = Status::Unknown;
        }
    }
    status
}

fn read_graph(path: &Path, format: Option<GraphFormat>) -> CliResult<Graph> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let format = format.unwrap_or_else(|| GraphFormat::from_path(path));
    parse_graph(&text, format).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn pad(g: &Graph, n: Label) -> CliResult<Graph> {
    let n = usize::try_from(n)?;
    if n < g.order() {
        return Err(format!("--n {n} is below the graph order {}", g.order()).into());
    }
    Ok(Graph::from_edges(n, g.edges())?)
}

/// Labels in vertex order, from `v l` lines or JSON pairs.
fn read_labels(path: &Path, order: usize) -> CliResult<Vec<Label>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let pairs: Vec<(usize, Label)> = match serde_json::from_str::<Value>(&text) {
        Ok(value) => {
            let list = match &value {
                Value::Object(map) => map.get("labeling").cloned().unwrap_or(Value::Null),
                other => other.clone(),
            };
            serde_json::from_value(list).map_err(|e| format!("{}: expected [[vertex, label], ...]: {e}", path.display()))?
        }
        Err(_) => {
            let mut pairs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let body = line.split('#').next().unwrap_or("");
                let fields: Vec<&str> = body.split_whitespace().collect();
                match fields.as_slice() {
                    [] => continue,
                    [v, l] => match (v.parse(), l.parse()) {
                        (Ok(v), Ok(l)) => pairs.push((v, l)),
                        _ => return Err(format!("{}:{}: expected two integers", path.display(), i + 1).into()),
                    },
                    _ => return Err(format!("{}:{}: expected `vertex label`", path.display(), i + 1).into()),
                }
            }
            pairs
        }
    };
    let mut labels = vec![None; order];
    for (v, l) in pairs {
        let slot = v
            .checked_sub(1)
            .and_then(|i| labels.get_mut(i))
            .ok_or_else(|| format!("vertex {v} is outside 1..={order}"))?;
        if slot.replace(l).is_some() {
            return Err(format!("vertex {v} is labeled twice").into());
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| format!("vertex {} has no label", i + 1).into()))
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Unknown => "UNKNOWN",
        Verdict::Skipped => "SKIPPED",
    }
}

fn render_report(r: &ConditionReport) -> String {
    let value = |x: Option<Label>| x.map_or("?".to_string(), |v| v.to_string());
    let line = |name: &str, what: &str, op: &str, c: &ConditionCheck| {
        let detail = match (c.verdict, c.k) {
            (Verdict::Skipped, _) => String::new(),
            (_, Some(k)) => format!("{what} up to degree {k}: {} {op} {}", value(c.lhs), value(c.rhs)),
            _ => format!("{what}: {} {op} {}", value(c.lhs), value(c.rhs)),
        };
        format!("{name:<3}{:<8}{detail}\n", verdict_word(c.verdict)).trim_end().to_string() + "\n"
    };
    let mut s = format!("n = {}\n", r.n);
    s += &line("C1", "edges", "<=", &r.c1);
    s += &line("C2", "full-degree vertices", "<=", &r.c2);
    s += &line("C3", "clique number", "<=", &r.c3);
    s += &line("C4", "independence number", ">=", &r.c4);
    s += &line("C5", "minimum degree", "<=", &r.c5);
    if r.c6.k.is_some() || r.c6.verdict != Verdict::Pass {
        s += &line("C6", "vertices", ">=", &r.c6);
    } else {
        s += "C6 PASS    degree-count prefix sums dominate\n";
    }
    s += &line("S", "independence number", ">=", &r.sufficient);
    let overall = match r.overall {
        Overall::PossiblyDiophantine => "possibly-diophantine",
        Overall::NotDiophantine => "not-diophantine",
        Overall::DiophantineBySufficiency => "diophantine-by-sufficiency",
    };
    let _ = writeln!(s, "degree counts {}, D_{} {}", r.degree_sequence, r.n, r.dn_degree_sequence);
    let _ = writeln!(s, "overall: {overall}");
    s
}

fn render_labeling(o: &LabelingOutcome) -> String {
    let verdict = match o.verdict {
        LabelVerdict::Labeled => "labeled",
        LabelVerdict::None => "none",
        LabelVerdict::Unknown => "unknown",
    };
    let mut s = format!("verdict: {verdict}\nnodes expanded: {}\n", o.nodes_expanded);
    if o.verdict == LabelVerdict::Unknown {
        let _ = writeln!(s, "deepest partial labeling: {} vertices", o.best_depth);
    }
    for (v, l) in o.certificate().unwrap_or_default() {
        let _ = writeln!(s, "{v} {l}");
    }
    s
}
