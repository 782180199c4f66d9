//! `betakc`: compile, count and inspect β-acyclic CNF formulas.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input
//! error, 3 refusal because a cap or step budget would be exceeded.
//! Results go to stdout and are deterministic for fixed arguments; timings
//! and diagnostics go to stderr.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use betakc::circuit::{CircuitError, NnfCircuit};
use betakc::cnf::{brute_force_count, CnfError, CnfFormula, Var};
use betakc::compiler::{compile, CompileError};
use betakc::dimacs::{parse_dimacs, write_dimacs};
use betakc::dpll::{run_dpll, DpllError, OrderStrategy};
use betakc::examples::chain;
use betakc::hypergraph::{beta_elimination_order, EliminationOrder, Hypergraph, VertexSet};
use betakc::lowerbound::graph::{incidence_graph, Graph};
use betakc::lowerbound::hat::{hat, hat_order, hat_preserves_beta};
use betakc::lowerbound::mimw::{exact_mimw, node_widths, DEFAULT_MIMW_CAP, EXACT_MIMW_CAP};
use betakc::lowerbound::rectangle::{min_rectangle_cover, ExplicitFunction};
use betakc::lowerbound::LabError;
use betakc::nnf::{read_nnf, write_nnf};
use betakc::random::{beta_cnf, rng, CnfParams};
use betakc::tree::BinaryTree;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;
use thiserror::Error;

const DEFAULT_CAP_VARS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "betakc", version, about = "Decision-DNNF compilation and model counting for β-acyclic CNF")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Largest variable count any exhaustive enumeration may visit.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_vars: Option<u64>,
    /// Step budget for DPLL runs.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for random suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON lines instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Explicit elimination order, one vertex id per line.
    #[arg(long, global = true, value_name = "FILE")]
    order: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide β-acyclicity and print an elimination order.
    Check { cnf: PathBuf },
    /// Print the greedy β-elimination order, one vertex per line.
    Order { cnf: PathBuf },
    /// Compile to a decision-DNNF and report its size.
    Compile {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count models over the declared variables.
    Count {
        cnf: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Compile)]
        method: Method,
    },
    /// Check a circuit's structure and its equivalence with a formula.
    Verify {
        nnf: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Run the caching DPLL counter and optionally write its trace.
    Dpll {
        cnf: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::ReverseBeta)]
        strategy: Strategy,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add one fresh variable per clause.
    Hat {
        cnf: PathBuf,
        /// Verify that (c_1, …, c_m, x_1, …, x_n) is a β-elimination order instead of printing the formula.
        #[arg(long)]
        check: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// MIM-width of a decomposition, or exact MIM-width of a small graph.
    Mimw {
        /// Edge list, or a DIMACS file with `--cnf` for its incidence graph.
        graph: PathBuf,
        #[arg(long)]
        cnf: bool,
        /// Branch decomposition in parenthesised form; exact search if absent.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    /// Minimum (Y, Z)-rectangle cover of a small formula.
    Rectcover {
        cnf: PathBuf,
        /// Comma-separated Y variables.
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<Var>,
        /// Comma-separated Z variables; defaults to the remaining variables.
        #[arg(long, value_delimiter = ',')]
        z: Vec<Var>,
    },
    /// Compile a seeded random suite or the chain family and report sizes.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        /// Instances for the random family; largest n for the chain family.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Compile,
    Dpll,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    ReverseBeta,
    Fixed,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Random,
    Chain,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Refused(_) => 3,
        }
    }
}

impl From<CompileError> for CliError {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::NotBetaAcyclic(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DpllError> for CliError {
    fn from(e: DpllError) -> Self {
        match e {
            DpllError::Budget(_) => CliError::Refused(e.to_string()),
            DpllError::NotBetaAcyclic(_) => CliError::Failed(e.to_string()),
            DpllError::Hypergraph(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::CapExceeded { .. } => CliError::Refused(e.to_string()),
            CircuitError::NotDecisionDnnf(_) | CircuitError::NotDecomposable(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CnfError> for CliError {
    fn from(e: CnfError) -> Self {
        match e {
            CnfError::CapExceeded { .. } => CliError::Refused(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::CapExceeded { .. } => CliError::Refused(e.to_string()),
            LabError::NotBetaAcyclic(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), CliError>;

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_cnf(path: &Path) -> Result<CnfFormula, CliError> {
    let parsed = parse_dimacs(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.formula)
}

fn load_order(global: &Global) -> Result<Option<EliminationOrder>, CliError> {
    let Some(path) = &global.order else { return Ok(None) };
    let text = String::from_utf8(read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    EliminationOrder::parse_text(&text)
        .map(Some)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// `H(F)` without the empty edge of an empty clause.
fn clause_hypergraph(f: &CnfFormula) -> Hypergraph {
    Hypergraph::new(f.clauses().iter().map(|c| c.vars()).filter(|e| !e.is_empty())).expect("empty edges are filtered")
}

/// Declared variables together with any used beyond the header.
fn counting_domain(f: &CnfFormula) -> VertexSet {
    let mut d: VertexSet = (1..=f.declared_vars()).collect();
    d.extend(f.vars());
    d
}

fn joined(vs: impl IntoIterator<Item = Var>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn cap_vars(global: &Global, default: usize) -> usize {
    global.cap_vars.map_or(default, |c| c as usize)
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Check { cnf } => check(g, &load_cnf(cnf)?),
        Command::Order { cnf } => {
            let order = beta_elimination_order(&clause_hypergraph(&load_cnf(cnf)?))
                .map_err(|e| CliError::Failed(e.to_string()))?;
            for v in order.sequence() {
                println!("{v}");
            }
            Ok(())
        }
        Command::Compile { cnf, output } => compile_cmd(g, &load_cnf(cnf)?, output.as_deref()),
        Command::Count { cnf, method } => {
            let count = count_cmd(g, &load_cnf(cnf)?, *method)?;
            println!("{count}");
            Ok(())
        }
        Command::Verify { nnf, against } => verify(g, nnf, &load_cnf(against)?),
        Command::Dpll { cnf, strategy, output } => dpll_cmd(g, &load_cnf(cnf)?, *strategy, output.as_deref()),
        Command::Hat { cnf, check, output } => hat_cmd(g, &load_cnf(cnf)?, *check, output.as_deref()),
        Command::Mimw { graph, cnf, tree } => mimw_cmd(g, graph, *cnf, tree.as_deref()),
        Command::Rectcover { cnf, y, z } => rectcover(g, &load_cnf(cnf)?, y, z),
        Command::Bench { family, count } => bench(g, *family, *count),
    }
}

fn check(g: &Global, f: &CnfFormula) -> Outcome {
    let h = clause_hypergraph(f);
    let result = match load_order(g)? {
        Some(order) => order.check_covers(&h).and_then(|()| order.check_beta(&h)).map(|()| order).map_err(|e| e.to_string()),
        None => beta_elimination_order(&h).map_err(|e| e.to_string()),
    };
    match result {
        Ok(order) => {
            if g.json {
                println!("{}", json!({"beta_acyclic": true, "order": order.sequence()}));
            } else {
                println!("β-acyclic");
                println!("order: {}", joined(order.sequence().iter().copied()));
            }
            Ok(())
        }
        Err(reason) => {
            if g.json {
                println!("{}", json!({"beta_acyclic": false, "reason": reason}));
            } else {
                println!("not β-acyclic");
            }
            Err(CliError::Failed(reason))
        }
    }
}

fn compile_cmd(g: &Global, f: &CnfFormula, output: Option<&Path>) -> Outcome {
    let order = load_order(g)?;
    let (circuit, report) = compile(f, order.as_ref())?;
    eprintln!("compiled in {} µs", report.wall_time_us);
    let mut value = serde_json::to_value(&report).expect("report serialises");
    value.as_object_mut().expect("report is an object").remove("wall_time_us");
    if g.json {
        println!("{value}");
    } else {
        println!("vars: {}", report.vars);
        println!("clauses: {}", report.clauses);
        println!("size: {}", report.size);
        println!("components: {}", report.components);
        println!("gates: {}", report.gates);
        println!("nnf_size: {} (budget {})", report.nnf_size, report.gate_budget);
        println!("max_and_fanin: {} (edges {})", report.max_and_fanin, report.edges);
        println!("order: {}", joined(report.order.iter().copied()));
    }
    if let Some(path) = output {
        write_out(Some(path), &write_nnf(&circuit))?;
    }
    Ok(())
}

fn dpll_strategy(g: &Global, strategy: Strategy) -> Result<OrderStrategy, CliError> {
    Ok(match strategy {
        Strategy::ReverseBeta => OrderStrategy::ReverseBetaElimination,
        Strategy::Lex => OrderStrategy::LexicographicFallback,
        Strategy::Fixed => {
            let order = load_order(g)?.ok_or_else(|| CliError::Usage("--strategy fixed needs --order FILE".into()))?;
            OrderStrategy::FixedSequence(order.sequence().to_vec())
        }
    })
}

fn count_cmd(g: &Global, f: &CnfFormula, method: Method) -> Result<BigUint, CliError> {
    let domain = counting_domain(f);
    let free = domain.len() - f.vars().len();
    match method {
        Method::Compile => {
            let (circuit, _) = compile(f, load_order(g)?.as_ref())?;
            Ok(circuit.count_models(&domain)?)
        }
        Method::Dpll => {
            let strategy = if beta_elimination_order(&clause_hypergraph(f)).is_ok() {
                OrderStrategy::ReverseBetaElimination
            } else {
                OrderStrategy::LexicographicFallback
            };
            Ok(run_dpll(f, &strategy, g.budget)?.count << free)
        }
        Method::Brute => Ok(brute_force_count(f, &domain, cap_vars(g, DEFAULT_CAP_VARS))?),
    }
}

fn verify(g: &Global, nnf: &Path, f: &CnfFormula) -> Outcome {
    let circuit: NnfCircuit = read_nnf(&read(nnf)?).map_err(|e| CliError::Usage(format!("{}: {e}", nnf.display())))?;
    let cap = cap_vars(g, DEFAULT_CAP_VARS);
    let decomposable = circuit.check_decomposable();
    let decision = circuit.check_decision();
    let equivalent = circuit.equivalent_to_formula(f, cap)?;
    let deterministic = circuit.check_deterministic(cap)?;
    let verdict = |r: &Result<(), _>| r.is_ok();
    if g.json {
        println!(
            "{}",
            json!({
                "decomposable": verdict(&decomposable),
                "decision": verdict(&decision),
                "deterministic": verdict(&deterministic),
                "equivalent": equivalent,
            })
        );
    } else {
        let show = |name: &str, r: &Result<(), betakc::circuit::Violation>| match r {
            Ok(()) => println!("{name}: ok"),
            Err(v) => println!("{name}: FAILED ({v})"),
        };
        show("decomposable", &decomposable);
        show("decision", &decision);
        show("deterministic", &deterministic);
        println!("equivalent: {}", if equivalent { "ok" } else { "FAILED" });
    }
    if decomposable.is_ok() && decision.is_ok() && deterministic.is_ok() && equivalent {
        Ok(())
    } else {
        Err(CliError::Failed("circuit failed verification".into()))
    }
}

fn dpll_cmd(g: &Global, f: &CnfFormula, strategy: Strategy, output: Option<&Path>) -> Outcome {
    let s = dpll_strategy(g, strategy)?;
    let run = run_dpll(f, &s, g.budget)?;
    if g.json {
        println!("{}", json!({"count": run.count.to_string(), "stats": run.stats}));
    } else {
        println!("{}", run.count);
        let st = &run.stats;
        println!(
            "decisions {} splits {} cache_hits {} cache_misses {} cache_entries {} peak_residuals {} steps {}",
            st.decisions, st.splits, st.cache_hits, st.cache_misses, st.cache_entries, st.peak_residuals, st.steps
        );
    }
    if let Some(path) = output {
        write_out(Some(path), &write_nnf(&run.circuit))?;
    }
    Ok(())
}

fn hat_cmd(g: &Global, f: &CnfFormula, check: bool, output: Option<&Path>) -> Outcome {
    if !check {
        return write_out(output, &write_dimacs(&hat(f)));
    }
    let order = hat_order(f)?;
    let ok = hat_preserves_beta(f)?;
    if g.json {
        println!("{}", json!({"preserved": ok, "order": order.sequence()}));
    } else {
        println!("{}", if ok { "β-acyclic with fresh variables first" } else { "order is not a β-elimination order" });
        println!("order: {}", joined(order.sequence().iter().copied()));
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("hat order check failed".into()))
    }
}

fn mimw_cmd(g: &Global, path: &Path, cnf: bool, tree: Option<&Path>) -> Outcome {
    let graph = if cnf {
        incidence_graph(&load_cnf(path)?).graph
    } else {
        let text = String::from_utf8(read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Graph::parse_text(&text)?
    };
    match tree {
        Some(tp) => {
            let text = String::from_utf8(read(tp)?).map_err(|e| CliError::Usage(format!("{}: {e}", tp.display())))?;
            let t = BinaryTree::parse(text.trim()).map_err(|e| CliError::Usage(format!("{}: {e}", tp.display())))?;
            let widths = node_widths(&graph, &t, cap_vars(g, DEFAULT_MIMW_CAP))?;
            let width = widths.iter().map(|(_, w)| *w).max().unwrap_or(0);
            if g.json {
                let nodes: Vec<_> = widths.iter().map(|(s, w)| json!({"leaves": s, "width": w})).collect();
                println!("{}", json!({"mimw": width, "nodes": nodes}));
            } else {
                println!("{width}");
            }
        }
        None => {
            let (width, t) = exact_mimw(&graph, cap_vars(g, EXACT_MIMW_CAP))?;
            if g.json {
                println!("{}", json!({"mimw": width, "tree": t.to_parens()}));
            } else {
                println!("{width}");
                println!("{}", t.to_parens());
            }
        }
    }
    Ok(())
}

fn rectcover(g: &Global, f: &CnfFormula, y: &[Var], z: &[Var]) -> Outcome {
    let y: VertexSet = y.iter().copied().collect();
    let z: VertexSet = if z.is_empty() {
        f.vars().difference(&y).copied().collect()
    } else {
        z.iter().copied().collect()
    };
    let all: BTreeSet<Var> = y.union(&z).copied().collect();
    let func = ExplicitFunction::from_formula(f, &all)?;
    let cover = min_rectangle_cover(&func, &y, &z)?;
    if g.json {
        println!("{}", json!({"size": cover.size, "rectangles": cover.rectangles}));
    } else {
        println!("{}", cover.size);
    }
    Ok(())
}

fn bench(g: &Global, family: Family, count: usize) -> Outcome {
    let formulas: Vec<CnfFormula> = match family {
        Family::Random => {
            let mut r = rng(g.seed);
            (0..count).map(|_| beta_cnf(&mut r, &CnfParams::default())).collect()
        }
        Family::Chain => (1..=count.div_ceil(10)).map(|i| chain(10 * i as Var)).collect(),
    };
    let mut failures = 0;
    for f in &formulas {
        let (circuit, report) = compile(f, None)?;
        let ok = report.within_budget() && report.fanin_within_edges();
        let equivalent = if f.vars().len() <= cap_vars(g, DEFAULT_CAP_VARS) {
            Some(circuit.equivalent_to_formula(f, cap_vars(g, DEFAULT_CAP_VARS))?)
        } else {
            None
        };
        if !ok || equivalent == Some(false) {
            failures += 1;
        }
        if g.json {
            println!(
                "{}",
                json!({
                    "size": report.size,
                    "nnf_size": report.nnf_size,
                    "fanin": report.max_and_fanin,
                    "budget": report.gate_budget,
                    "within_bounds": ok,
                    "equivalent": equivalent,
                })
            );
        } else {
            println!(
                "size {:>4} nnf_size {:>5} fanin {:>3} budget {:>5} {}",
                report.size,
                report.nnf_size,
                report.max_and_fanin,
                report.gate_budget,
                if ok && equivalent != Some(false) { "ok" } else { "FAILED" }
            );
        }
    }
    eprintln!("{} instances, {failures} failures", formulas.len());
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failures} instances violated a bound or equivalence")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("betakc: {e}");
            ExitCode::from(e.code())
        }
    }
}
