//! Front-end plumbing shared by the command-line binary, the examples, and
//! the integration tests: run configuration, machine-readable reports, and
//! drivers for solving, decomposing, brute-force checking, generating, and
//! witness verification.
//!
//! Reports are deterministic: identical (input, configuration, seed) produce
//! byte-identical JSON. Wall-clock time is therefore *measured* into the
//! report struct but never serialized; the binary prints it to stderr.
//!
//! Exit-code convention: 0 = decided (including "witness invalid"), 2 =
//! input/usage error, 3 = a resource guard refused the instance.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::cds::solve_cds_per_rep;
use crate::cvc::solve_cvc_per_rep;
use crate::fvs::{solve_fvs_per_rep, FVS_QUOTIENT_CAP};
use crate::gen::{
    build_cvc_witness, build_fvs_witness, gen_cvc_lb, gen_fvs_lb, random_modular_graph,
    verify_cvc_witness, verify_fvs_packing, verify_fvs_witness, CnfFormula,
    LbFamily, WitnessReport, CVC_COVER_SIZE, CVC_GADGET_INTERNAL_EDGES,
    CVC_GADGET_MATCHING_SIZE, CVC_GADGET_ROOT_DEGREE, CVC_GADGET_VERTICES, FVS_COVER_SIZE,
    FVS_GADGET_INTERNAL_EDGES, FVS_GADGET_ROOT_DEGREE, FVS_GADGET_VERTICES,
};
use crate::graph::{degeneracy, parse_instance, CostFn, Graph, Problem, ProblemInstance};
use crate::is::solve_is;
use crate::md::{modular_decomposition, try_modular_decomposition, MdKind, MdTree};
use crate::oracle::{brute_optimum, OracleError};
use crate::steiner::solve_st_per_rep;
use crate::td::{modtw, td_to_pace, TreeDecomposition, VeryNiceTd, EXACT_TD_CAP};

/// Default seed: the ASCII bytes of "mtw". Fixed (never the wall clock) so
/// that runs without an explicit seed are still reproducible.
pub const DEFAULT_SEED: u64 = 0x006d_7477;
pub const DEFAULT_REPEATS: u32 = 20;

// ---------------------------------------------------------------------------
// Configuration and errors
// ---------------------------------------------------------------------------

/// What a run should do with the parsed instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// Monte-Carlo solver pipeline (exact for independent set).
    Solve,
    /// Exhaustive reference solver (small instances only).
    Oracle,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub action: Action,
    pub input: PathBuf,
    pub problem: Problem,
    /// Overrides the instance's `b` line when set.
    pub budget: Option<u64>,
    pub seed: u64,
    pub repeats: u32,
    pub oracle_check: bool,
    /// Use the reference join in the feedback vertex set program.
    pub naive_join: bool,
    pub emit_decomposition: bool,
    pub json: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, problem: Problem) -> RunConfig {
        RunConfig {
            action: Action::Solve,
            input: input.into(),
            problem,
            budget: None,
            seed: DEFAULT_SEED,
            repeats: DEFAULT_REPEATS,
            oracle_check: false,
            naive_join: false,
            emit_decomposition: false,
            json: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 2,
            RunError::Guard(_) => 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), RunError> {
    std::fs::write(path, content)
        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub seed: u64,
    pub repeats: u32,
    pub confidence: String,
    pub modtw: usize,
    pub modtw_exact: bool,
    pub prime_node_count: usize,
    pub max_quotient_width: usize,
    pub per_repeat_outcomes: Vec<Option<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDetail>,
    /// Measured but never serialized, so JSON reports stay byte-identical.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct MdNodeReport {
    pub id: usize,
    pub kind: String,
    /// 1-based, matching the `.mtw` convention.
    pub vertices: Vec<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeTdReport {
    pub md_node: usize,
    pub quotient_size: usize,
    pub width: usize,
    /// PACE-style text of the underlying tree decomposition.
    pub pace: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionDetail {
    pub md_nodes: Vec<MdNodeReport>,
    pub prime_decompositions: Vec<PrimeTdReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub n: usize,
    pub m: usize,
    pub modtw: usize,
    pub modtw_exact: bool,
    pub md_node_count: usize,
    pub leaf_nodes: usize,
    pub parallel_nodes: usize,
    pub series_nodes: usize,
    pub prime_node_count: usize,
    pub max_quotient_width: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDetail>,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

/// Confidence line of a report: positive answers carry no error (one-sided
/// Monte-Carlo), negative ones hold with probability at least 1 - 2^-R.
pub fn report_confidence(repeats: u32, answer: &str) -> String {
    if answer == "yes" {
        "exact".to_string()
    } else {
        format!("correct with probability >= 1 - 2^-{repeats}")
    }
}

fn kind_name(kind: MdKind) -> &'static str {
    match kind {
        MdKind::Leaf => "leaf",
        MdKind::Parallel => "parallel",
        MdKind::Series => "series",
        MdKind::Prime => "prime",
    }
}

fn vn_to_td(vn: &VeryNiceTd) -> TreeDecomposition {
    let mut edges = Vec::new();
    for (id, node) in vn.nodes.iter().enumerate() {
        for &c in &node.children {
            edges.push((c, id));
        }
    }
    TreeDecomposition {
        bags: vn.nodes.iter().map(|n| n.bag.clone()).collect(),
        edges,
        width: vn.width,
    }
}

fn decomposition_detail(md: &MdTree, vntds: &HashMap<usize, VeryNiceTd>) -> DecompositionDetail {
    let md_nodes = md
        .nodes
        .iter()
        .enumerate()
        .map(|(id, n)| MdNodeReport {
            id,
            kind: kind_name(n.kind).to_string(),
            vertices: n.module.iter().map(|&v| v + 1).collect(),
            children: n.children.clone(),
        })
        .collect();
    let mut prime_ids: Vec<usize> = vntds.keys().copied().collect();
    prime_ids.sort_unstable();
    let prime_decompositions = prime_ids
        .into_iter()
        .map(|id| {
            let vn = &vntds[&id];
            let q_n = md.nodes[id].children.len();
            PrimeTdReport {
                md_node: id,
                quotient_size: q_n,
                width: vn.width,
                pace: td_to_pace(&vn_to_td(vn), q_n),
            }
        })
        .collect();
    DecompositionDetail { md_nodes, prime_decompositions }
}

// ---------------------------------------------------------------------------
// Guards
// ---------------------------------------------------------------------------

/// Front-end quotient-size cap for the Monte-Carlo solvers: their tables key
/// on accumulated (cost, weight) trackers, whose count grows roughly with the
/// square of the quotient size. Independent set keeps one value per signature
/// and is exempt.
pub const MC_QUOTIENT_SOLVE_CAP: usize = 64;

/// Largest prime module the solve/decompose pipeline will split. Splitting a
/// prime module costs quadratically many modular closures, so past this size
/// the decomposition itself (not the tables) is the bottleneck and the
/// instance is refused up front. The by-design-hard generated instances land
/// here immediately.
pub const MD_PRIME_CAP: usize = 512;

/// States per vertex in the cut-and-count tables of each problem.
fn state_base(problem: Problem) -> f64 {
    match problem {
        Problem::Is => 2.0,
        Problem::St => 3.0,
        Problem::Cds => 4.0,
        Problem::Cvc | Problem::Fvs => 5.0,
    }
}

/// Refuse when a `base`-state table of dimension `width + 1` cannot fit in
/// memory. `width` may be the computed quotient width or any lower bound on
/// it (degeneracy); `how` names which one the message reports.
fn check_quotient_width(base: f64, width: usize, how: &str) -> Result<(), RunError> {
    let bits = (width as f64 + 1.0) * base.log2();
    if bits > 40.0 {
        return Err(RunError::Guard(format!(
            "{how} {width}; a {base}-state table of that dimension exceeds \
             the memory guard"
        )));
    }
    Ok(())
}

/// Refuse quotients with too many modules: the connectivity tracker maps of
/// the Monte-Carlo solvers grow with the square of the quotient size. The
/// independent-set program has no tracker, so it is exempt.
fn check_quotient_size(problem: Problem, md: &MdTree) -> Result<(), RunError> {
    if problem != Problem::Is {
        for id in md.prime_node_ids() {
            let size = md.nodes[id].children.len();
            if size > MC_QUOTIENT_SOLVE_CAP.min(FVS_QUOTIENT_CAP) {
                return Err(RunError::Guard(format!(
                    "prime quotient on {size} modules: tracker maps grow with \
                     the square of the quotient size; refusing past \
                     {MC_QUOTIENT_SOLVE_CAP}"
                )));
            }
        }
    }
    Ok(())
}

/// Width prechecks that need only the decomposition tree, not the (much
/// costlier) per-quotient tree decompositions: degeneracy lower-bounds the
/// width, so a quotient whose degeneracy already trips the table guard can
/// be refused before any elimination heuristic runs.
fn check_quotient_degeneracy(base: f64, md: &MdTree) -> Result<(), RunError> {
    for (_, q) in md.prime_quotients() {
        check_quotient_width(
            base,
            degeneracy(q),
            "a prime quotient has degeneracy, hence width, at least",
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Solve / oracle runs
// ---------------------------------------------------------------------------

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Answer of a decision instance given the computed optimum: independent set
/// asks for cost at least the budget, everything else at most; with no
/// budget the question is bare feasibility.
fn decide(problem: Problem, optimum: Option<u64>, budget: Option<u64>) -> &'static str {
    let yes = match (optimum, budget) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(v), Some(b)) => {
            if problem == Problem::Is {
                v >= b
            } else {
                v <= b
            }
        }
    };
    if yes {
        "yes"
    } else {
        "no"
    }
}

/// Execute a solve or oracle configuration end to end.
pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let text = read_file(&config.input)?;
    let inst = parse_instance(&text, config.problem)
        .map_err(|e| RunError::Input(format!("{}: {e}", config.input.display())))?;
    if config.repeats == 0 {
        return Err(RunError::Input("repeats must be at least 1".into()));
    }
    if inst.graph.n() == 0 {
        return Err(RunError::Input("instance has no vertices".into()));
    }
    let budget = config.budget.or(inst.budget);
    let g = &inst.graph;

    // Oracle action: run the exhaustive search before any decomposition
    // work; its own vertex cap refuses oversized instances immediately,
    // and anything it accepts decomposes in negligible time.
    let oracle_value = match config.action {
        Action::Oracle => Some(brute_optimum(&inst).map_err(guard_from_oracle)?),
        Action::Solve => None,
    };

    let md = try_modular_decomposition(g, MD_PRIME_CAP).map_err(RunError::Guard)?;
    if config.action == Action::Solve {
        // Guards that need only the tree come before the per-quotient
        // decompositions, so hopeless instances are refused fast.
        check_quotient_size(config.problem, &md)?;
        check_quotient_degeneracy(state_base(config.problem), &md)?;
    }
    let info = modtw(&md, EXACT_TD_CAP);

    let (per_rep, method): (Vec<Option<u64>>, Option<String>) = match config.action {
        Action::Solve => {
            check_quotient_width(
                state_base(config.problem),
                info.max_quotient_width,
                "largest quotient width is",
            )?;
            let reps = config.repeats;
            let seed = config.seed;
            let v = match config.problem {
                Problem::Is => {
                    let data = solve_is(g, &inst.costs, &md, &info.vntds);
                    vec![Some(data.cost); reps as usize]
                }
                Problem::St => {
                    solve_st_per_rep(g, &inst.costs, &inst.terminals, seed, reps, EXACT_TD_CAP)
                }
                Problem::Cds => solve_cds_per_rep(g, &inst.costs, seed, reps, EXACT_TD_CAP),
                Problem::Cvc => {
                    solve_cvc_per_rep(g, &inst.costs, budget, seed, reps, EXACT_TD_CAP)
                }
                Problem::Fvs => {
                    solve_fvs_per_rep(g, seed, reps, EXACT_TD_CAP, config.naive_join)
                        .into_iter()
                        .map(Some)
                        .collect()
                }
            };
            (v, None)
        }
        Action::Oracle => {
            let opt = oracle_value.expect("computed before decomposition");
            (vec![opt], Some("exhaustive".to_string()))
        }
    };

    let optimum = per_rep.iter().copied().fold(None, min_opt);
    let answer = decide(config.problem, optimum, budget).to_string();
    let confidence = match config.action {
        Action::Oracle => "exact".to_string(),
        Action::Solve => report_confidence(config.repeats, &answer),
    };

    let oracle_agrees = if config.oracle_check && config.action == Action::Solve {
        let brute = brute_optimum(&inst).map_err(guard_from_oracle)?;
        let same_answer = decide(config.problem, brute, budget) == answer;
        let same_value = match (answer.as_str(), optimum, brute) {
            ("yes", Some(a), Some(b)) => a == b,
            _ => true,
        };
        Some(same_answer && same_value)
    } else {
        None
    };

    let decomposition =
        if config.emit_decomposition { Some(decomposition_detail(&md, &info.vntds)) } else { None };

    Ok(RunReport {
        problem: config.problem.code().to_string(),
        answer,
        optimum,
        budget,
        seed: config.seed,
        repeats: config.repeats,
        confidence,
        modtw: info.k,
        modtw_exact: !info.approximate,
        prime_node_count: info.prime_node_count,
        max_quotient_width: info.max_quotient_width,
        per_repeat_outcomes: per_rep,
        oracle_agrees,
        method,
        decomposition,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn guard_from_oracle(e: OracleError) -> RunError {
    RunError::Guard(e.to_string())
}

/// Parse an instance whose problem is irrelevant (structure only): accept
/// terminal lines by falling back to the Steiner reading.
fn parse_any_problem(text: &str, hint: Option<Problem>) -> Result<ProblemInstance, String> {
    if let Some(p) = hint {
        return parse_instance(text, p).map_err(|e| e.to_string());
    }
    match parse_instance(text, Problem::Cvc) {
        Ok(inst) => Ok(inst),
        Err(e) if e.msg.contains("terminal line") => {
            parse_instance(text, Problem::St).map_err(|e| e.to_string())
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Structure-only run: modular decomposition plus per-prime-quotient tree
/// decompositions, no solving.
pub fn decompose(
    input: &Path,
    problem_hint: Option<Problem>,
    emit_decomposition: bool,
) -> Result<DecomposeReport, RunError> {
    let start = Instant::now();
    let text = read_file(input)?;
    let inst = parse_any_problem(&text, problem_hint)
        .map_err(|e| RunError::Input(format!("{}: {e}", input.display())))?;
    if inst.graph.n() == 0 {
        return Err(RunError::Input("instance has no vertices".into()));
    }
    let md = try_modular_decomposition(&inst.graph, MD_PRIME_CAP).map_err(RunError::Guard)?;
    // Base 2 is the most permissive table dimension any solver uses; a
    // quotient too degenerate even for that is beyond analysis here.
    check_quotient_degeneracy(2.0, &md)?;
    let info = modtw(&md, EXACT_TD_CAP);
    let count = |k: MdKind| md.nodes.iter().filter(|n| n.kind == k).count();
    Ok(DecomposeReport {
        n: inst.graph.n(),
        m: inst.graph.m(),
        modtw: info.k,
        modtw_exact: !info.approximate,
        md_node_count: md.nodes.len(),
        leaf_nodes: count(MdKind::Leaf),
        parallel_nodes: count(MdKind::Parallel),
        series_nodes: count(MdKind::Series),
        prime_node_count: info.prime_node_count,
        max_quotient_width: info.max_quotient_width,
        decomposition: if emit_decomposition {
            Some(decomposition_detail(&md, &info.vntds))
        } else {
            None
        },
        wall_time_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn fmt_outcome(o: &Option<u64>) -> String {
    match o {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

pub fn render_run_report(r: &RunReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("problem: {}\n", r.problem));
    s.push_str(&format!("answer: {}\n", r.answer));
    if let Some(v) = r.optimum {
        s.push_str(&format!("optimum: {v}\n"));
    }
    if let Some(b) = r.budget {
        s.push_str(&format!("budget: {b}\n"));
    }
    s.push_str(&format!("seed: {}\nrepeats: {}\n", r.seed, r.repeats));
    s.push_str(&format!("confidence: {}\n", r.confidence));
    s.push_str(&format!(
        "modtw: {}{}\n",
        r.modtw,
        if r.modtw_exact { "" } else { " (heuristic upper bound)" }
    ));
    s.push_str(&format!(
        "prime nodes: {} (max quotient width {})\n",
        r.prime_node_count, r.max_quotient_width
    ));
    let outcomes: Vec<String> = r.per_repeat_outcomes.iter().map(fmt_outcome).collect();
    s.push_str(&format!("per-repeat outcomes: {}\n", outcomes.join(" ")));
    if let Some(a) = r.oracle_agrees {
        s.push_str(&format!("oracle agrees: {a}\n"));
    }
    if let Some(m) = &r.method {
        s.push_str(&format!("method: {m}\n"));
    }
    if let Some(d) = &r.decomposition {
        s.push_str(&render_detail(d));
    }
    s.push_str(&format!("wall time: {} ms\n", r.wall_time_ms));
    s
}

fn render_detail(d: &DecompositionDetail) -> String {
    let mut s = String::new();
    s.push_str("modular decomposition:\n");
    for n in &d.md_nodes {
        let verts: Vec<String> = n.vertices.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("  node {} [{}] {{{}}}\n", n.id, n.kind, verts.join(" ")));
    }
    for p in &d.prime_decompositions {
        s.push_str(&format!(
            "tree decomposition of prime node {} (width {}):\n",
            p.md_node, p.width
        ));
        for line in p.pace.lines() {
            s.push_str(&format!("  {line}\n"));
        }
    }
    s
}

pub fn render_decompose_report(r: &DecomposeReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("n: {}\nm: {}\n", r.n, r.m));
    s.push_str(&format!(
        "modtw: {}{}\n",
        r.modtw,
        if r.modtw_exact { "" } else { " (heuristic upper bound)" }
    ));
    s.push_str(&format!(
        "md nodes: {} (leaf {}, parallel {}, series {}, prime {})\n",
        r.md_node_count, r.leaf_nodes, r.parallel_nodes, r.series_nodes, r.prime_node_count
    ));
    s.push_str(&format!("max quotient width: {}\n", r.max_quotient_width));
    if let Some(d) = &r.decomposition {
        s.push_str(&render_detail(d));
    }
    s.push_str(&format!("wall time: {} ms\n", r.wall_time_ms));
    s
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CensusTable {
    pub vertices: usize,
    pub edges: usize,
    pub gadget_vertices: usize,
    pub gadget_internal_edges: usize,
    pub gadget_root_degree: usize,
    pub gadget_solution_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadget_matching_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrows: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LbSidecar {
    pub family: String,
    pub n_vars: usize,
    pub m_clauses: usize,
    pub clause_width: usize,
    pub beta: u32,
    pub t: usize,
    pub p: usize,
    pub columns: usize,
    pub budget: u64,
    pub census: CensusTable,
    /// Claimed quotient-pathwidth bound; metadata only, not checked.
    pub tcpw_bound_unverified: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSidecar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSidecar {
    pub file: String,
    pub report: WitnessReport,
}

/// Summary returned by the lower-bound generator (also written as the JSON
/// sidecar next to the instance).
pub struct GenLbOutcome {
    pub instance_path: PathBuf,
    pub sidecar_path: PathBuf,
    pub witness_path: Option<PathBuf>,
    pub sidecar: LbSidecar,
}

/// Parse a whitespace-separated 0/1 assignment file (`c`-comment lines
/// allowed), one token per variable.
pub fn parse_assignment(text: &str, n_vars: usize) -> Result<Vec<bool>, String> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            match tok {
                "0" => out.push(false),
                "1" => out.push(true),
                _ => return Err(format!("assignment token '{tok}' is not 0 or 1")),
            }
        }
    }
    if out.len() != n_vars {
        return Err(format!("assignment has {} values, formula has {n_vars}", out.len()));
    }
    Ok(out)
}

/// Parse a witness file: whitespace-separated 1-based vertex ids, `c`-comment
/// lines allowed.
pub fn parse_witness(text: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| format!("bad vertex id '{tok}'"))?;
            if v == 0 || v > n {
                return Err(format!("vertex id {v} out of range 1..={n}"));
            }
            out.push(v - 1);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn witness_to_text(witness: &[usize]) -> String {
    let mut s = String::from("c connected solution witness, 1-based vertex ids\n");
    for &v in witness {
        s.push_str(&(v + 1).to_string());
        s.push('\n');
    }
    s
}

/// Generate a CNF-encoding instance, write the `.mtw` file, a `.json` census
/// sidecar, and (given an assignment file) a verified witness file.
pub fn run_gen_lb(
    family: LbFamily,
    cnf_path: &Path,
    beta: u32,
    out: &Path,
    witness_assignment: Option<&Path>,
) -> Result<GenLbOutcome, RunError> {
    if !(1..=16).contains(&beta) {
        return Err(RunError::Input(format!("beta {beta} out of range 1..=16")));
    }
    let cnf = CnfFormula::parse_dimacs(&read_file(cnf_path)?)
        .map_err(|e| RunError::Input(format!("{}: {e}", cnf_path.display())))?;

    let (graph, budget, index, packing) = match family {
        LbFamily::Cvc => {
            let (g, b, i) = gen_cvc_lb(&cnf, beta);
            (g, b, i, Vec::new())
        }
        LbFamily::Fvs => {
            let (g, b, i, p) = gen_fvs_lb(&cnf, beta);
            (g, b, i, p)
        }
    };
    if graph.n() > crate::graph::MAX_VERTICES {
        return Err(RunError::Guard(format!(
            "generated instance has {} vertices, over the cap {}",
            graph.n(),
            crate::graph::MAX_VERTICES
        )));
    }

    let problem = match family {
        LbFamily::Cvc => Problem::Cvc,
        LbFamily::Fvs => Problem::Fvs,
    };
    let n = graph.n();
    let inst = ProblemInstance {
        problem,
        graph,
        costs: CostFn::unit(n),
        terminals: Vec::new(),
        budget: Some(budget),
    };
    write_file(out, &inst.to_mtw())?;

    let witness = match witness_assignment {
        None => None,
        Some(path) => {
            let assignment = parse_assignment(&read_file(path)?, cnf.n_vars)
                .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))?;
            let (set, report) = match family {
                LbFamily::Cvc => {
                    let w = build_cvc_witness(&cnf, &assignment, &index);
                    let r = verify_cvc_witness(&inst.graph, &w, budget);
                    (w, r)
                }
                LbFamily::Fvs => {
                    verify_fvs_packing(&inst.graph, &packing, budget)
                        .map_err(RunError::Guard)?;
                    let w = build_fvs_witness(&cnf, &assignment, &index);
                    let r = verify_fvs_witness(&inst.graph, &w, budget);
                    (w, r)
                }
            };
            let wpath = sibling(out, "witness");
            write_file(&wpath, &witness_to_text(&set))?;
            Some((wpath, report))
        }
    };

    let census = CensusTable {
        vertices: inst.graph.n(),
        edges: inst.graph.m(),
        gadget_vertices: match family {
            LbFamily::Cvc => CVC_GADGET_VERTICES,
            LbFamily::Fvs => FVS_GADGET_VERTICES,
        },
        gadget_internal_edges: match family {
            LbFamily::Cvc => CVC_GADGET_INTERNAL_EDGES,
            LbFamily::Fvs => FVS_GADGET_INTERNAL_EDGES,
        },
        gadget_root_degree: match family {
            LbFamily::Cvc => CVC_GADGET_ROOT_DEGREE,
            LbFamily::Fvs => FVS_GADGET_ROOT_DEGREE,
        },
        gadget_solution_size: match family {
            LbFamily::Cvc => CVC_COVER_SIZE,
            LbFamily::Fvs => FVS_COVER_SIZE,
        },
        gadget_matching_size: match family {
            LbFamily::Cvc => Some(CVC_GADGET_MATCHING_SIZE),
            LbFamily::Fvs => None,
        },
        packing_elements: match family {
            LbFamily::Cvc => None,
            LbFamily::Fvs => Some(packing.len()),
        },
        arrows: match family {
            LbFamily::Cvc => None,
            LbFamily::Fvs => Some(index.arrows.len()),
        },
    };
    let sidecar = LbSidecar {
        family: match family {
            LbFamily::Cvc => "cvc".to_string(),
            LbFamily::Fvs => "fvs".to_string(),
        },
        n_vars: cnf.n_vars,
        m_clauses: cnf.m_clauses(),
        clause_width: cnf.width,
        beta,
        t: index.t,
        p: index.p,
        columns: index.columns,
        budget,
        census,
        tcpw_bound_unverified: index.tcpw_bound_unverified,
        witness: witness.as_ref().map(|(path, report)| WitnessSidecar {
            file: path.display().to_string(),
            report: report.clone(),
        }),
    };
    let sidecar_path = sibling(out, "json");
    write_file(&sidecar_path, &to_json(&sidecar))?;

    Ok(GenLbOutcome {
        instance_path: out.to_path_buf(),
        sidecar_path,
        witness_path: witness.map(|(p, _)| p),
        sidecar,
    })
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".");
    name.push(ext);
    path.with_file_name(name)
}

/// Generate a random module-structured instance; returns the `.mtw` text.
pub fn run_gen_random(levels: u32, fanout: usize, density: f64, seed: u64) -> Result<String, RunError> {
    if fanout == 0 {
        return Err(RunError::Input("fanout must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(RunError::Input("density must lie in [0, 1]".into()));
    }
    let n_estimate = (fanout as f64).powi(levels as i32);
    if n_estimate > crate::graph::MAX_VERTICES as f64 {
        return Err(RunError::Guard(format!(
            "fanout^levels = {n_estimate:.0} exceeds the vertex cap {}",
            crate::graph::MAX_VERTICES
        )));
    }
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (graph, _) = random_modular_graph(levels, fanout, density, &mut rng);
    let n = graph.n();
    let inst = ProblemInstance {
        problem: Problem::Fvs,
        graph,
        costs: CostFn::unit(n),
        terminals: Vec::new(),
        budget: None,
    };
    Ok(inst.to_mtw())
}

// ---------------------------------------------------------------------------
// Witness verification
// ---------------------------------------------------------------------------

/// Verify a vertex-set witness file against an instance. The budget comes
/// from the override or the instance's `b` line.
pub fn run_verify_witness(
    problem: Problem,
    input: &Path,
    witness_path: &Path,
    budget_override: Option<u64>,
) -> Result<WitnessReport, RunError> {
    let inst = parse_instance(&read_file(input)?, problem)
        .map_err(|e| RunError::Input(format!("{}: {e}", input.display())))?;
    let budget = budget_override.or(inst.budget).ok_or_else(|| {
        RunError::Input("no budget: pass --budget or add a b line to the instance".into())
    })?;
    let witness = parse_witness(&read_file(witness_path)?, inst.graph.n())
        .map_err(|e| RunError::Input(format!("{}: {e}", witness_path.display())))?;
    match problem {
        Problem::Cvc => Ok(verify_cvc_witness(&inst.graph, &witness, budget)),
        Problem::Fvs => Ok(verify_fvs_witness(&inst.graph, &witness, budget)),
        other => Err(RunError::Input(format!(
            "witness verification supports cvc and fvs, not {}",
            other.code()
        ))),
    }
}

pub fn render_witness_report(r: &WitnessReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("expected size: {}\n", r.expected_size));
    s.push_str(&format!("actual size: {}\n", r.actual_size));
    s.push_str(&format!("size ok: {}\n", r.size_ok));
    s.push_str(&format!("structure ok: {}\n", r.structure_ok));
    s.push_str(&format!("connectivity ok: {}\n", r.connectivity_ok));
    if let Some(f) = &r.failure {
        s.push_str(&format!("failure: {f}\n"));
    }
    s.push_str(&format!("verdict: {}\n", if r.ok() { "valid" } else { "invalid" }));
    s
}

// ---------------------------------------------------------------------------
// Self test
// ---------------------------------------------------------------------------

/// Quick built-in battery covering each layer; returns (all passed, log).
pub fn run_selftest() -> (bool, String) {
    use crate::cutcount::count_consistent_cuts;
    use crate::cvc::solve_cvc;
    use crate::fvs::solve_fvs;
    use crate::gen::cvc_single_gadget;
    use crate::md::is_module;

    let mut log = String::new();
    let mut all = true;
    let check = |name: &str, ok: bool, log: &mut String, all: &mut bool| {
        log.push_str(&format!("selftest {name}: {}\n", if ok { "ok" } else { "FAIL" }));
        *all &= ok;
    };

    // Format roundtrip.
    let text = "p mtw 4 3\ne 1 2\ne 2 3\ne 3 4\n";
    let p4 = parse_instance(text, Problem::Cvc).map(|i| i.graph).ok();
    check("parse p4", p4.is_some(), &mut log, &mut all);
    let p4 = p4.unwrap_or_else(|| Graph::new(1));

    // Cut counting: 2^(components) on an induced path piece.
    let all_vs: Vec<usize> = (0..p4.n()).collect();
    let cuts_ok = count_consistent_cuts(&p4, &all_vs) == 2 && {
        let ends = vec![0usize, 3];
        count_consistent_cuts(&p4, &ends) == 4
    };
    check("consistent cut counts", cuts_ok, &mut log, &mut all);

    // Modular structure: substituted blocks are modules with a prime quotient.
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
    let (host, blocks) = crate::gen::substitute(&c5, &vec![tri; 5]);
    let md = modular_decomposition(&host);
    let md_ok = blocks.iter().all(|b| is_module(&host, b))
        && md.nodes[md.root].kind == MdKind::Prime
        && md.nodes[md.root].children.len() == 5;
    check("modular decomposition", md_ok, &mut log, &mut all);

    // Solvers against known small answers.
    let unit4 = CostFn::unit(4);
    let cvc_ok = solve_cvc(&p4, &unit4, None, DEFAULT_SEED, 8, EXACT_TD_CAP) == Some(2);
    check("connected vertex cover of a path", cvc_ok, &mut log, &mut all);
    let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let fvs_ok = solve_fvs(&k4, DEFAULT_SEED, 8, EXACT_TD_CAP) == 2;
    check("feedback vertex set of a clique", fvs_ok, &mut log, &mut all);

    // Generator census.
    let (gadget, root) = cvc_single_gadget();
    let census_ok = gadget.n() == CVC_GADGET_VERTICES + 1
        && gadget.m() == CVC_GADGET_INTERNAL_EDGES + CVC_GADGET_ROOT_DEGREE
        && gadget.degree(root) == CVC_GADGET_ROOT_DEGREE;
    check("gadget census", census_ok, &mut log, &mut all);

    log.push_str(&format!("selftest: {}\n", if all { "all ok" } else { "FAILURES" }));
    (all, log)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
        let path = dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    const P4: &str = "p mtw 4 3\ne 1 2\ne 2 3\ne 3 4\n";
    const K4: &str = "p mtw 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

    #[test]
    fn solve_examples_from_the_interface_contract() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write_temp(&dir, "p4.mtw", P4);
        let k4 = write_temp(&dir, "k4.mtw", &format!("{K4}b 1\n"));

        let report = run(&RunConfig::new(&p4, Problem::Cvc)).unwrap();
        assert_eq!(report.answer, "yes");
        assert_eq!(report.optimum, Some(2));
        assert_eq!(report.confidence, "exact");
        assert_eq!(report.modtw, 2);
        assert_eq!(report.per_repeat_outcomes.len(), DEFAULT_REPEATS as usize);

        let report = run(&RunConfig::new(&k4, Problem::Fvs)).unwrap();
        assert_eq!(report.answer, "no");
        assert_eq!(report.optimum, Some(2));
        assert_eq!(report.budget, Some(1));
        assert_eq!(report.confidence, "correct with probability >= 1 - 2^-20");
    }

    #[test]
    fn oracle_check_and_oracle_action_agree() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write_temp(&dir, "p4.mtw", P4);
        let mut config = RunConfig::new(&p4, Problem::Cds);
        config.oracle_check = true;
        let report = run(&config).unwrap();
        assert_eq!(report.oracle_agrees, Some(true));

        config.action = Action::Oracle;
        config.oracle_check = false;
        let oracle = run(&config).unwrap();
        assert_eq!(oracle.optimum, report.optimum);
        assert_eq!(oracle.method.as_deref(), Some("exhaustive"));
        assert_eq!(oracle.confidence, "exact");
    }

    #[test]
    fn json_reports_are_byte_identical_across_runs() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write_temp(&dir, "p4.mtw", P4);
        let mut config = RunConfig::new(&p4, Problem::Fvs);
        config.emit_decomposition = true;
        let a = to_json(&run(&config).unwrap());
        let b = to_json(&run(&config).unwrap());
        assert_eq!(a, b);
        assert!(!a.contains("wall_time"));
    }

    #[test]
    fn exit_codes_for_bad_input_and_guards() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write_temp(&dir, "bad.mtw", "p mtw 2 1\ne 1 3\n");
        let err = run(&RunConfig::new(&bad, Problem::Fvs)).unwrap_err();
        assert_eq!(err.exit_code(), 2);

        // A long path is a prime quotient with one module per vertex; beyond
        // the 2-adic cap the feedback solver must refuse rather than panic.
        let mut text = String::from("p mtw 130 129\n");
        for i in 1..130 {
            text.push_str(&format!("e {i} {}\n", i + 1));
        }
        let long = write_temp(&dir, "long.mtw", &text);
        let err = run(&RunConfig::new(&long, Problem::Fvs)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        // The same instance is fine for the map-free independent set program.
        assert!(run(&RunConfig::new(&long, Problem::Is)).is_ok());
    }

    #[test]
    fn guards_fire_before_expensive_decomposition_work() {
        let dir = tempfile::tempdir().unwrap();

        // A path on 600 vertices is one prime module per vertex; splitting
        // it is beyond the prime-module cap and must be refused up front by
        // every front end, including decompose.
        let mut text = String::from("p mtw 600 599\n");
        for i in 1..600 {
            text.push_str(&format!("e {i} {}\n", i + 1));
        }
        let long = write_temp(&dir, "long.mtw", &text);
        let err = run(&RunConfig::new(&long, Problem::Is)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(format!("{err}").contains("prime module"), "{err}");
        let err = decompose(&long, None, false).unwrap_err();
        assert_eq!(err.exit_code(), 3);

        // The oracle's own vertex cap answers before decomposition starts.
        let mut config = RunConfig::new(&long, Problem::Is);
        config.action = Action::Oracle;
        assert_eq!(run(&config).unwrap_err().exit_code(), 3);

        // The complement of a long path is prime and dense: among any 45
        // surviving vertices each one misses at most two others, so the
        // degeneracy is at least 42 and no solver's table can fit. That is
        // detected from the degeneracy bound, without running the
        // elimination heuristic.
        let n = 70;
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if v != u + 1 {
                    edges.push((u, v));
                }
            }
        }
        let mut text = format!("p mtw {n} {}\n", edges.len());
        for (u, v) in &edges {
            text.push_str(&format!("e {u} {v}\n"));
        }
        let cop = write_temp(&dir, "cop.mtw", &text);
        let err = run(&RunConfig::new(&cop, Problem::Is)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(format!("{err}").contains("degeneracy"), "{err}");
        assert_eq!(decompose(&cop, None, false).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn confidence_lines_match_the_documented_wording() {
        assert_eq!(report_confidence(20, "yes"), "exact");
        assert_eq!(report_confidence(1, "no"), "correct with probability >= 1 - 2^-1");
        assert_eq!(report_confidence(20, "no"), "correct with probability >= 1 - 2^-20");
    }

    #[test]
    fn decompose_reports_structure() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write_temp(&dir, "p4.mtw", P4);
        let report = decompose(&p4, None, true).unwrap();
        assert_eq!((report.n, report.m), (4, 3));
        assert_eq!(report.modtw, 2);
        assert_eq!(report.prime_node_count, 1);
        let detail = report.decomposition.unwrap();
        assert_eq!(detail.md_nodes.len(), 5);
        assert_eq!(detail.prime_decompositions.len(), 1);
        assert!(detail.prime_decompositions[0].pace.starts_with("s td"));
    }

    #[test]
    fn lb_generation_writes_instance_sidecar_and_witness() {
        let dir = tempfile::tempdir().unwrap();
        let cnf = write_temp(&dir, "f.cnf", "p cnf 2 1\n1 -2 0\n");
        let assign = write_temp(&dir, "assign.txt", "1 1\n");
        let out = dir.path().join("inst.mtw");

        let outcome =
            run_gen_lb(LbFamily::Cvc, &cnf, 2, &out, Some(&assign)).unwrap();
        assert!(outcome.sidecar.witness.as_ref().unwrap().report.ok());
        assert_eq!(outcome.sidecar.budget, 216);
        assert_eq!(outcome.sidecar.census.gadget_internal_edges, 320);

        // The emitted instance parses, keeps its budget, and the emitted
        // witness verifies through the file-based entry point.
        let report = run_verify_witness(
            Problem::Cvc,
            &outcome.instance_path,
            outcome.witness_path.as_ref().unwrap(),
            None,
        )
        .unwrap();
        assert!(report.ok());

        // Generated instances are far beyond the solve guards by design;
        // the front end must refuse them rather than thrash.
        let err = run(&RunConfig::new(&outcome.instance_path, Problem::Cvc)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn generated_instances_are_refused_quickly_at_any_size() {
        // Multi-thousand-vertex generated instances used to stall inside the
        // decomposition itself; the prime-module cap must answer in bounded
        // time instead.
        let dir = tempfile::tempdir().unwrap();
        let cnf = write_temp(&dir, "f.cnf", "p cnf 3 2\n1 -2 0\n2 3 0\n");
        let started = Instant::now();
        for (family, problem) in
            [(LbFamily::Cvc, Problem::Cvc), (LbFamily::Fvs, Problem::Fvs)]
        {
            let out = dir.path().join(format!("{}.mtw", problem.code()));
            let outcome = run_gen_lb(family, &cnf, 2, &out, None).unwrap();
            let err = run(&RunConfig::new(&outcome.instance_path, problem)).unwrap_err();
            assert_eq!(err.exit_code(), 3);
            let err = decompose(&outcome.instance_path, Some(problem), false).unwrap_err();
            assert_eq!(err.exit_code(), 3);
        }
        assert!(
            started.elapsed() < std::time::Duration::from_secs(30),
            "refusal took {:?}; the guards must fire before the expensive work",
            started.elapsed()
        );
    }

    #[test]
    fn random_generation_is_seed_deterministic() {
        let a = run_gen_random(2, 3, 0.5, 7).unwrap();
        let b = run_gen_random(2, 3, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("p mtw 9 "));
        assert!(run_gen_random(10, 10, 0.5, 7).unwrap_err().exit_code() == 3);
    }

    #[test]
    fn selftest_passes() {
        let (ok, log) = run_selftest();
        assert!(ok, "{log}");
    }
}
