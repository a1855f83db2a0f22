//! Thin command-line front end; all logic lives in `modtw::runner`.
//!
//! Exit codes: 0 = decided, 2 = input/usage error, 3 = resource guard
//! refused the instance (1 = selftest failure).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modtw::gen::LbFamily;
use modtw::graph::Problem;
use modtw::runner::{
    decompose, render_decompose_report, render_run_report, render_witness_report, run, run_gen_lb,
    run_gen_random, run_selftest, run_verify_witness, to_json, Action, RunConfig, RunError,
    DEFAULT_REPEATS, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "modtw",
    version,
    about = "Exact connectivity problems parameterized by modular treewidth: \
             Monte-Carlo solvers, decompositions, oracles, and hard-instance generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the cut-and-count pipeline.
    Solve(SolveArgs),
    /// Report modular decomposition and per-quotient tree decompositions.
    Decompose(DecomposeArgs),
    /// Solve exhaustively (reference answers, small instances only).
    Oracle(OracleArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a vertex-set witness file against an instance.
    VerifyWitness(VerifyWitnessArgs),
    /// Run the built-in smoke battery.
    Selftest,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem code: is, st, cds, cvc, or fvs.
    #[arg(long)]
    problem: String,
    /// Instance file in .mtw format.
    #[arg(long)]
    input: PathBuf,
    /// Decision budget; overrides the instance's b line.
    #[arg(long)]
    budget: Option<u64>,
    /// PRNG seed; repetition r reads stream r of this seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Monte-Carlo repetitions; the failure bound halves with each.
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: u32,
    /// Also solve exhaustively and report agreement (small instances).
    #[arg(long)]
    oracle_check: bool,
    /// Use the reference join in the feedback vertex set program.
    #[arg(long)]
    naive_join: bool,
    /// Include the decompositions in the report.
    #[arg(long)]
    emit_decomposition: bool,
    /// Machine-readable report (byte-identical for identical input and seed).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Problem code: is, st, cds, cvc, or fvs.
    #[arg(long)]
    problem: String,
    /// Instance file in .mtw format.
    #[arg(long)]
    input: PathBuf,
    /// Decision budget; overrides the instance's b line.
    #[arg(long)]
    budget: Option<u64>,
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Instance file in .mtw format.
    #[arg(long)]
    input: PathBuf,
    /// Optional problem code for parsing problem-specific lines.
    #[arg(long)]
    problem: Option<String>,
    /// Include the full decompositions, not just the summary.
    #[arg(long)]
    emit_decomposition: bool,
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Connected vertex cover hardness family encoding a CNF formula.
    LbCvc(GenLbArgs),
    /// Feedback vertex set hardness family encoding a CNF formula.
    LbFvs(GenLbArgs),
    /// Random module-structured graph by recursive substitution.
    Random(GenRandomArgs),
}

#[derive(Args)]
struct GenLbArgs {
    /// CNF formula in DIMACS format.
    #[arg(long)]
    cnf: PathBuf,
    /// Variables per group (1..=16).
    #[arg(long)]
    beta: u32,
    /// Output instance path; the census sidecar lands at <out>.json.
    #[arg(long)]
    out: PathBuf,
    /// 0/1 assignment file (one token per variable); builds and verifies a
    /// solution witness at <out>.witness.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct GenRandomArgs {
    /// Substitution depth (0 gives a single vertex).
    #[arg(long)]
    levels: u32,
    /// Children per node at every level.
    #[arg(long)]
    fanout: usize,
    /// Edge probability inside each quotient.
    #[arg(long)]
    density: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyWitnessArgs {
    /// Problem code: cvc or fvs.
    #[arg(long)]
    problem: String,
    /// Instance file in .mtw format.
    #[arg(long)]
    input: PathBuf,
    /// Witness file: whitespace-separated 1-based vertex ids.
    #[arg(long)]
    witness: PathBuf,
    /// Expected size; overrides the instance's b line.
    #[arg(long)]
    budget: Option<u64>,
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
}

fn parse_problem(code: &str) -> Result<Problem, RunError> {
    Problem::from_code(code).ok_or_else(|| {
        RunError::Input(format!("unknown problem '{code}'; expected is, st, cds, cvc, or fvs"))
    })
}

fn solve_config(args: &SolveArgs, action: Action) -> Result<RunConfig, RunError> {
    Ok(RunConfig {
        action,
        input: args.input.clone(),
        problem: parse_problem(&args.problem)?,
        budget: args.budget,
        seed: args.seed,
        repeats: args.repeats,
        oracle_check: args.oracle_check,
        naive_join: args.naive_join,
        emit_decomposition: args.emit_decomposition,
        json: args.json,
    })
}

fn dispatch(cli: Cli) -> Result<ExitCode, RunError> {
    match cli.command {
        Command::Solve(args) => {
            let config = solve_config(&args, Action::Solve)?;
            let report = run(&config)?;
            if config.json {
                print!("{}", to_json(&report));
                eprintln!("wall_time_ms: {}", report.wall_time_ms);
            } else {
                print!("{}", render_run_report(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(args) => {
            let mut config = RunConfig::new(&args.input, parse_problem(&args.problem)?);
            config.action = Action::Oracle;
            config.budget = args.budget;
            config.json = args.json;
            let report = run(&config)?;
            if config.json {
                print!("{}", to_json(&report));
                eprintln!("wall_time_ms: {}", report.wall_time_ms);
            } else {
                print!("{}", render_run_report(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose(args) => {
            let hint = args.problem.as_deref().map(parse_problem).transpose()?;
            let report = decompose(&args.input, hint, args.emit_decomposition)?;
            if args.json {
                print!("{}", to_json(&report));
                eprintln!("wall_time_ms: {}", report.wall_time_ms);
            } else {
                print!("{}", render_decompose_report(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::LbCvc(args)) => gen_lb(LbFamily::Cvc, args),
        Command::Gen(GenCommand::LbFvs(args)) => gen_lb(LbFamily::Fvs, args),
        Command::Gen(GenCommand::Random(args)) => {
            let text = run_gen_random(args.levels, args.fanout, args.density, args.seed)?;
            match args.out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyWitness(args) => {
            let problem = parse_problem(&args.problem)?;
            let report = run_verify_witness(problem, &args.input, &args.witness, args.budget)?;
            if args.json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", render_witness_report(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let (ok, log) = run_selftest();
            print!("{log}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn gen_lb(family: LbFamily, args: GenLbArgs) -> Result<ExitCode, RunError> {
    let outcome = run_gen_lb(family, &args.cnf, args.beta, &args.out, args.witness.as_deref())?;
    let s = &outcome.sidecar;
    println!("wrote instance {}", outcome.instance_path.display());
    println!("wrote sidecar  {}", outcome.sidecar_path.display());
    println!(
        "family {} | vars {} clauses {} beta {} -> t {} p {} columns {}",
        s.family, s.n_vars, s.m_clauses, s.beta, s.t, s.p, s.columns
    );
    println!(
        "vertices {} edges {} budget {}",
        s.census.vertices, s.census.edges, s.budget
    );
    if let Some(w) = &s.witness {
        println!("wrote witness  {}", outcome.witness_path.as_ref().unwrap().display());
        println!(
            "witness verdict: {}",
            if w.report.ok() { "valid" } else { "invalid" }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
