mod report;
mod run;
mod schema;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obtower_core::Budget;
use serde_json::Value;

use report::{sha256_hex, ErrorObject, Report, Timing};
use schema::{LieProblem, Problem, ProblemSpec, SimplicialProblem, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "obtower", version, about = "Lifting obstructions, towers and their finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Maximum number of worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Starting budget: default, small or large.
    #[arg(long, global = true, env = "OBTOWER_BUDGET_PROFILE", default_value = "default")]
    budget_profile: String,
    #[arg(long, global = true)]
    budget_max_group_order: Option<usize>,
    #[arg(long, global = true)]
    budget_max_hom_search: Option<u64>,
    #[arg(long, global = true)]
    budget_max_degree: Option<usize>,
    #[arg(long, global = true)]
    budget_max_truncation: Option<usize>,
    #[arg(long, global = true)]
    budget_max_linear_work: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lift a homomorphism up a lower-central-series tower.
    Tower(SpecArg),
    /// Compactly supported cohomology and reciprocity classes of a local-global system.
    Reciprocity(SpecArg),
    /// Cohomology of a finite group with coefficients in a finite module.
    Cohomology(SpecArg),
    /// Free-Lie dimension counts.
    Lie(LieArgs),
    /// Exact checks of the simplicial constructions on seeded finite inputs.
    SimplicialCheck(SimplicialArgs),
    /// Run the built-in examples.
    Selftest,
}

#[derive(Args, Debug)]
struct SpecArg {
    /// Problem file (JSON).
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args, Debug)]
struct LieArgs {
    #[arg(long, conflicts_with_all = ["ls", "hall"])]
    spec: Option<PathBuf>,
    /// Weights of the bracket-length-s piece over the modular generators.
    #[arg(long, conflicts_with = "hall")]
    ls: bool,
    /// Hall basis counts against the Witt formula.
    #[arg(long)]
    hall: bool,
    #[arg(long = "mmax", default_value_t = 10)]
    m_max: i64,
    #[arg(long = "s", default_value_t = 1)]
    s: usize,
    /// Weight of the lattice twist.
    #[arg(long = "lambda", default_value_t = -1, allow_hyphen_values = true)]
    lambda: i64,
    /// Number of free generators for `--hall`.
    #[arg(long = "d", default_value_t = 2)]
    d: usize,
    #[arg(long = "n", default_value_t = 8)]
    n: usize,
}

#[derive(Args, Debug)]
struct SimplicialArgs {
    #[arg(long, conflicts_with_all = ["truncation", "seed", "extensions", "abelian_inputs", "bisimplicial"])]
    spec: Option<PathBuf>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    extensions: Option<usize>,
    #[arg(long)]
    abelian_inputs: Option<usize>,
    #[arg(long)]
    bisimplicial: Option<usize>,
}

impl Common {
    fn budget(&self) -> Result<Budget, String> {
        let mut b = Budget::profile(&self.budget_profile).ok_or_else(|| format!("unknown budget profile {:?}", self.budget_profile))?;
        if let Some(x) = self.budget_max_group_order {
            b.max_group_order = x;
        }
        if let Some(x) = self.budget_max_hom_search {
            b.max_hom_search = x;
        }
        if let Some(x) = self.budget_max_degree {
            b.max_degree = x;
        }
        if let Some(x) = self.budget_max_truncation {
            b.max_truncation = x;
        }
        if let Some(x) = self.budget_max_linear_work {
            b.max_linear_work = x;
        }
        Ok(b)
    }
}

/// A problem together with the bytes its hash is taken over.
struct Input {
    spec: ProblemSpec,
    bytes: Vec<u8>,
}

fn read_spec(path: &PathBuf, expected: &str) -> Result<Input, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec: ProblemSpec = serde_json::from_slice(&bytes).map_err(|e| format!("malformed problem file {}: {e}", path.display()))?;
    if spec.schema != SCHEMA_VERSION {
        return Err(format!("unsupported schema version {} (expected {SCHEMA_VERSION})", spec.schema));
    }
    if spec.problem.kind() != expected {
        return Err(format!("problem file has kind {:?}, expected {expected:?}", spec.problem.kind()));
    }
    Ok(Input { spec, bytes })
}

fn from_flags(problem: Problem) -> Input {
    let spec = ProblemSpec { schema: SCHEMA_VERSION, problem };
    let bytes = serde_json::to_vec(&spec).expect("problem specs serialize");
    Input { spec, bytes }
}

fn input_for(command: &Command) -> Result<Option<Input>, String> {
    Ok(Some(match command {
        Command::Tower(a) => read_spec(&a.spec, "tower")?,
        Command::Reciprocity(a) => read_spec(&a.spec, "reciprocity")?,
        Command::Cohomology(a) => read_spec(&a.spec, "cohomology")?,
        Command::Lie(a) => match &a.spec {
            Some(path) => read_spec(path, "lie")?,
            None if a.hall => from_flags(Problem::Lie(LieProblem::Hall { generator_weights: vec![0; a.d], max_degree: a.n })),
            None => from_flags(Problem::Lie(LieProblem::Ls { m_max: a.m_max, s: a.s, lambda_weight: a.lambda })),
        },
        Command::SimplicialCheck(a) => match &a.spec {
            Some(path) => read_spec(path, "simplicial-check")?,
            None => from_flags(Problem::SimplicialCheck(SimplicialProblem {
                truncation: a.truncation.unwrap_or(3),
                seed: a.seed.unwrap_or(0),
                extensions: a.extensions.unwrap_or(50),
                abelian_inputs: a.abelian_inputs.unwrap_or(50),
                bisimplicial: a.bisimplicial.unwrap_or(50),
                explicit: Vec::new(),
            })),
        },
        Command::Selftest => return Ok(None),
    }))
}

fn emit(common: &Common, report: &Report) -> Result<(), String> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.common.budget() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let input = match input_for(&cli.command) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let jobs = cli.common.jobs.max(1);
    let report = match input {
        Some(input) => {
            let outcome = run::execute(&input.spec.problem, &budget, jobs).map_err(|e| ErrorObject::from_error(&e));
            let echo = serde_json::to_value(&input.spec).expect("problem specs serialize");
            let timing = Timing { elapsed_ms: start.elapsed().as_millis() };
            Report::new(input.spec.problem.kind(), input.spec.schema, sha256_hex(&input.bytes), echo, budget, outcome, timing)
        }
        None => {
            let (value, _) = selftest::run(&budget, jobs);
            let timing = Timing { elapsed_ms: start.elapsed().as_millis() };
            let hash = sha256_hex(b"selftest");
            Report::new("selftest", SCHEMA_VERSION, hash, Value::Null, budget, Ok(value), timing)
        }
    };
    if let Err(e) = emit(&cli.common, &report) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let code = match (&report.result, report.kind.as_str()) {
        (Some(r), "selftest") if r["all_pass"] != Value::Bool(true) => 1,
        _ => report.exit_code(),
    };
    ExitCode::from(code as u8)
}
