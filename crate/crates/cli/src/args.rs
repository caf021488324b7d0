use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Cost-optimal behavior trees from goal formulas.
///
/// Exit codes: 0 success, 1 I/O or other error, 2 goal syntax error,
/// 3 goal semantic error, 4 no feasible sub-goal, 5 interpretation failed
/// after all retries, 6 completion backend unavailable, 64 bad arguments.
#[derive(Debug, Parser)]
#[command(name = "obtea", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the disjunctive normal form of a goal, one clause per line.
    Normalize(NormalizeArgs),
    /// Plan a behavior tree for a goal.
    Plan(PlanArgs),
    /// Turn an instruction into a goal with a completion backend.
    Interpret(InterpretArgs),
    /// Compare the baseline, OBTEA and OBTEA without compaction on generated instances.
    Bench(BenchArgs),
    /// Mean condition ticks per compaction depth on generated instances.
    Ablate(AblateArgs),
    /// Plan the café ground-truth goals with the baseline and OBTEA.
    Cafe(CafeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    pub goal: String,
    /// Check predicates and objects against this domain.
    #[arg(long)]
    pub domain: Option<PathBuf>,
    /// `text` or `json`.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args, Clone)]
pub struct PlanOptions {
    #[arg(long)]
    pub domain: PathBuf,
    /// Initial state as a conjunction of positive literals. Defaults to the
    /// domain's `[init]` section, or the empty state.
    #[arg(long, conflicts_with = "s0_file")]
    pub s0: Option<String>,
    /// File holding the initial state, literals separated by `&` or newlines.
    #[arg(long)]
    pub s0_file: Option<PathBuf>,
    /// Maximum compaction depth.
    #[arg(long, default_value_t = obtea_core::planner::DEFAULT_COMPACTION_DEPTH)]
    pub depth: usize,
    /// Use the breadth-first baseline planner.
    #[arg(long)]
    pub baseline: bool,
    /// Execute the tree from the initial state and print the trace.
    #[arg(long)]
    pub simulate: bool,
    /// Root tick budget for `--simulate`.
    #[arg(long, default_value_t = 10_000)]
    pub max_ticks: u64,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    pub goal: String,
    #[command(flatten)]
    pub opts: PlanOptions,
    /// `text`, `json` or `dot`.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InterpretArgs {
    pub instruction: String,
    #[arg(long)]
    pub domain: PathBuf,
    /// Replay a recorded transcript (JSON lines of prompt/response pairs).
    #[arg(long, conflicts_with_all = ["script", "url"])]
    pub replay: Option<PathBuf>,
    /// Scripted responses per instruction (JSON lines of instruction/responses).
    #[arg(long, conflicts_with = "url")]
    pub script: Option<PathBuf>,
    /// Completion endpoint. Defaults to the OBTEA_BACKEND_URL environment
    /// variable; the bearer token comes from OBTEA_BACKEND_TOKEN.
    #[arg(long)]
    pub url: Option<String>,
    /// Demonstrations for the prompt (JSON lines of instruction/goal pairs).
    #[arg(long)]
    pub demos: Option<PathBuf>,
    /// Write every prompt/response exchange to this transcript file.
    #[arg(long)]
    pub record: Option<PathBuf>,
    #[arg(long, default_value_t = obtea_intent::DEFAULT_MAX_RETRIES)]
    pub max_retries: usize,
    /// Print every attempt to stderr.
    #[arg(short, long)]
    pub verbose: bool,
    /// Plan the interpreted goal right away.
    #[arg(long)]
    pub plan: bool,
    #[arg(long)]
    pub s0: Option<String>,
    #[arg(long)]
    pub s0_file: Option<PathBuf>,
    #[arg(long, default_value_t = obtea_core::planner::DEFAULT_COMPACTION_DEPTH)]
    pub depth: usize,
    #[arg(long)]
    pub baseline: bool,
    #[arg(long)]
    pub simulate: bool,
    /// `text`, `json` or `dot`.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Scenario {
    /// Presets: `0`..`9` (or `case0`..`case9`), `small`, `tiny`. Comma
    /// separated or repeated. Defaults to all ten cases.
    #[arg(long = "case", value_delimiter = ',', conflicts_with = "params")]
    pub cases: Vec<String>,
    /// JSON file with generator parameters; missing fields take defaults.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Override the seed of every scenario.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Instances per scenario.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub scenario: Scenario,
    #[arg(long, default_value_t = obtea_core::planner::DEFAULT_COMPACTION_DEPTH)]
    pub depth: usize,
    /// Print per-case means instead of per-instance rows.
    #[arg(long)]
    pub summary: bool,
    /// Leave out planning-time columns.
    #[arg(long)]
    pub no_timing: bool,
    /// `csv` or `json`.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub scenario: Scenario,
    /// Compaction depths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6")]
    pub depths: Vec<usize>,
    /// `csv` or `json`.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CafeArgs {
    #[arg(long, default_value = "data/cafe_goals.jsonl")]
    pub goals: PathBuf,
    #[arg(long, default_value = "data/cafe.domain")]
    pub domain: PathBuf,
    #[arg(long, default_value_t = obtea_core::planner::DEFAULT_COMPACTION_DEPTH)]
    pub depth: usize,
    /// Print per-difficulty means instead of per-goal rows.
    #[arg(long)]
    pub summary: bool,
    #[arg(long)]
    pub no_timing: bool,
    /// `csv` or `json`.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
