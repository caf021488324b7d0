mod args;

use std::fmt::Display;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{
    AblateArgs, BenchArgs, CafeArgs, Cli, Command, Format, InterpretArgs, NormalizeArgs, PlanArgs,
    PlanOptions, Scenario,
};
use obtea_bench::{ablate_depth, run_cafe_suite, run_comparison, GenParams};
use obtea_core::bt::{render, simulate, RenderFormat};
use obtea_core::logic::{clause_to_string, parse_goal, parse_wff, to_dnf, Dnf, GoalError, Wff};
use obtea_core::planner::{bt_expansion_baseline, obtea, PlanError, PlanReport};
use obtea_core::world::{load_domain, Domain, WorldState};
use obtea_intent::{
    interpret, load_demonstrations, Attempt, BackendError, CompletionBackend, InterpretError,
    InterpretOutcome, LookupBackend, PromptConfig, RecordingBackend, RemoteBackend, ReplayBackend,
    TOKEN_ENV,
};

const EXIT_ERROR: u8 = 1;
const EXIT_SYNTAX: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EXIT_INTERPRET_FAILED: u8 = 5;
const EXIT_BACKEND: u8 = 6;
const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }

    fn other(message: impl Display) -> Self {
        Self::new(EXIT_ERROR, message)
    }
}

impl From<GoalError> for Failure {
    fn from(e: GoalError) -> Self {
        match e {
            GoalError::Syntax(_) => Failure::new(EXIT_SYNTAX, e),
            GoalError::Semantic(_) => Failure::new(EXIT_SEMANTIC, e),
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        match e {
            PlanError::NoFeasibleSubgoal => Failure::new(EXIT_INFEASIBLE, e),
            _ => Failure::new(EXIT_SEMANTIC, e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::new(0, "");
        }
        Failure::other(e)
    }
}

impl From<obtea_bench::BenchError> for Failure {
    fn from(e: obtea_bench::BenchError) -> Self {
        Failure::other(e)
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Normalize(a) => normalize(a),
        Command::Plan(a) => plan(a),
        Command::Interpret(a) => interpret_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Ablate(a) => ablate(a),
        Command::Cafe(a) => cafe(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn check_format(format: Format, allowed: &[Format]) -> CliResult {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| format!("{f:?}").to_lowercase())
            .collect();
        Err(Failure::new(
            EXIT_USAGE,
            format!("--format must be one of: {}", names.join(", ")),
        ))
    }
}

fn domain(path: &Path) -> Result<Domain, Failure> {
    load_domain(path).map_err(Failure::other)
}

fn goal_dnf(text: &str, domain: Option<&Domain>) -> Result<(Wff, Dnf), Failure> {
    let wff = match domain {
        Some(d) => parse_goal(text, d.vocab())?,
        None => parse_wff(text).map_err(|e| Failure::new(EXIT_SYNTAX, e))?,
    };
    let dnf = to_dnf(&wff).map_err(|e| Failure::new(EXIT_SEMANTIC, e))?;
    Ok((wff, dnf))
}

fn normalize(a: NormalizeArgs) -> CliResult {
    check_format(a.format, &[Format::Text, Format::Json])?;
    let d = a.domain.as_deref().map(domain).transpose()?;
    let (wff, dnf) = goal_dnf(&a.goal, d.as_ref())?;
    let mut out = io::stdout().lock();
    if a.format == Format::Json {
        let clauses: Vec<Vec<String>> = dnf
            .clauses
            .iter()
            .map(|c| c.iter().map(ToString::to_string).collect())
            .collect();
        writeln!(
            out,
            "{}",
            json!({ "goal": wff.to_string(), "clauses": clauses })
        )?;
    } else {
        for c in &dnf.clauses {
            writeln!(out, "{}", clause_to_string(c))?;
        }
    }
    Ok(())
}

fn initial_state(
    domain: &Domain,
    s0: Option<&str>,
    s0_file: Option<&Path>,
) -> Result<WorldState, Failure> {
    let text = match (s0, s0_file) {
        (Some(t), _) => t.to_string(),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| Failure::other(format!("{}: {e}", p.display())))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join(" & "),
        (None, None) => return Ok(domain.init().cloned().unwrap_or_default()),
    };
    if text.trim().is_empty() {
        return Ok(WorldState::default());
    }
    let (_, dnf) = goal_dnf(&text, Some(domain))?;
    match dnf.clauses.as_slice() {
        [clause] => domain
            .state(clause.iter())
            .map_err(|e| Failure::new(EXIT_SEMANTIC, format!("initial state: {e}"))),
        _ => Err(Failure::new(
            EXIT_SEMANTIC,
            "initial state must be a conjunction of positive literals",
        )),
    }
}

fn plan_and_print(
    dnf: &Dnf,
    opts: &PlanOptions,
    domain: &Domain,
    s0: &WorldState,
    format: Format,
) -> CliResult {
    let result = if opts.baseline {
        bt_expansion_baseline(dnf, s0, domain)?
    } else {
        obtea(dnf, s0, domain, opts.depth)?
    };
    let trace = if opts.simulate {
        Some(simulate(&result.tree, s0, domain, opts.max_ticks).map_err(Failure::other)?)
    } else {
        None
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Dot => write!(out, "{}", render(&result.tree, domain, RenderFormat::Dot))?,
        Format::Json => {
            let mut report = PlanReport::new(&result, domain);
            if let Some(t) = &trace {
                report = report.with_execution(t, domain);
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).map_err(Failure::other)?
            )?;
        }
        _ => {
            let report = PlanReport::new(&result, domain);
            writeln!(
                out,
                "method: {}",
                serde_json::to_value(report.method)
                    .map_err(Failure::other)?
                    .as_str()
                    .unwrap_or("")
            )?;
            for s in &report.subgoals {
                match s.cost {
                    Some(c) => writeln!(out, "sub-goal {}: {}  cost {c}", s.clause, s.goal)?,
                    None => writeln!(out, "sub-goal {}: {}  infeasible", s.clause, s.goal)?,
                }
            }
            writeln!(out, "cost: {}", report.cost)?;
            writeln!(
                out,
                "explored: {}  expanded: {}  nodes: {}  time: {:.3} ms",
                report.explored, report.expanded, report.node_count, report.planning_time_ms
            )?;
            writeln!(out, "tree:")?;
            write!(out, "{}", report.tree)?;
            if let Some(t) = &trace {
                let exec = obtea_core::planner::ExecReport::new(t, domain);
                writeln!(out, "execution: {:?}", exec.outcome)?;
                for (i, a) in exec.actions.iter().enumerate() {
                    writeln!(out, "  {}. {a}", i + 1)?;
                }
                writeln!(out, "total cost: {}", exec.total_cost)?;
                writeln!(
                    out,
                    "root ticks: {}  condition ticks: {}",
                    exec.root_ticks, exec.condition_ticks
                )?;
                writeln!(out, "final state: {}", exec.final_state)?;
            }
        }
    }
    Ok(())
}

fn plan(a: PlanArgs) -> CliResult {
    check_format(a.format, &[Format::Text, Format::Json, Format::Dot])?;
    let d = domain(&a.opts.domain)?;
    let (_, dnf) = goal_dnf(&a.goal, Some(&d))?;
    let s0 = initial_state(&d, a.opts.s0.as_deref(), a.opts.s0_file.as_deref())?;
    plan_and_print(&dnf, &a.opts, &d, &s0, a.format)
}

fn backend(a: &InterpretArgs) -> Result<Box<dyn CompletionBackend>, Failure> {
    let unavailable = |e: BackendError| Failure::new(EXIT_BACKEND, e);
    Ok(if let Some(p) = &a.replay {
        Box::new(ReplayBackend::load(p).map_err(unavailable)?)
    } else if let Some(p) = &a.script {
        Box::new(LookupBackend::load(p).map_err(unavailable)?)
    } else if let Some(url) = &a.url {
        Box::new(RemoteBackend::new(
            url.clone(),
            std::env::var(TOKEN_ENV).ok(),
        ))
    } else {
        Box::new(RemoteBackend::from_env().map_err(unavailable)?)
    })
}

fn attempt_lines(transcript: &[Attempt]) -> Vec<String> {
    transcript
        .iter()
        .enumerate()
        .map(|(i, t)| match &t.error_kind {
            None => format!("attempt {}: {}  ok", i + 1, t.candidate),
            Some(kind) => format!(
                "attempt {}: {}  {}: {}",
                i + 1,
                t.candidate,
                serde_json::to_value(kind)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_else(|| format!("{kind:?}")),
                t.errors.join("; ")
            ),
        })
        .collect()
}

fn interpret_cmd(a: InterpretArgs) -> CliResult {
    check_format(a.format, &[Format::Text, Format::Json, Format::Dot])?;
    let d = domain(&a.domain)?;
    let demos = match &a.demos {
        Some(p) => load_demonstrations(p).map_err(Failure::other)?,
        None => Vec::new(),
    };
    let config = PromptConfig::new(d.vocab().clone(), demos)
        .map_err(|(i, e)| Failure::other(format!("demonstration {}: {e}", i + 1)))?;
    let recorder = RecordingBackend::new(backend(&a)?);
    let outcome = interpret(&a.instruction, &recorder, &config, a.max_retries);
    if let Some(p) = &a.record {
        recorder
            .write_jsonl(p)
            .map_err(|e| Failure::other(format!("{}: {e}", p.display())))?;
    }
    let outcome =
        outcome.map_err(|InterpretError::BackendUnavailable(e)| Failure::new(EXIT_BACKEND, e))?;
    if a.verbose {
        for line in attempt_lines(outcome.transcript()) {
            eprintln!("{line}");
        }
    }
    let mut out = io::stdout().lock();
    match outcome {
        InterpretOutcome::Goal {
            wff,
            dnf,
            attempts_used,
            transcript,
        } => {
            if a.plan {
                let opts = PlanOptions {
                    domain: a.domain.clone(),
                    s0: a.s0.clone(),
                    s0_file: a.s0_file.clone(),
                    depth: a.depth,
                    baseline: a.baseline,
                    simulate: a.simulate,
                    max_ticks: 10_000,
                };
                if a.format == Format::Text {
                    writeln!(out, "goal: {wff}")?;
                }
                drop(out);
                let s0 = initial_state(&d, a.s0.as_deref(), a.s0_file.as_deref())?;
                return plan_and_print(&dnf, &opts, &d, &s0, a.format);
            }
            if a.format == Format::Json {
                let clauses: Vec<String> = dnf.clauses.iter().map(clause_to_string).collect();
                let v = json!({
                    "goal": wff.to_string(),
                    "clauses": clauses,
                    "attempts": attempts_used,
                    "transcript": transcript,
                });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).map_err(Failure::other)?
                )?;
            } else {
                writeln!(out, "{wff}")?;
            }
            Ok(())
        }
        InterpretOutcome::Failed { transcript } => {
            if a.format == Format::Json {
                let v =
                    json!({ "goal": null, "attempts": transcript.len(), "transcript": transcript });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).map_err(Failure::other)?
                )?;
            } else {
                for line in attempt_lines(&transcript) {
                    writeln!(out, "{line}")?;
                }
            }
            Err(Failure::new(
                EXIT_INTERPRET_FAILED,
                format!("no valid goal after {} attempts", transcript.len()),
            ))
        }
    }
}

fn scenarios(s: &Scenario) -> Result<Vec<(String, GenParams)>, Failure> {
    let mut out = Vec::new();
    if let Some(p) = &s.params {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Failure::other(format!("{}: {e}", p.display())))?;
        let params: GenParams = serde_json::from_str(&text)
            .map_err(|e| Failure::other(format!("{}: {e}", p.display())))?;
        let name = p
            .file_stem()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        out.push((name, params));
    } else if s.cases.is_empty() {
        for i in 0..obtea_bench::gen::CASES.len() {
            out.push((
                format!("case{i}"),
                GenParams::case(i).expect("case index in range"),
            ));
        }
    } else {
        for name in &s.cases {
            let name = name.trim();
            let key = if name.chars().all(|c| c.is_ascii_digit()) {
                format!("case{name}")
            } else {
                name.to_string()
            };
            let params = GenParams::preset(&key)
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown case `{name}`")))?;
            out.push((key, params));
        }
    }
    if let Some(seed) = s.seed {
        for (_, p) in &mut out {
            p.seed = seed;
        }
    }
    for (name, p) in &out {
        p.validate()
            .map_err(|e| Failure::new(EXIT_USAGE, format!("{name}: {e}")))?;
    }
    Ok(out)
}

fn bench(a: BenchArgs) -> CliResult {
    check_format(a.format, &[Format::Csv, Format::Json])?;
    let cases = scenarios(&a.scenario)?;
    let report = run_comparison(&cases, a.scenario.n, a.depth)?;
    let mut out = io::stdout().lock();
    match (a.format, a.summary) {
        (Format::Json, _) => writeln!(out, "{}", report.to_json())?,
        (_, true) => report.write_summary_csv(out, !a.no_timing)?,
        (_, false) => report.write_rows_csv(out, !a.no_timing)?,
    }
    Ok(())
}

fn ablate(a: AblateArgs) -> CliResult {
    check_format(a.format, &[Format::Csv, Format::Json])?;
    if a.depths.is_empty() {
        return Err(Failure::new(
            EXIT_USAGE,
            "--depths needs at least one depth",
        ));
    }
    let cases = scenarios(&a.scenario)?;
    let curves = cases
        .iter()
        .map(|(name, p)| ablate_depth(p, a.scenario.n, &a.depths).map(|c| (name.clone(), c)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::stdout().lock();
    if a.format == Format::Json {
        let v: Vec<_> = curves
            .iter()
            .map(|(name, c)| json!({ "case": name, "curve": c }))
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).map_err(Failure::other)?
        )?;
    } else {
        writeln!(out, "case,depth,mean_condition_ticks")?;
        for (name, c) in &curves {
            for (d, m) in c.depths.iter().zip(&c.mean) {
                writeln!(out, "{name},{d},{m:.3}")?;
            }
        }
    }
    Ok(())
}

fn cafe(a: CafeArgs) -> CliResult {
    check_format(a.format, &[Format::Csv, Format::Json])?;
    let report = run_cafe_suite(&a.goals, &a.domain, a.depth)?;
    let mut out = io::stdout().lock();
    match (a.format, a.summary) {
        (Format::Json, _) => writeln!(out, "{}", report.to_json())?,
        (_, true) => report.write_summary_csv(out)?,
        (_, false) => report.write_rows_csv(out, !a.no_timing)?,
    }
    Ok(())
}
