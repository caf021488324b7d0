//! Baseline vs OBTEA vs OBTEA without compaction on generated instances.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use obtea_core::bt::simulate;
use obtea_core::planner::{baseline_subgoals, obtea_subgoals, PlanError, PlanResult};
use obtea_core::world::{ConditionSet, Domain, WorldState};

use crate::gen::{generate, GenParams, InstanceStats};
use crate::BenchError;

/// Reachable-state bound used for the `states` column.
pub const STATS_STATE_BOUND: usize = 1000;
/// Root tick budget when executing a planned tree.
pub const MAX_ROOT_TICKS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Baseline,
    Obtea,
    ObteaNc,
}

impl MethodName {
    pub const ALL: [MethodName; 3] = [MethodName::Baseline, MethodName::Obtea, MethodName::ObteaNc];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodName::Baseline => "baseline",
            MethodName::Obtea => "obtea",
            MethodName::ObteaNc => "obtea-nc",
        }
    }
}

/// One planner run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub case: String,
    pub instance: usize,
    pub seed: u64,
    pub method: MethodName,
    pub literals: usize,
    pub actions: usize,
    pub states: usize,
    /// Cost of the cheapest planned sub-goal.
    pub planned_cost: Option<f64>,
    /// Cost of the actions executed from `s0`.
    pub total_cost: Option<f64>,
    pub condition_ticks: Option<u64>,
    pub root_ticks: Option<u64>,
    pub expanded: usize,
    pub planning_time_ms: f64,
    /// `ok`, `stuck`, or an error message.
    pub status: String,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Means over the successful runs of one method on one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub case: String,
    pub method: MethodName,
    pub runs: usize,
    pub failures: usize,
    pub literals: f64,
    pub states: f64,
    pub actions: f64,
    pub total_cost: f64,
    pub condition_ticks: f64,
    pub planning_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseConfig {
    pub name: String,
    pub params: GenParams,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub compaction_depth: usize,
    pub instances_per_case: usize,
    pub cases: Vec<CaseConfig>,
    pub rows: Vec<Row>,
    pub summary: Vec<Summary>,
}

/// Outcome of planning and executing one tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub planned_cost: Option<f64>,
    pub total_cost: Option<f64>,
    pub condition_ticks: Option<u64>,
    pub root_ticks: Option<u64>,
    pub expanded: usize,
    pub planning_time_ms: f64,
    pub status: String,
}

/// Plans with `method` and executes the tree from `s0`.
pub fn run_method(
    method: MethodName,
    subgoals: &[ConditionSet],
    s0: &WorldState,
    domain: &Domain,
    depth: usize,
) -> Run {
    let planned: Result<PlanResult, PlanError> = match method {
        MethodName::Baseline => baseline_subgoals(subgoals, s0, domain),
        MethodName::Obtea => obtea_subgoals(subgoals, s0, domain, depth),
        MethodName::ObteaNc => obtea_subgoals(subgoals, s0, domain, 0),
    };
    let plan = match planned {
        Ok(p) => p,
        Err(e) => {
            return Run {
                planned_cost: None,
                total_cost: None,
                condition_ticks: None,
                root_ticks: None,
                expanded: 0,
                planning_time_ms: 0.0,
                status: e.to_string(),
            }
        }
    };
    let mut run = Run {
        planned_cost: Some(plan.min_cost().to_f64()),
        total_cost: None,
        condition_ticks: None,
        root_ticks: None,
        expanded: plan.stats.expanded,
        planning_time_ms: plan.stats.planning_time.as_secs_f64() * 1e3,
        status: String::new(),
    };
    match simulate(&plan.tree, s0, domain, MAX_ROOT_TICKS) {
        Ok(trace) => {
            run.total_cost = Some(trace.total_cost.to_f64());
            run.condition_ticks = Some(trace.condition_ticks);
            run.root_ticks = Some(trace.root_ticks);
            run.status = if trace.succeeded() { "ok" } else { "stuck" }.to_string();
        }
        Err(e) => run.status = e.to_string(),
    }
    run
}

fn instance_rows(name: &str, params: &GenParams, index: usize, depth: usize) -> Vec<Row> {
    let seed = params.seed.wrapping_add(index as u64);
    let row = |method, stats: InstanceStats, run: Run| Row {
        case: name.to_string(),
        instance: index,
        seed,
        method,
        literals: stats.literals,
        actions: stats.actions,
        states: stats.states,
        planned_cost: run.planned_cost,
        total_cost: run.total_cost,
        condition_ticks: run.condition_ticks,
        root_ticks: run.root_ticks,
        expanded: run.expanded,
        planning_time_ms: run.planning_time_ms,
        status: run.status,
    };
    match generate(&params.clone().with_seed(seed)) {
        Ok(inst) => {
            let stats = inst.stats(STATS_STATE_BOUND);
            MethodName::ALL
                .iter()
                .map(|&m| {
                    row(
                        m,
                        stats,
                        run_method(m, &inst.subgoals, &inst.s0, &inst.domain, depth),
                    )
                })
                .collect()
        }
        Err(e) => {
            let stats = InstanceStats {
                literals: 0,
                actions: 0,
                states: 0,
                states_capped: false,
            };
            let failed = Run {
                planned_cost: None,
                total_cost: None,
                condition_ticks: None,
                root_ticks: None,
                expanded: 0,
                planning_time_ms: 0.0,
                status: e.to_string(),
            };
            MethodName::ALL
                .iter()
                .map(|&m| row(m, stats, failed.clone()))
                .collect()
        }
    }
}

/// Generates `instances_per_case` instances per case (seeds `seed`, `seed + 1`,
/// ...) and runs all three methods on each. Instances run in parallel; rows
/// come back in case, instance, method order.
pub fn run_comparison(
    cases: &[(String, GenParams)],
    instances_per_case: usize,
    compaction_depth: usize,
) -> Result<ComparisonReport, BenchError> {
    for (_, p) in cases {
        p.validate()?;
    }
    let jobs: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|c| (0..instances_per_case).map(move |i| (c, i)))
        .collect();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(c, i)| instance_rows(&cases[c].0, &cases[c].1, i, compaction_depth))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = cases
        .iter()
        .flat_map(|(name, _)| MethodName::ALL.iter().map(move |&m| (name, m)))
        .map(|(name, m)| {
            summarize(
                name,
                m,
                rows.iter().filter(|r| &r.case == name && r.method == m),
            )
        })
        .collect();
    Ok(ComparisonReport {
        compaction_depth,
        instances_per_case,
        cases: cases
            .iter()
            .map(|(name, params)| CaseConfig {
                name: name.clone(),
                params: params.clone(),
            })
            .collect(),
        rows,
        summary,
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

fn summarize<'a>(case: &str, method: MethodName, rows: impl Iterator<Item = &'a Row>) -> Summary {
    let rows: Vec<&Row> = rows.collect();
    let ok: Vec<&Row> = rows.iter().copied().filter(|r| r.ok()).collect();
    Summary {
        case: case.to_string(),
        method,
        runs: rows.len(),
        failures: rows.len() - ok.len(),
        literals: mean(ok.iter().map(|r| r.literals as f64)),
        states: mean(ok.iter().map(|r| r.states as f64)),
        actions: mean(ok.iter().map(|r| r.actions as f64)),
        total_cost: mean(ok.iter().filter_map(|r| r.total_cost)),
        condition_ticks: mean(
            ok.iter()
                .filter_map(|r| r.condition_ticks.map(|t| t as f64)),
        ),
        planning_time_ms: mean(ok.iter().map(|r| r.planning_time_ms)),
    }
}

impl ComparisonReport {
    pub fn summary_for(&self, case: &str, method: MethodName) -> Option<&Summary> {
        self.summary
            .iter()
            .find(|s| s.case == case && s.method == method)
    }

    /// Per-instance rows. Columns:
    /// `case,instance,seed,method,literals,actions,states,planned_cost,total_cost,condition_ticks,root_ticks,expanded[,planning_time_ms],status`.
    pub fn write_rows_csv(&self, out: impl Write, timing: bool) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "case",
            "instance",
            "seed",
            "method",
            "literals",
            "actions",
            "states",
            "planned_cost",
            "total_cost",
            "condition_ticks",
            "root_ticks",
            "expanded",
        ];
        if timing {
            header.push("planning_time_ms");
        }
        header.push("status");
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                r.case.clone(),
                r.instance.to_string(),
                r.seed.to_string(),
                r.method.as_str().to_string(),
                r.literals.to_string(),
                r.actions.to_string(),
                r.states.to_string(),
                opt(r.planned_cost),
                opt(r.total_cost),
                opt(r.condition_ticks),
                opt(r.root_ticks),
                r.expanded.to_string(),
            ];
            if timing {
                rec.push(format!("{:.3}", r.planning_time_ms));
            }
            rec.push(r.status.clone());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Per-case means. Columns:
    /// `case,method,runs,failures,literals,states,actions,total_cost,condition_ticks[,planning_time_ms]`.
    pub fn write_summary_csv(&self, out: impl Write, timing: bool) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "case",
            "method",
            "runs",
            "failures",
            "literals",
            "states",
            "actions",
            "total_cost",
            "condition_ticks",
        ];
        if timing {
            header.push("planning_time_ms");
        }
        w.write_record(&header)?;
        for s in &self.summary {
            let mut rec = vec![
                s.case.clone(),
                s.method.as_str().to_string(),
                s.runs.to_string(),
                s.failures.to_string(),
                format!("{:.1}", s.literals),
                format!("{:.1}", s.states),
                format!("{:.1}", s.actions),
                format!("{:.2}", s.total_cost),
                format!("{:.2}", s.condition_ticks),
            ];
            if timing {
                rec.push(format!("{:.3}", s.planning_time_ms));
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
