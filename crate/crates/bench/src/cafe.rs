//! Ground-truth café goals planned with the baseline and OBTEA.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use obtea_core::logic::{parse_goal, to_dnf};
use obtea_core::planner::parse_sub_goals;
use obtea_core::world::{load_domain, ConditionSet, Domain};
use obtea_intent::load_dataset;

use crate::compare::{run_method, MethodName, Run};
use crate::BenchError;

pub const DIFFICULTIES: [&str; 3] = ["easy", "medium", "hard"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CafeRow {
    pub index: usize,
    pub difficulty: String,
    pub instruction: String,
    pub goal: String,
    pub method: MethodName,
    pub planned_cost: Option<f64>,
    pub total_cost: Option<f64>,
    pub condition_ticks: Option<u64>,
    pub planning_time_ms: f64,
    pub status: String,
}

/// Means per difficulty over goals where both methods succeeded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CafeSummary {
    pub difficulty: String,
    pub goals: usize,
    pub baseline_cost: f64,
    pub obtea_cost: f64,
    pub baseline_ticks: f64,
    pub obtea_ticks: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CafeReport {
    pub compaction_depth: usize,
    pub rows: Vec<CafeRow>,
    pub summary: Vec<CafeSummary>,
}

/// Plans every goal of `goals_file` (intent dataset format) from the domain's
/// `[init]` state, or the empty state if it has none.
pub fn run_cafe_suite(
    goals_file: impl AsRef<Path>,
    domain_file: impl AsRef<Path>,
    compaction_depth: usize,
) -> Result<CafeReport, BenchError> {
    let domain = load_domain(domain_file)?;
    let items = load_dataset(goals_file)?;
    let s0 = domain.init().cloned().unwrap_or_default();
    let rows: Vec<CafeRow> = items
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let subgoals = interned(&item.goal, &domain);
            [MethodName::Baseline, MethodName::Obtea].map(|method| {
                let run = match &subgoals {
                    Ok(sg) => run_method(method, sg, &s0, &domain, compaction_depth),
                    Err(e) => failed(e.clone()),
                };
                CafeRow {
                    index,
                    difficulty: item.difficulty.clone().unwrap_or_default(),
                    instruction: item.instruction.clone(),
                    goal: item.goal.clone(),
                    method,
                    planned_cost: run.planned_cost,
                    total_cost: run.total_cost,
                    condition_ticks: run.condition_ticks,
                    planning_time_ms: run.planning_time_ms,
                    status: run.status,
                }
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = DIFFICULTIES.iter().map(|d| summarize(d, &rows)).collect();
    Ok(CafeReport {
        compaction_depth,
        rows,
        summary,
    })
}

fn interned(goal: &str, domain: &Domain) -> Result<Vec<ConditionSet>, String> {
    let wff = parse_goal(goal, domain.vocab()).map_err(|e| e.to_string())?;
    let dnf = to_dnf(&wff).map_err(|e| e.to_string())?;
    parse_sub_goals(&dnf, domain).map_err(|e| e.to_string())
}

fn failed(status: String) -> Run {
    Run {
        planned_cost: None,
        total_cost: None,
        condition_ticks: None,
        root_ticks: None,
        expanded: 0,
        planning_time_ms: 0.0,
        status,
    }
}

fn summarize(difficulty: &str, rows: &[CafeRow]) -> CafeSummary {
    let pairs: Vec<(&CafeRow, &CafeRow)> = rows
        .chunks(2)
        .filter(|p| p[0].difficulty == difficulty && p[0].status == "ok" && p[1].status == "ok")
        .map(|p| (&p[0], &p[1]))
        .collect();
    let n = pairs.len().max(1) as f64;
    let avg = |f: &dyn Fn(&(&CafeRow, &CafeRow)) -> f64| pairs.iter().map(f).sum::<f64>() / n;
    CafeSummary {
        difficulty: difficulty.to_string(),
        goals: pairs.len(),
        baseline_cost: avg(&|p| p.0.total_cost.unwrap_or(0.0)),
        obtea_cost: avg(&|p| p.1.total_cost.unwrap_or(0.0)),
        baseline_ticks: avg(&|p| p.0.condition_ticks.unwrap_or(0) as f64),
        obtea_ticks: avg(&|p| p.1.condition_ticks.unwrap_or(0) as f64),
    }
}

impl CafeReport {
    /// Rows of one method, in goal order.
    pub fn method_rows(&self, method: MethodName) -> impl Iterator<Item = &CafeRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }

    /// Columns: `index,difficulty,method,goal,planned_cost,total_cost,condition_ticks[,planning_time_ms],status`.
    pub fn write_rows_csv(&self, out: impl Write, timing: bool) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "index",
            "difficulty",
            "method",
            "goal",
            "planned_cost",
            "total_cost",
            "condition_ticks",
        ];
        if timing {
            header.push("planning_time_ms");
        }
        header.push("status");
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                r.index.to_string(),
                r.difficulty.clone(),
                r.method.as_str().to_string(),
                r.goal.clone(),
                r.planned_cost.map(|c| c.to_string()).unwrap_or_default(),
                r.total_cost.map(|c| c.to_string()).unwrap_or_default(),
                r.condition_ticks.map(|c| c.to_string()).unwrap_or_default(),
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

    /// Columns: `difficulty,goals,baseline_cost,obtea_cost,baseline_ticks,obtea_ticks`.
    pub fn write_summary_csv(&self, out: impl Write) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "difficulty",
            "goals",
            "baseline_cost",
            "obtea_cost",
            "baseline_ticks",
            "obtea_ticks",
        ])?;
        for s in &self.summary {
            w.write_record([
                s.difficulty.clone(),
                s.goals.to_string(),
                format!("{:.2}", s.baseline_cost),
                format!("{:.2}", s.obtea_cost),
                format!("{:.2}", s.baseline_ticks),
                format!("{:.2}", s.obtea_ticks),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn toy_suite_records_failures_per_goal() {
        let dir = std::env::temp_dir().join(format!("obtea-cafe-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let domain = write(
            &dir,
            "toy.domain",
            "[objects]\nX : t\n[predicates]\nL1\nL2\nL3\n[actions]\n\
             A1\n  add: L1\n  cost: 10\n\
             A2\n  pre: L1\n  add: L2\n  cost: 5\n",
        );
        let goals = write(
            &dir,
            "goals.jsonl",
            "{\"instruction\": \"a\", \"goal\": \"L2\", \"difficulty\": \"easy\"}\n\
             {\"instruction\": \"b\", \"goal\": \"L3\", \"difficulty\": \"hard\"}\n\
             {\"instruction\": \"c\", \"goal\": \"Nope\", \"difficulty\": \"hard\"}\n",
        );
        let r = run_cafe_suite(&goals, &domain, 4).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert_eq!(r.rows[0].total_cost, Some(15.0));
        assert_eq!(r.rows[1].total_cost, Some(15.0));
        assert!(r.rows[2].status.contains("reachable"));
        assert!(r.rows[4].status.contains("Nope"));
        assert_eq!(r.summary[0].goals, 1);
        assert_eq!(r.summary[2].goals, 0);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
