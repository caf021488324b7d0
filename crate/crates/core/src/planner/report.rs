use serde::Serialize;

use super::{Method, PlanResult};
use crate::bt::{render, ExecTrace, Outcome, RenderFormat};
use crate::cost::Cost;
use crate::world::Domain;

#[derive(Debug, Clone, Serialize)]
pub struct SubgoalReport {
    pub clause: usize,
    pub goal: String,
    /// `None` when infeasible.
    pub cost: Option<Cost>,
    pub feasible: bool,
}

/// Serializable summary of a planning run.
#[derive(Debug, Clone, Serialize)]
pub struct PlanReport {
    pub method: Method,
    pub cost: Cost,
    pub subgoals: Vec<SubgoalReport>,
    pub explored: usize,
    pub expanded: usize,
    pub planning_time_ms: f64,
    pub node_count: usize,
    pub condition_leaves: usize,
    pub action_leaves: usize,
    pub tree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub execution: Option<ExecReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExecReport {
    pub outcome: Outcome,
    pub actions: Vec<String>,
    pub total_cost: Cost,
    pub root_ticks: u64,
    pub condition_ticks: u64,
    pub final_state: String,
}

impl ExecReport {
    pub fn new(trace: &ExecTrace, domain: &Domain) -> Self {
        Self {
            outcome: trace.outcome,
            actions: trace
                .executed
                .iter()
                .map(|&a| domain.action(a).name().to_string())
                .collect(),
            total_cost: trace.total_cost,
            root_ticks: trace.root_ticks,
            condition_ticks: trace.condition_ticks,
            final_state: domain.state_string(trace.final_state()),
        }
    }
}

impl PlanReport {
    pub fn new(result: &PlanResult, domain: &Domain) -> Self {
        Self {
            method: result.method,
            cost: result.cost(),
            subgoals: result
                .per_subgoal
                .iter()
                .map(|o| SubgoalReport {
                    clause: o.index,
                    goal: domain.condition_string(&o.goal),
                    cost: o.cost,
                    feasible: o.cost.is_some(),
                })
                .collect(),
            explored: result.stats.explored,
            expanded: result.stats.expanded,
            planning_time_ms: result.stats.planning_time.as_secs_f64() * 1e3,
            node_count: result.tree.node_count(),
            condition_leaves: result.tree.condition_leaf_count(),
            action_leaves: result.tree.action_leaf_count(),
            tree: render(&result.tree, domain, RenderFormat::Text),
            execution: None,
        }
    }

    pub fn with_execution(mut self, trace: &ExecTrace, domain: &Domain) -> Self {
        self.execution = Some(ExecReport::new(trace, domain));
        self
    }
}
