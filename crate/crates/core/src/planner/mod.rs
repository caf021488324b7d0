//! Optimal behavior-tree planning from DNF goals.

mod baseline;
mod compact;
mod obtea;
mod oracle;
mod report;

use std::time::Duration;

use thiserror::Error;

use crate::bt::BtNode;
use crate::cost::Cost;
use crate::world::{ActionId, ConditionSet, DomainError};

pub use baseline::{baseline_subgoal, baseline_subgoals, bt_expansion_baseline};
pub use compact::compact;
pub use obtea::{
    assemble, obtea, obtea_subgoals, parse_sub_goals, plan_subgoal, SubgoalPlan,
    DEFAULT_COMPACTION_DEPTH,
};
pub use oracle::{
    dijkstra_oracle, reachable_states, shortest_plan, OracleError, OraclePlan, DEFAULT_STATE_BOUND,
};
pub use report::{ExecReport, PlanReport, SubgoalReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("goal has no clauses")]
    EmptyGoal,
    #[error("sub-goal {0} contains a literal and its negation")]
    InconsistentGoal(String),
    #[error("no sub-goal is reachable from the initial state")]
    NoFeasibleSubgoal,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// A condition popped during expansion, with the action that leads from it
/// one step closer to the sub-goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRecord {
    /// Clause index of the sub-goal this record belongs to.
    pub subgoal: usize,
    pub condition: ConditionSet,
    /// `D(condition)`.
    pub cost_to_goal: Cost,
    pub via_action: ActionId,
    /// The condition `via_action` was regressed from.
    pub target: ConditionSet,
}

impl ExpansionRecord {
    /// `Sequence(ConditionGroup(condition), Action(via_action))`.
    pub fn subtree(&self) -> BtNode {
        BtNode::guarded(self.condition.clone(), self.via_action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgoalOutcome {
    /// Position of the clause in the goal DNF.
    pub index: usize,
    pub goal: ConditionSet,
    pub tree: BtNode,
    /// `None` for infeasible sub-goals.
    pub cost: Option<Cost>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlanStats {
    pub explored: usize,
    pub expanded: usize,
    pub planning_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Obtea,
    ObteaNoCompaction,
    Baseline,
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub method: Method,
    pub tree: BtNode,
    /// Feasible sub-goals in tree order, then infeasible ones.
    pub per_subgoal: Vec<SubgoalOutcome>,
    pub expanded_conditions: Vec<ExpansionRecord>,
    pub stats: PlanStats,
}

impl PlanResult {
    /// Cost of the first subtree in the assembled tree.
    pub fn cost(&self) -> Cost {
        self.per_subgoal[0]
            .cost
            .expect("assembled plans have a feasible first sub-goal")
    }

    /// Cheapest feasible sub-goal cost.
    pub fn min_cost(&self) -> Cost {
        self.per_subgoal
            .iter()
            .filter_map(|o| o.cost)
            .min()
            .expect("assembled plans have a feasible sub-goal")
    }

    pub fn infeasible(&self) -> impl Iterator<Item = &SubgoalOutcome> {
        self.per_subgoal.iter().filter(|o| o.cost.is_none())
    }

    /// The subtree planned for clause `index`.
    pub fn subgoal(&self, index: usize) -> Option<&SubgoalOutcome> {
        self.per_subgoal.iter().find(|o| o.index == index)
    }
}
