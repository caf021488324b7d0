//! Closed-loop execution of a tree against the world model.

use serde::Serialize;
use thiserror::Error;

use super::node::BtNode;
use super::tick::{tick, TickStatus};
use crate::cost::Cost;
use crate::world::{ActionError, ActionId, Domain, WorldState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("max_root_ticks must be at least 1")]
    ZeroTickBudget,
    #[error("tree selected an inapplicable action: {0}")]
    PreconditionViolated(#[source] ActionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Success,
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecTrace {
    /// Visited states, starting with the initial one; one more than `executed`.
    pub states: Vec<WorldState>,
    pub executed: Vec<ActionId>,
    pub condition_ticks: u64,
    pub root_ticks: u64,
    pub total_cost: Cost,
    pub outcome: Outcome,
}

impl ExecTrace {
    pub fn final_state(&self) -> &WorldState {
        self.states.last().expect("trace holds the initial state")
    }

    pub fn succeeded(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

/// Ticks `root` from `s0`, applying each selected action before the next tick.
///
/// Stops with `Success` when the root succeeds, `Stuck` when it fails or the
/// tick budget runs out.
pub fn simulate(
    root: &BtNode,
    s0: &WorldState,
    domain: &Domain,
    max_root_ticks: u64,
) -> Result<ExecTrace, SimError> {
    if max_root_ticks == 0 {
        return Err(SimError::ZeroTickBudget);
    }
    let mut trace = ExecTrace {
        states: vec![s0.clone()],
        executed: Vec::new(),
        condition_ticks: 0,
        root_ticks: 0,
        total_cost: Cost::ZERO,
        outcome: Outcome::Stuck,
    };
    while trace.root_ticks < max_root_ticks {
        let current = trace.states.last().expect("trace holds the initial state");
        let result = tick(root, current);
        trace.root_ticks += 1;
        trace.condition_ticks += result.condition_ticks;
        match result.status {
            TickStatus::Success => {
                trace.outcome = Outcome::Success;
                break;
            }
            TickStatus::Failure => break,
            TickStatus::Running(a) => {
                let next = domain
                    .apply(a, current)
                    .map_err(SimError::PreconditionViolated)?;
                trace.total_cost = trace.total_cost + domain.action(a).cost();
                trace.executed.push(a);
                trace.states.push(next);
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{parse_domain, ConditionSet, Lit};

    fn chain() -> Domain {
        parse_domain(
            "[objects]\nX : t\n[predicates]\nL1\nL2\n[actions]\nA1\n  add: L1\n  cost: 10\nA2\n  pre: L1\n  add: L2\n  cost: 5\n",
        )
        .unwrap()
    }

    fn lit(d: &Domain, name: &str) -> Lit {
        Lit::pos(
            d.atom_id(&crate::logic::Atom::new(name, Vec::<String>::new()))
                .unwrap(),
        )
    }

    #[test]
    fn goal_already_true_costs_nothing() {
        let d = chain();
        let l1 = lit(&d, "L1");
        let t = BtNode::Fallback(vec![BtNode::group(ConditionSet::from_lits([l1]))]);
        let s0 = WorldState::from_atoms([l1.atom()]);
        let tr = simulate(&t, &s0, &d, 10).unwrap();
        assert_eq!(tr.outcome, Outcome::Success);
        assert!(tr.executed.is_empty());
        assert_eq!(tr.total_cost, Cost::ZERO);
        assert_eq!(tr.root_ticks, 1);
    }

    #[test]
    fn stuck_without_actions() {
        let d = chain();
        let t = BtNode::Fallback(vec![BtNode::group(ConditionSet::from_lits([lit(
            &d, "L1",
        )]))]);
        let tr = simulate(&t, &WorldState::new(), &d, 10).unwrap();
        assert_eq!(tr.outcome, Outcome::Stuck);
        assert_eq!(tr.root_ticks, 1);
        assert_eq!(tr.states.len(), 1);
    }

    #[test]
    fn executes_actions_and_sums_costs() {
        let d = chain();
        let (l1, l2) = (lit(&d, "L1"), lit(&d, "L2"));
        let a1 = d.action_by_name("A1").unwrap();
        let a2 = d.action_by_name("A2").unwrap();
        let t = BtNode::Fallback(vec![
            BtNode::group(ConditionSet::from_lits([l2])),
            BtNode::guarded(ConditionSet::from_lits([l1]), a2),
            BtNode::guarded(ConditionSet::new(), a1),
        ]);
        let tr = simulate(&t, &WorldState::new(), &d, 10).unwrap();
        assert_eq!(tr.outcome, Outcome::Success);
        assert_eq!(tr.executed, vec![a1, a2]);
        assert_eq!(tr.total_cost, Cost::from_integer(15));
        assert_eq!(tr.states.len(), tr.executed.len() + 1);
        assert_eq!(tr.root_ticks, 3);
        // tick 1: L2, L1 fail; tick 2: L2 fails, L1 holds; tick 3: L2 holds
        assert_eq!(tr.condition_ticks, 2 + 2 + 1);
    }

    #[test]
    fn malformed_tree_reports_precondition_violation() {
        let d = chain();
        let t = BtNode::Action(d.action_by_name("A2").unwrap());
        assert!(matches!(
            simulate(&t, &WorldState::new(), &d, 5),
            Err(SimError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn tick_budget_is_enforced() {
        let d = chain();
        let t = BtNode::Action(d.action_by_name("A1").unwrap());
        let tr = simulate(&t, &WorldState::new(), &d, 3).unwrap();
        assert_eq!(tr.outcome, Outcome::Stuck);
        assert_eq!(tr.root_ticks, 3);
        assert_eq!(
            simulate(&t, &WorldState::new(), &d, 0),
            Err(SimError::ZeroTickBudget)
        );
    }
}
