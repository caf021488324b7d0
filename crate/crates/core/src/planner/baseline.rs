//! Cost-blind breadth-first expansion used as the comparison baseline.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;
use std::time::Instant;

use super::obtea::{elapsed, parse_sub_goals, regress, trivial_subgoal, SubgoalPlan};
use super::{ExpansionRecord, Method, PlanError, PlanResult, PlanStats, SubgoalOutcome};
use crate::bt::BtNode;
use crate::cost::Cost;
use crate::logic::Dnf;
use crate::world::{ConditionSet, Domain, WorldState};

/// Same neighbor rule as the optimal planner, but conditions are expanded in
/// discovery order and the first discovery of a condition fixes its action.
pub fn baseline_subgoal(
    goal: &ConditionSet,
    s0: &WorldState,
    domain: &Domain,
) -> Result<SubgoalPlan, PlanError> {
    if !goal.is_consistent() {
        return Err(PlanError::InconsistentGoal(domain.condition_string(goal)));
    }
    if goal.holds(s0) {
        return Ok(trivial_subgoal(goal));
    }
    let mut seen: FxHashSet<ConditionSet> = FxHashSet::default();
    seen.insert(goal.clone());
    // (condition, cost along the discovery path, incoming record)
    let mut queue: VecDeque<(ConditionSet, Cost, Option<ExpansionRecord>)> =
        VecDeque::from([(goal.clone(), Cost::ZERO, None)]);
    let mut children = vec![BtNode::group(goal.clone())];
    let mut records = Vec::new();
    let mut cost = None;
    let mut expanded = 0;

    while let Some((c, d, rec)) = queue.pop_front() {
        expanded += 1;
        for a_id in domain.regression_candidates(&c) {
            let a = domain.action(a_id);
            let Some(next) = regress(&c, a) else { continue };
            if !seen.insert(next.clone()) {
                continue;
            }
            let r = ExpansionRecord {
                subgoal: 0,
                condition: next.clone(),
                cost_to_goal: d + a.cost(),
                via_action: a_id,
                target: c.clone(),
            };
            queue.push_back((next, d + a.cost(), Some(r)));
        }
        if let Some(r) = rec {
            children.push(BtNode::guarded(c.clone(), r.via_action));
            records.push(r);
            if c.holds(s0) {
                cost = Some(d);
                break;
            }
        }
    }

    Ok(SubgoalPlan {
        goal: goal.clone(),
        tree: BtNode::Fallback(children),
        cost,
        records,
        explored: seen.len(),
        expanded,
    })
}

/// Baseline planner: FIFO expansion per clause, no compaction, subtrees kept
/// in clause order. Sound but not cost-optimal.
pub fn bt_expansion_baseline(
    goal: &Dnf,
    s0: &WorldState,
    domain: &Domain,
) -> Result<PlanResult, PlanError> {
    let subgoals = parse_sub_goals(goal, domain)?;
    baseline_subgoals(&subgoals, s0, domain)
}

pub fn baseline_subgoals(
    subgoals: &[ConditionSet],
    s0: &WorldState,
    domain: &Domain,
) -> Result<PlanResult, PlanError> {
    if subgoals.is_empty() {
        return Err(PlanError::EmptyGoal);
    }
    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(subgoals.len());
    let mut all_records = Vec::new();
    let (mut explored, mut expanded) = (0, 0);
    for (index, g) in subgoals.iter().enumerate() {
        let plan = baseline_subgoal(g, s0, domain)?;
        explored += plan.explored;
        expanded += plan.expanded;
        all_records.extend(plan.records.into_iter().map(|mut r| {
            r.subgoal = index;
            r
        }));
        outcomes.push(SubgoalOutcome {
            index,
            goal: plan.goal,
            tree: plan.tree,
            cost: plan.cost,
        });
    }
    let (tree, per_subgoal) = super::obtea::assemble(outcomes, false)?;
    Ok(PlanResult {
        method: Method::Baseline,
        tree,
        per_subgoal,
        expanded_conditions: all_records,
        stats: PlanStats {
            explored,
            expanded,
            planning_time: elapsed(start),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bt::simulate;
    use crate::planner::obtea_subgoals;
    use crate::world::{parse_domain, AtomId, Lit};

    // A3x is an expensive duplicate of A3 that sorts (and is discovered) first.
    fn fixture() -> Domain {
        parse_domain(
            "[objects]\nX : t\n[predicates]\nL1\nL2\nL3\nL4\n[actions]\n\
             A0\n  pre: L1\n  add: L3\n  cost: 30\n\
             A1\n  add: L1\n  cost: 10\n\
             A2\n  pre: L1\n  add: L2\n  cost: 5\n\
             A3\n  pre: L1\n  add: L3\n  cost: 3\n",
        )
        .unwrap()
    }

    fn c(ids: &[u32]) -> ConditionSet {
        ids.iter().map(|&i| Lit::pos(AtomId(i - 1))).collect()
    }

    #[test]
    fn first_discovery_wins() {
        let d = fixture();
        let s0 = WorldState::new();
        let b = baseline_subgoals(&[c(&[3])], &s0, &d).unwrap();
        let o = obtea_subgoals(&[c(&[3])], &s0, &d, 0).unwrap();
        assert_eq!(o.per_subgoal[0].cost, Some(Cost::from_integer(13)));
        assert_eq!(b.per_subgoal[0].cost, Some(Cost::from_integer(40)));
        let tr = simulate(&b.tree, &s0, &d, 100).unwrap();
        assert!(tr.succeeded());
        assert_eq!(tr.total_cost, Cost::from_integer(40));
    }

    #[test]
    fn unique_path_matches_optimal() {
        let d = fixture();
        let s0 = WorldState::new();
        let b = baseline_subgoals(&[c(&[1, 2])], &s0, &d).unwrap();
        assert_eq!(b.per_subgoal[0].cost, Some(Cost::from_integer(15)));
    }

    #[test]
    fn unreachable_is_infeasible() {
        let d = fixture();
        let r = baseline_subgoals(&[c(&[4])], &WorldState::new(), &d);
        assert!(matches!(r, Err(PlanError::NoFeasibleSubgoal)));
        let p = baseline_subgoal(&c(&[4]), &WorldState::new(), &d).unwrap();
        assert_eq!(p.cost, None);
    }

    #[test]
    fn clause_order_is_kept() {
        let d = fixture();
        let b = baseline_subgoals(&[c(&[1, 2]), c(&[1])], &WorldState::new(), &d).unwrap();
        assert_eq!(b.per_subgoal[0].index, 0);
    }
}
