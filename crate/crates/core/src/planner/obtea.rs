//! Cost-ordered backward expansion over condition space.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use super::compact::compact;
use super::{ExpansionRecord, Method, PlanError, PlanResult, PlanStats, SubgoalOutcome};
use crate::bt::BtNode;
use crate::cost::Cost;
use crate::logic::Dnf;
use crate::world::{ActionId, ConditionSet, Domain, GroundAction, WorldState};

/// Default number of compaction passes.
pub const DEFAULT_COMPACTION_DEPTH: usize = 3;

/// One sub-goal's expanded subtree before compaction.
#[derive(Debug, Clone)]
pub struct SubgoalPlan {
    pub goal: ConditionSet,
    /// `Fallback(ConditionGroup(goal), M(c1), M(c2), ...)` in expansion order.
    pub tree: BtNode,
    /// `None` when no condition holding in `s0` was reached.
    pub cost: Option<Cost>,
    pub records: Vec<ExpansionRecord>,
    /// Distinct conditions discovered, including the goal.
    pub explored: usize,
    /// Conditions popped and expanded.
    pub expanded: usize,
}

/// One DNF clause per sub-goal, clause order preserved.
pub fn parse_sub_goals(goal: &Dnf, domain: &Domain) -> Result<Vec<ConditionSet>, PlanError> {
    goal.clauses
        .iter()
        .map(|c| domain.clause_condition(c).map_err(PlanError::from))
        .collect()
}

/// The neighbor rule: the condition under which executing `a` makes `c` hold,
/// or `None` when `a` is irrelevant to `c`, destroys part of it, or leads to a
/// contradictory condition.
pub(crate) fn regress(c: &ConditionSet, a: &GroundAction) -> Option<ConditionSet> {
    if c.intersects(a.eff_del()) {
        return None;
    }
    if !c.intersects(a.pre()) && !c.intersects(a.eff_add()) {
        return None;
    }
    let next = a.pre().union(&c.difference(a.eff_add()));
    next.is_consistent().then_some(next)
}

pub(crate) fn trivial_subgoal(goal: &ConditionSet) -> SubgoalPlan {
    SubgoalPlan {
        goal: goal.clone(),
        tree: BtNode::Fallback(vec![BtNode::group(goal.clone())]),
        cost: Some(Cost::ZERO),
        records: Vec::new(),
        explored: 1,
        expanded: 0,
    }
}

/// Builds the optimal subtree for one sub-goal.
///
/// Conditions are popped in order of `D(c)`, ties broken by insertion order.
/// Every popped condition other than the goal is appended to the subtree as
/// `Sequence(c, a)`. The search stops at the first popped condition that holds
/// in `s0`; its `D` is the sub-goal's cost.
pub fn plan_subgoal(
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

    let mut conds: Vec<ConditionSet> = vec![goal.clone()];
    let mut ids: FxHashMap<ConditionSet, u32> = FxHashMap::default();
    ids.insert(goal.clone(), 0);
    let mut dist: Vec<Option<Cost>> = vec![Some(Cost::ZERO)];
    // Best incoming edge: action and the condition it leads to.
    let mut via: Vec<Option<(ActionId, u32)>> = vec![None];
    let mut closed: Vec<bool> = vec![false];
    let mut heap = BinaryHeap::from([Reverse((Cost::ZERO, 0u64, 0u32))]);
    let mut seq = 1u64;

    let mut children = vec![BtNode::group(goal.clone())];
    let mut records = Vec::new();
    let mut cost = None;
    let mut expanded = 0;

    while let Some(Reverse((d, _, id))) = heap.pop() {
        let i = id as usize;
        if closed[i] || dist[i] != Some(d) {
            continue;
        }
        expanded += 1;
        let c = conds[i].clone();
        for a_id in domain.regression_candidates(&c) {
            let a = domain.action(a_id);
            let Some(next) = regress(&c, a) else { continue };
            let candidate = d + a.cost();
            let j = match ids.get(&next) {
                Some(&j) => j as usize,
                None => {
                    let j = conds.len();
                    ids.insert(next.clone(), j as u32);
                    conds.push(next);
                    dist.push(None);
                    via.push(None);
                    closed.push(false);
                    j
                }
            };
            if closed[j] {
                continue;
            }
            if dist[j].is_some_and(|old| candidate >= old) {
                continue;
            }
            dist[j] = Some(candidate);
            via[j] = Some((a_id, id));
            heap.push(Reverse((candidate, seq, j as u32)));
            seq += 1;
        }
        closed[i] = true;
        if i != 0 {
            let (a, target) = via[i].expect("non-goal conditions are reached through an action");
            children.push(BtNode::guarded(c.clone(), a));
            records.push(ExpansionRecord {
                subgoal: 0,
                condition: c.clone(),
                cost_to_goal: d,
                via_action: a,
                target: conds[target as usize].clone(),
            });
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
        explored: conds.len(),
        expanded,
    })
}

/// Sorts feasible subtrees by cost (stable) under one Fallback root and moves
/// infeasible ones to the end of the returned list. With `sort == false` the
/// clause order is kept.
pub fn assemble(
    mut outcomes: Vec<SubgoalOutcome>,
    sort: bool,
) -> Result<(BtNode, Vec<SubgoalOutcome>), PlanError> {
    if sort {
        outcomes.sort_by_key(|o| o.cost.is_none());
        let feasible = outcomes.iter().take_while(|o| o.cost.is_some()).count();
        outcomes[..feasible].sort_by_key(|o| o.cost);
    } else {
        outcomes.sort_by_key(|o| o.cost.is_none());
    }
    let trees: Vec<BtNode> = outcomes
        .iter()
        .filter(|o| o.cost.is_some())
        .map(|o| o.tree.clone())
        .collect();
    if trees.is_empty() {
        return Err(PlanError::NoFeasibleSubgoal);
    }
    Ok((BtNode::Fallback(trees), outcomes))
}

/// Full pipeline over an already-interned sub-goal list.
pub fn obtea_subgoals(
    subgoals: &[ConditionSet],
    s0: &WorldState,
    domain: &Domain,
    compaction_depth: usize,
) -> Result<PlanResult, PlanError> {
    if subgoals.is_empty() {
        return Err(PlanError::EmptyGoal);
    }
    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(subgoals.len());
    let mut all_records = Vec::new();
    let (mut explored, mut expanded) = (0, 0);
    for (index, g) in subgoals.iter().enumerate() {
        let plan = plan_subgoal(g, s0, domain)?;
        explored += plan.explored;
        expanded += plan.expanded;
        all_records.extend(plan.records.into_iter().map(|mut r| {
            r.subgoal = index;
            r
        }));
        outcomes.push(SubgoalOutcome {
            index,
            goal: plan.goal,
            tree: compact(&plan.tree, compaction_depth),
            cost: plan.cost,
        });
    }
    let (tree, per_subgoal) = assemble(outcomes, true)?;
    Ok(PlanResult {
        method: if compaction_depth == 0 {
            Method::ObteaNoCompaction
        } else {
            Method::Obtea
        },
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

/// Plans an optimal behavior tree for a DNF goal.
pub fn obtea(
    goal: &Dnf,
    s0: &WorldState,
    domain: &Domain,
    compaction_depth: usize,
) -> Result<PlanResult, PlanError> {
    let subgoals = parse_sub_goals(goal, domain)?;
    obtea_subgoals(&subgoals, s0, domain, compaction_depth)
}

pub(crate) fn elapsed(start: Instant) -> Duration {
    start.elapsed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{AtomId, Lit};

    // Same construction as the toy chain fixture: l1, l2, l3 and a1..a3.
    fn toy() -> Domain {
        crate::world::parse_domain(
            "[objects]\nX : t\n[predicates]\nL1\nL2\nL3\nL4\n[actions]\n\
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
    fn regression_follows_neighbor_rule() {
        let d = toy();
        let a3 = d.action(d.action_by_name("A3").unwrap());
        assert_eq!(regress(&c(&[1, 3]), a3), Some(c(&[1])));
        let a1 = d.action(d.action_by_name("A1").unwrap());
        assert_eq!(regress(&c(&[3]), a1), None);
        assert_eq!(regress(&c(&[1, 3]), a1), Some(c(&[3])));
    }

    #[test]
    fn toy_subgoal_l1_l3_costs_13() {
        let d = toy();
        let p = plan_subgoal(&c(&[1, 3]), &WorldState::new(), &d).unwrap();
        assert_eq!(p.cost, Some(Cost::from_integer(13)));
        let find = |cond: ConditionSet| p.records.iter().find(|r| r.condition == cond).unwrap();
        assert_eq!(find(c(&[1])).cost_to_goal, Cost::from_integer(3));
        assert_eq!(find(c(&[])).cost_to_goal, Cost::from_integer(13));
    }

    #[test]
    fn toy_subgoal_l1_l2_costs_15() {
        let p = plan_subgoal(&c(&[1, 2]), &WorldState::new(), &toy()).unwrap();
        assert_eq!(p.cost, Some(Cost::from_integer(15)));
    }

    #[test]
    fn satisfied_subgoal_needs_no_expansion() {
        let s0 = WorldState::from_atoms([AtomId(0), AtomId(2)]);
        let p = plan_subgoal(&c(&[1, 3]), &s0, &toy()).unwrap();
        assert_eq!(p.cost, Some(Cost::ZERO));
        assert_eq!(p.expanded, 0);
        assert_eq!(p.tree, BtNode::Fallback(vec![BtNode::group(c(&[1, 3]))]));
    }

    #[test]
    fn unreachable_literal_is_infeasible() {
        let p = plan_subgoal(&c(&[4]), &WorldState::new(), &toy()).unwrap();
        assert_eq!(p.cost, None);
    }

    #[test]
    fn inconsistent_goal_is_rejected() {
        let g: ConditionSet = [Lit::pos(AtomId(0)), Lit::neg(AtomId(0))]
            .into_iter()
            .collect();
        assert!(matches!(
            plan_subgoal(&g, &WorldState::new(), &toy()),
            Err(PlanError::InconsistentGoal(_))
        ));
    }

    #[test]
    fn assembly_orders_by_cost_then_clause() {
        let d = toy();
        let r = obtea_subgoals(&[c(&[1, 2]), c(&[1, 3])], &WorldState::new(), &d, 0).unwrap();
        let costs: Vec<_> = r
            .per_subgoal
            .iter()
            .map(|o| o.cost.unwrap().to_string())
            .collect();
        assert_eq!(costs, ["13", "15"]);
        assert_eq!(r.per_subgoal[0].index, 1);

        let r = obtea_subgoals(
            &[c(&[2]), c(&[3]), c(&[4])],
            &WorldState::from_atoms([AtomId(0)]),
            &d,
            0,
        )
        .unwrap();
        let order: Vec<_> = r.per_subgoal.iter().map(|o| (o.index, o.cost)).collect();
        assert_eq!(
            order,
            [
                (1, Some(Cost::from_integer(3))),
                (0, Some(Cost::from_integer(5))),
                (2, None)
            ]
        );
        assert_eq!(r.tree.children().len(), 2);
    }

    #[test]
    fn equal_costs_keep_clause_order() {
        let d = toy();
        let r = obtea_subgoals(&[c(&[1]), c(&[1])], &WorldState::new(), &d, 0).unwrap();
        assert_eq!(r.per_subgoal[0].index, 0);
        assert_eq!(r.per_subgoal[1].index, 1);
    }

    #[test]
    fn all_infeasible_is_an_error() {
        let r = obtea_subgoals(&[c(&[4])], &WorldState::new(), &toy(), 3);
        assert!(matches!(r, Err(PlanError::NoFeasibleSubgoal)));
    }
}
