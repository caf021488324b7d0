//! Forward Dijkstra over explicit world states, used to check optimality.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use thiserror::Error;

use super::PlanError;
use crate::cost::Cost;
use crate::logic::Dnf;
use crate::world::{ActionId, ConditionSet, Domain, WorldState};

pub const DEFAULT_STATE_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("more than {bound} reachable states")]
    StateSpaceTooLarge { bound: usize },
    #[error(transparent)]
    Goal(#[from] PlanError),
}

/// Cheapest action sequence from `s0` to a state satisfying any of `goals`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePlan {
    pub cost: Cost,
    pub actions: Vec<ActionId>,
}

pub fn shortest_plan(
    s0: &WorldState,
    goals: &[ConditionSet],
    domain: &Domain,
    bound: usize,
) -> Result<Option<OraclePlan>, OracleError> {
    let mut states = vec![s0.clone()];
    let mut ids: HashMap<WorldState, usize> = HashMap::from([(s0.clone(), 0)]);
    let mut dist = vec![Cost::ZERO];
    let mut parent: Vec<Option<(usize, ActionId)>> = vec![None];
    let mut done = vec![false];
    let mut heap = BinaryHeap::from([Reverse((Cost::ZERO, 0usize))]);

    while let Some(Reverse((d, i))) = heap.pop() {
        if done[i] || d > dist[i] {
            continue;
        }
        done[i] = true;
        if goals.iter().any(|g| g.holds(&states[i])) {
            let mut actions = Vec::new();
            let mut at = i;
            while let Some((p, a)) = parent[at] {
                actions.push(a);
                at = p;
            }
            actions.reverse();
            return Ok(Some(OraclePlan { cost: d, actions }));
        }
        let s = states[i].clone();
        for a in domain.applicable_actions(&s) {
            let next = domain.apply(a, &s).expect("applicable action");
            let nd = d + domain.action(a).cost();
            let j = match ids.get(&next) {
                Some(&j) => j,
                None => {
                    if states.len() >= bound {
                        return Err(OracleError::StateSpaceTooLarge { bound });
                    }
                    let j = states.len();
                    ids.insert(next.clone(), j);
                    states.push(next);
                    dist.push(nd);
                    parent.push(Some((i, a)));
                    done.push(false);
                    heap.push(Reverse((nd, j)));
                    continue;
                }
            };
            if !done[j] && nd < dist[j] {
                dist[j] = nd;
                parent[j] = Some((i, a));
                heap.push(Reverse((nd, j)));
            }
        }
    }
    Ok(None)
}

/// Minimum cost to reach any clause of `goal`, or `None` if unreachable.
pub fn dijkstra_oracle(
    s0: &WorldState,
    goal: &Dnf,
    domain: &Domain,
) -> Result<Option<Cost>, OracleError> {
    let goals = super::parse_sub_goals(goal, domain)?;
    Ok(shortest_plan(s0, &goals, domain, DEFAULT_STATE_BOUND)?.map(|p| p.cost))
}

/// All states reachable from `s0`, breadth-first.
pub fn reachable_states(
    s0: &WorldState,
    domain: &Domain,
    bound: usize,
) -> Result<Vec<WorldState>, OracleError> {
    let mut seen: HashSet<WorldState> = HashSet::from([s0.clone()]);
    let mut order = vec![s0.clone()];
    let mut queue = VecDeque::from([s0.clone()]);
    while let Some(s) = queue.pop_front() {
        for a in domain.applicable_actions(&s) {
            let next = domain.apply(a, &s).expect("applicable action");
            if seen.contains(&next) {
                continue;
            }
            if order.len() >= bound {
                return Err(OracleError::StateSpaceTooLarge { bound });
            }
            seen.insert(next.clone());
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{parse_domain, AtomId, Lit};

    fn toy() -> Domain {
        parse_domain(
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
    fn toy_chain_costs() {
        let d = toy();
        let s0 = WorldState::new();
        let p = shortest_plan(&s0, &[c(&[1, 3])], &d, 100).unwrap().unwrap();
        assert_eq!(p.cost, Cost::from_integer(13));
        assert_eq!(p.actions.len(), 2);
        let p = shortest_plan(&s0, &[c(&[1, 2])], &d, 100).unwrap().unwrap();
        assert_eq!(p.cost, Cost::from_integer(15));
        let p = shortest_plan(&s0, &[c(&[1, 2]), c(&[1, 3])], &d, 100)
            .unwrap()
            .unwrap();
        assert_eq!(p.cost, Cost::from_integer(13));
    }

    #[test]
    fn trivial_and_unreachable() {
        let d = toy();
        let s0 = WorldState::from_atoms([AtomId(0)]);
        assert_eq!(
            shortest_plan(&s0, &[c(&[1])], &d, 100)
                .unwrap()
                .unwrap()
                .cost,
            Cost::ZERO
        );
        assert_eq!(shortest_plan(&s0, &[c(&[4])], &d, 100).unwrap(), None);
    }

    #[test]
    fn bound_is_enforced() {
        let d = toy();
        let all = reachable_states(&WorldState::new(), &d, 100).unwrap();
        assert_eq!(all.len(), 5);
        assert!(matches!(
            reachable_states(&WorldState::new(), &d, 3),
            Err(OracleError::StateSpaceTooLarge { bound: 3 })
        ));
    }
}
