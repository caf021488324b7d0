use super::node::BtNode;
use crate::world::{ActionId, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TickStatus {
    Success,
    Failure,
    /// The action chosen for execution in this tick.
    Running(ActionId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TickResult {
    pub status: TickStatus,
    /// Individual literal evaluations performed during the tick.
    pub condition_ticks: u64,
}

/// Ticks `root` once against `s`. Pure in `(root, s)`.
pub fn tick(root: &BtNode, s: &WorldState) -> TickResult {
    let mut condition_ticks = 0;
    let status = tick_node(root, s, &mut condition_ticks);
    TickResult {
        status,
        condition_ticks,
    }
}

fn tick_node(node: &BtNode, s: &WorldState, ticks: &mut u64) -> TickStatus {
    match node {
        BtNode::Condition(l) => {
            *ticks += 1;
            if s.satisfies(*l) {
                TickStatus::Success
            } else {
                TickStatus::Failure
            }
        }
        BtNode::ConditionGroup(c) => {
            for l in c.iter() {
                *ticks += 1;
                if !s.satisfies(l) {
                    return TickStatus::Failure;
                }
            }
            TickStatus::Success
        }
        // Effects are applied by the simulator between ticks.
        BtNode::Action(a) => TickStatus::Running(*a),
        BtNode::Sequence(children) => {
            for child in children {
                match tick_node(child, s, ticks) {
                    TickStatus::Success => continue,
                    other => return other,
                }
            }
            TickStatus::Success
        }
        BtNode::Fallback(children) => {
            for child in children {
                match tick_node(child, s, ticks) {
                    TickStatus::Failure => continue,
                    other => return other,
                }
            }
            TickStatus::Failure
        }
        BtNode::Not(child) => match tick_node(child, s, ticks) {
            TickStatus::Success => TickStatus::Failure,
            TickStatus::Failure => TickStatus::Success,
            running => running,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{AtomId, ConditionSet, Lit};

    fn l(i: u32) -> Lit {
        Lit::pos(AtomId(i))
    }

    fn state(ids: &[u32]) -> WorldState {
        ids.iter().map(|&i| AtomId(i)).collect()
    }

    #[test]
    fn fallback_over_true_condition_succeeds() {
        let t = BtNode::Fallback(vec![BtNode::group(ConditionSet::from_lits([l(1)]))]);
        let r = tick(&t, &state(&[1]));
        assert_eq!(r.status, TickStatus::Success);
        assert_eq!(r.condition_ticks, 1);
    }

    #[test]
    fn sequence_runs_action_after_condition() {
        let t = BtNode::guarded(ConditionSet::from_lits([l(1)]), ActionId(7));
        assert_eq!(
            tick(&t, &state(&[1])).status,
            TickStatus::Running(ActionId(7))
        );
        assert_eq!(tick(&t, &state(&[])).status, TickStatus::Failure);
    }

    #[test]
    fn not_inverts_and_passes_running() {
        let t = BtNode::inverter(BtNode::Condition(l(3)));
        assert_eq!(tick(&t, &state(&[])).status, TickStatus::Success);
        assert_eq!(tick(&t, &state(&[3])).status, TickStatus::Failure);
        let t = BtNode::inverter(BtNode::Action(ActionId(1)));
        assert_eq!(
            tick(&t, &state(&[])).status,
            TickStatus::Running(ActionId(1))
        );
    }

    #[test]
    fn group_short_circuits_in_sorted_order() {
        let g = BtNode::group(ConditionSet::from_lits([l(1), l(2), l(3)]));
        assert_eq!(tick(&g, &state(&[2, 3])).condition_ticks, 1);
        assert_eq!(tick(&g, &state(&[1, 3])).condition_ticks, 2);
        assert_eq!(tick(&g, &state(&[1, 2, 3])).condition_ticks, 3);
        assert_eq!(
            tick(&BtNode::group(ConditionSet::new()), &state(&[])).condition_ticks,
            0
        );
    }

    #[test]
    fn fallback_returns_first_non_failure() {
        let t = BtNode::Fallback(vec![
            BtNode::guarded(ConditionSet::from_lits([l(1)]), ActionId(0)),
            BtNode::guarded(ConditionSet::from_lits([l(2)]), ActionId(1)),
            BtNode::Action(ActionId(2)),
        ]);
        assert_eq!(
            tick(&t, &state(&[2])).status,
            TickStatus::Running(ActionId(1))
        );
        let r = tick(&t, &state(&[]));
        assert_eq!(r.status, TickStatus::Running(ActionId(2)));
        assert_eq!(r.condition_ticks, 2);
    }
}
