//! Shared-literal extraction between adjacent guarded subtrees.

use crate::bt::BtNode;
use crate::world::ConditionSet;

/// A guarded entry of the subtree Fallback: `Sequence(ConditionGroup(guard), body)`.
#[derive(Debug, Clone)]
struct Unit {
    guard: ConditionSet,
    body: BtNode,
}

impl Unit {
    fn from_node(node: &BtNode) -> Option<Unit> {
        match node {
            BtNode::Sequence(ch) if ch.len() == 2 => match &ch[0] {
                BtNode::ConditionGroup(g) => Some(Unit {
                    guard: g.clone(),
                    body: ch[1].clone(),
                }),
                _ => None,
            },
            _ => None,
        }
    }

    fn into_node(self) -> BtNode {
        guard(self.guard, self.body)
    }
}

fn guard(g: ConditionSet, body: BtNode) -> BtNode {
    if g.is_empty() {
        body
    } else {
        BtNode::Sequence(vec![BtNode::ConditionGroup(g), body])
    }
}

fn merge(a: &Unit, b: &Unit) -> Option<Unit> {
    let shared = a.guard.intersection(&b.guard);
    if shared.is_empty() {
        return None;
    }
    let left = guard(a.guard.difference(&shared), a.body.clone());
    let right = guard(b.guard.difference(&shared), b.body.clone());
    Some(Unit {
        guard: shared,
        body: BtNode::Fallback(vec![left, right]),
    })
}

fn pass(units: Vec<Unit>) -> Vec<Unit> {
    let mut out = Vec::with_capacity(units.len());
    let mut it = units.into_iter();
    while let Some(a) = it.next() {
        let Some(b) = it.next() else {
            out.push(a);
            break;
        };
        match merge(&a, &b) {
            Some(m) => out.push(m),
            None => {
                out.push(a);
                out.push(b);
            }
        }
    }
    out
}

/// Runs up to `max_depth` merge passes over the guarded children of a
/// sub-goal subtree. Children are paired left to right (the sub-goal check
/// itself is never merged); a pair sharing literals `c'` becomes
/// `Sequence(c', Fallback(Sequence(c_i \ c', A_i), Sequence(c_j \ c', A_j)))`.
/// Each further pass pairs the results of the previous one.
///
/// Trees that are not in the planner's subtree shape are returned unchanged.
pub fn compact(subtree: &BtNode, max_depth: usize) -> BtNode {
    let BtNode::Fallback(children) = subtree else {
        return subtree.clone();
    };
    if max_depth == 0 || children.len() < 3 {
        return subtree.clone();
    }
    let Some(mut units) = children[1..]
        .iter()
        .map(Unit::from_node)
        .collect::<Option<Vec<_>>>()
    else {
        return subtree.clone();
    };
    for _ in 0..max_depth {
        let before = units.len();
        units = pass(units);
        if units.len() == before {
            break;
        }
    }
    let mut out = Vec::with_capacity(units.len() + 1);
    out.push(children[0].clone());
    out.extend(units.into_iter().map(Unit::into_node));
    BtNode::Fallback(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{ActionId, AtomId, Lit};

    fn c(ids: &[u32]) -> ConditionSet {
        ids.iter().map(|&i| Lit::pos(AtomId(i))).collect()
    }

    fn act(i: u32) -> BtNode {
        BtNode::Action(ActionId(i))
    }

    #[test]
    fn shared_literals_are_checked_first() {
        // x=0, y=1, z=2
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0, 1]), ActionId(1)),
            BtNode::guarded(c(&[0, 2]), ActionId(3)),
        ]);
        let expected = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::Sequence(vec![
                BtNode::group(c(&[0])),
                BtNode::Fallback(vec![
                    BtNode::guarded(c(&[1]), ActionId(1)),
                    BtNode::guarded(c(&[2]), ActionId(3)),
                ]),
            ]),
        ]);
        assert_eq!(compact(&t, 1), expected);
    }

    #[test]
    fn empty_residual_is_omitted() {
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0]), ActionId(1)),
            BtNode::guarded(c(&[0, 2]), ActionId(3)),
        ]);
        let BtNode::Fallback(ch) = compact(&t, 3) else {
            panic!()
        };
        assert_eq!(
            ch[1],
            BtNode::Sequence(vec![
                BtNode::group(c(&[0])),
                BtNode::Fallback(vec![act(1), BtNode::guarded(c(&[2]), ActionId(3))]),
            ])
        );
    }

    #[test]
    fn disjoint_and_depth_zero_are_unchanged() {
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0]), ActionId(1)),
            BtNode::guarded(c(&[1]), ActionId(2)),
        ]);
        assert_eq!(compact(&t, 4), t);
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0, 1]), ActionId(1)),
            BtNode::guarded(c(&[0, 2]), ActionId(3)),
        ]);
        assert_eq!(compact(&t, 0), t);
    }

    #[test]
    fn second_pass_merges_merged_units() {
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0, 1, 5]), ActionId(1)),
            BtNode::guarded(c(&[0, 1, 6]), ActionId(2)),
            BtNode::guarded(c(&[0, 2, 7]), ActionId(3)),
            BtNode::guarded(c(&[0, 2, 8]), ActionId(4)),
        ]);
        let one = compact(&t, 1);
        assert_eq!(one.children().len(), 3);
        let two = compact(&t, 2);
        assert_eq!(two.children().len(), 2);
        let BtNode::Sequence(top) = &two.children()[1] else {
            panic!()
        };
        assert_eq!(top[0], BtNode::group(c(&[0])));
        assert_eq!(two.action_leaf_count(), 4);
        assert_eq!(compact(&t, 5), two);
    }

    #[test]
    fn extracted_literals_are_checked_even_when_a_guard_would_fail_earlier() {
        use crate::bt::tick;
        use crate::world::WorldState;
        // x=0, y=1, s=2
        let t = BtNode::Fallback(vec![
            BtNode::group(c(&[9])),
            BtNode::guarded(c(&[0, 2]), ActionId(1)),
            BtNode::guarded(c(&[1, 2]), ActionId(2)),
        ]);
        let merged = compact(&t, 1);
        let only_s = WorldState::from_atoms([AtomId(2)]);
        assert_eq!(tick(&t, &only_s).condition_ticks, 3);
        assert_eq!(tick(&merged, &only_s).condition_ticks, 4);
        let x_s = WorldState::from_atoms([AtomId(0), AtomId(2)]);
        assert_eq!(tick(&t, &x_s).status, tick(&merged, &x_s).status);
    }
}
