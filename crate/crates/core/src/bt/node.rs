use thiserror::Error;

use crate::world::{ActionId, ConditionSet, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BtError {
    #[error("{0} node has no children")]
    EmptyComposite(&'static str),
}

/// A behavior-tree node.
///
/// `ConditionGroup` is shorthand for a Sequence of one condition leaf per
/// literal, evaluated in the set's sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BtNode {
    Condition(Lit),
    ConditionGroup(ConditionSet),
    Action(ActionId),
    Sequence(Vec<BtNode>),
    Fallback(Vec<BtNode>),
    Not(Box<BtNode>),
}

impl BtNode {
    pub fn group(c: ConditionSet) -> Self {
        BtNode::ConditionGroup(c)
    }

    /// `Sequence(ConditionGroup(c), Action(a))`.
    pub fn guarded(c: ConditionSet, a: ActionId) -> Self {
        BtNode::Sequence(vec![BtNode::ConditionGroup(c), BtNode::Action(a)])
    }

    pub fn inverter(child: BtNode) -> Self {
        BtNode::Not(Box::new(child))
    }

    pub fn children(&self) -> &[BtNode] {
        match self {
            BtNode::Sequence(c) | BtNode::Fallback(c) => c,
            BtNode::Not(c) => std::slice::from_ref(c.as_ref()),
            _ => &[],
        }
    }

    /// Checks that composites are nonempty.
    pub fn validate(&self) -> Result<(), BtError> {
        match self {
            BtNode::Sequence(c) if c.is_empty() => Err(BtError::EmptyComposite("Sequence")),
            BtNode::Fallback(c) if c.is_empty() => Err(BtError::EmptyComposite("Fallback")),
            _ => self.children().iter().try_for_each(BtNode::validate),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(BtNode::node_count)
            .sum::<usize>()
    }

    /// Number of condition leaves, counting each literal of a group once.
    pub fn condition_leaf_count(&self) -> usize {
        match self {
            BtNode::Condition(_) => 1,
            BtNode::ConditionGroup(c) => c.len(),
            _ => self
                .children()
                .iter()
                .map(BtNode::condition_leaf_count)
                .sum(),
        }
    }

    pub fn action_leaf_count(&self) -> usize {
        match self {
            BtNode::Action(_) => 1,
            _ => self.children().iter().map(BtNode::action_leaf_count).sum(),
        }
    }
}
