//! Ground STRIPS actions and the add/delete transition.

use thiserror::Error;

use super::literal::{AtomId, ConditionSet, Lit, WorldState};
use crate::cost::Cost;

/// Index of an action within a [`Domain`](super::Domain).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionId(pub u32);

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action `{0}` adds and deletes the same atom")]
    ConflictingEffects(String),
    #[error("action `{0}` has a self-contradictory precondition")]
    InconsistentPrecondition(String),
    #[error("precondition of `{action}` does not hold in the current state")]
    PreconditionViolated { action: String, state: WorldState },
}

/// A ground action `p_a(o1,...,ol)` with precondition, add and delete lists and a cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    name: String,
    pre: ConditionSet,
    add: Vec<AtomId>,
    del: Vec<AtomId>,
    cost: Cost,
    eff_add: ConditionSet,
    eff_del: ConditionSet,
}

impl GroundAction {
    pub fn new(
        name: impl Into<String>,
        pre: ConditionSet,
        add: impl IntoIterator<Item = AtomId>,
        del: impl IntoIterator<Item = AtomId>,
        cost: Cost,
    ) -> Result<Self, ActionError> {
        let name = name.into();
        let add = WorldState::from_atoms(add).atoms().to_vec();
        let del = WorldState::from_atoms(del).atoms().to_vec();
        if add.iter().any(|a| del.binary_search(a).is_ok()) {
            return Err(ActionError::ConflictingEffects(name));
        }
        if !pre.is_consistent() {
            return Err(ActionError::InconsistentPrecondition(name));
        }
        let eff_add = add
            .iter()
            .map(|&a| Lit::pos(a))
            .chain(del.iter().map(|&a| Lit::neg(a)))
            .collect();
        let eff_del = del
            .iter()
            .map(|&a| Lit::pos(a))
            .chain(add.iter().map(|&a| Lit::neg(a)))
            .collect();
        Ok(Self {
            name,
            pre,
            add,
            del,
            cost,
            eff_add,
            eff_del,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pre(&self) -> &ConditionSet {
        &self.pre
    }

    pub fn add(&self) -> &[AtomId] {
        &self.add
    }

    pub fn del(&self) -> &[AtomId] {
        &self.del
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }

    /// Literals made true by executing the action: `add ∪ {!l : l ∈ del}`.
    pub fn eff_add(&self) -> &ConditionSet {
        &self.eff_add
    }

    /// Literals made false by executing the action: `del ∪ {!l : l ∈ add}`.
    pub fn eff_del(&self) -> &ConditionSet {
        &self.eff_del
    }

    /// Both signed effect sets.
    pub fn signed_effects(&self) -> (&ConditionSet, &ConditionSet) {
        (&self.eff_add, &self.eff_del)
    }

    pub fn is_applicable(&self, s: &WorldState) -> bool {
        self.pre.holds(s)
    }

    /// `s ∪ add \ del`, provided the precondition holds in `s`.
    pub fn apply(&self, s: &WorldState) -> Result<WorldState, ActionError> {
        if !self.is_applicable(s) {
            return Err(ActionError::PreconditionViolated {
                action: self.name.clone(),
                state: s.clone(),
            });
        }
        Ok(s.transition(&self.add, &self.del))
    }
}
