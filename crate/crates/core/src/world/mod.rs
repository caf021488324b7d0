//! STRIPS-style world model: closed-world states, ground actions and domains.

mod action;
mod domain;
mod literal;
mod loader;

pub use action::{ActionError, ActionId, GroundAction};
pub use domain::{AtomTable, Domain, DomainError};
pub use literal::{holds, AtomId, ConditionSet, Lit, WorldState};
pub use loader::{load_domain, parse_domain, LoadError};

/// `s ∪ add(a) \ del(a)`; fails if `pre(a)` does not hold in `s`.
pub fn apply(a: &GroundAction, s: &WorldState) -> Result<WorldState, ActionError> {
    a.apply(s)
}

/// `(add ∪ ¬del, del ∪ ¬add)`: the literals an action makes true and false.
pub fn signed_effects(a: &GroundAction) -> (ConditionSet, ConditionSet) {
    (a.eff_add().clone(), a.eff_del().clone())
}
