//! A grounded planning domain: vocabulary, literal universe and ground actions.

use std::collections::HashMap;

use thiserror::Error;

use super::action::{ActionError, ActionId, GroundAction};
use super::literal::{AtomId, ConditionSet, Lit, WorldState};
use crate::logic::{validate_atom, Atom, Clause, SignedLiteral, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("literal `{0}` is not part of the domain")]
    UnknownLiteral(String),
    #[error("action `{0}` is defined more than once")]
    DuplicateAction(String),
    #[error("action `{0}` refers to an atom outside the literal universe")]
    AtomOutOfRange(String),
    #[error("initial state contains a negated literal `{0}`")]
    NegatedInitLiteral(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Every category-compatible ground atom of a vocabulary, interned.
#[derive(Debug, Clone, Default)]
pub struct AtomTable {
    atoms: Vec<Atom>,
    index: HashMap<Atom, AtomId>,
}

impl AtomTable {
    /// Enumerates condition predicates in declaration order, arguments as the
    /// cartesian product of their categories' objects in declaration order.
    pub fn ground(vocab: &Vocabulary) -> Self {
        let mut table = AtomTable::default();
        for sig in vocab.condition_predicates() {
            let domains: Vec<Vec<&str>> = sig
                .params
                .iter()
                .map(|c| vocab.objects_in(c).collect())
                .collect();
            for args in cartesian(&domains) {
                table.insert(Atom::new(sig.name.clone(), args));
            }
        }
        table
    }

    fn insert(&mut self, atom: Atom) -> AtomId {
        if let Some(&id) = self.index.get(&atom) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.index.insert(atom.clone(), id);
        self.atoms.push(atom);
        id
    }

    pub fn get(&self, atom: &Atom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, &Atom)> {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (AtomId(i as u32), a))
    }
}

/// Cartesian product of string domains, first position varying slowest.
pub(crate) fn cartesian<'a>(domains: &[Vec<&'a str>]) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&str>> = vec![Vec::new()];
    for d in domains {
        let mut next = Vec::with_capacity(out.len() * d.len());
        for prefix in &out {
            for &o in d {
                let mut v = prefix.clone();
                v.push(o);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Vocabulary, grounded literal universe and ground actions. Immutable once built.
#[derive(Debug, Clone)]
pub struct Domain {
    vocab: Vocabulary,
    atoms: AtomTable,
    actions: Vec<GroundAction>,
    by_name: HashMap<String, ActionId>,
    // Per literal: actions whose precondition or signed add-effect mentions it.
    relevant: Vec<Vec<ActionId>>,
    // Per literal `l`: actions that cannot regress any condition containing `l`.
    blocked_by: Vec<Vec<ActionId>>,
    // Per atom: actions whose first positive precondition literal is that atom.
    enabled_by: Vec<Vec<ActionId>>,
    // Actions without a positive precondition literal.
    always_check: Vec<ActionId>,
    init: Option<WorldState>,
    dropped_groundings: usize,
}

impl Domain {
    pub fn new(
        vocab: Vocabulary,
        atoms: AtomTable,
        actions: Vec<GroundAction>,
    ) -> Result<Self, DomainError> {
        let n = atoms.len();
        let mut by_name = HashMap::with_capacity(actions.len());
        let mut relevant = vec![Vec::new(); 2 * n];
        let mut blocked_by = vec![Vec::new(); 2 * n];
        let mut enabled_by = vec![Vec::new(); n];
        let mut always_check = Vec::new();
        for (i, a) in actions.iter().enumerate() {
            let id = ActionId(i as u32);
            if by_name.insert(a.name().to_string(), id).is_some() {
                return Err(DomainError::DuplicateAction(a.name().to_string()));
            }
            let in_range = a.pre().iter().all(|l| l.atom().index() < n)
                && a.add().iter().chain(a.del()).all(|x| x.index() < n);
            if !in_range {
                return Err(DomainError::AtomOutOfRange(a.name().to_string()));
            }
            for lit in a.pre().union(a.eff_add()).iter() {
                relevant[lit.index()].push(id);
            }
            let conflicts = a
                .pre()
                .iter()
                .map(Lit::negate)
                .filter(|l| !a.eff_add().contains(*l));
            for lit in a.eff_del().iter().chain(conflicts) {
                blocked_by[lit.index()].push(id);
            }
            match a.pre().iter().find(|l| !l.is_negated()) {
                Some(l) => enabled_by[l.atom().index()].push(id),
                None => always_check.push(id),
            }
        }
        Ok(Self {
            vocab,
            atoms,
            actions,
            by_name,
            relevant,
            blocked_by,
            enabled_by,
            always_check,
            init: None,
            dropped_groundings: 0,
        })
    }

    pub fn with_init(mut self, init: WorldState) -> Self {
        self.init = Some(init);
        self
    }

    pub(crate) fn with_dropped_groundings(mut self, n: usize) -> Self {
        self.dropped_groundings = n;
        self
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    /// Size of the ground literal universe (positive atoms).
    pub fn literal_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn action(&self, id: ActionId) -> &GroundAction {
        &self.actions[id.index()]
    }

    pub fn action_ids(&self) -> impl Iterator<Item = ActionId> {
        (0..self.actions.len() as u32).map(ActionId)
    }

    pub fn action_by_name(&self, name: &str) -> Option<ActionId> {
        self.by_name.get(name).copied()
    }

    /// Initial state declared alongside the domain, if any.
    pub fn init(&self) -> Option<&WorldState> {
        self.init.as_ref()
    }

    /// Groundings skipped by the loader because their effects or precondition conflict.
    pub fn dropped_groundings(&self) -> usize {
        self.dropped_groundings
    }

    pub fn atom_id(&self, atom: &Atom) -> Result<AtomId, DomainError> {
        self.atoms.get(atom).ok_or_else(|| {
            let msg = validate_atom(atom, &self.vocab)
                .first()
                .map(|e| format!("{atom}: {e}"))
                .unwrap_or_else(|| atom.to_string());
            DomainError::UnknownLiteral(msg)
        })
    }

    pub fn lit(&self, lit: &SignedLiteral) -> Result<Lit, DomainError> {
        Ok(Lit::new(self.atom_id(&lit.atom)?, lit.negated))
    }

    pub fn condition<'a>(
        &self,
        lits: impl IntoIterator<Item = &'a SignedLiteral>,
    ) -> Result<ConditionSet, DomainError> {
        lits.into_iter().map(|l| self.lit(l)).collect()
    }

    pub fn clause_condition(&self, clause: &Clause) -> Result<ConditionSet, DomainError> {
        self.condition(clause.iter())
    }

    /// Builds a state from positive literals; a negated literal is an error.
    pub fn state<'a>(
        &self,
        lits: impl IntoIterator<Item = &'a SignedLiteral>,
    ) -> Result<WorldState, DomainError> {
        let mut atoms = Vec::new();
        for l in lits {
            if l.negated {
                return Err(DomainError::NegatedInitLiteral(l.to_string()));
            }
            atoms.push(self.atom_id(&l.atom)?);
        }
        Ok(WorldState::from_atoms(atoms))
    }

    pub fn signed_literal(&self, lit: Lit) -> SignedLiteral {
        SignedLiteral {
            atom: self.atoms.atom(lit.atom()).clone(),
            negated: lit.is_negated(),
        }
    }

    pub fn lit_name(&self, lit: Lit) -> String {
        self.signed_literal(lit).to_string()
    }

    /// `A & !B` form; the empty condition prints as `true`.
    pub fn condition_string(&self, c: &ConditionSet) -> String {
        if c.is_empty() {
            return "true".into();
        }
        c.iter()
            .map(|l| self.lit_name(l))
            .collect::<Vec<_>>()
            .join(" & ")
    }

    pub fn state_string(&self, s: &WorldState) -> String {
        let names: Vec<String> = s
            .atoms()
            .iter()
            .map(|&a| self.atoms.atom(a).to_string())
            .collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Actions whose precondition or signed add-effect shares a literal with `c`, ascending by id.
    pub fn relevant_actions(&self, c: &ConditionSet) -> Vec<ActionId> {
        let mut out: Vec<ActionId> = c
            .iter()
            .flat_map(|l| self.relevant[l.index()].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The relevant actions that regress `c` to a consistent condition:
    /// `c` shares nothing with the action's delete effect and no literal of
    /// `c` left after removing the add effect contradicts the precondition.
    /// Ascending by id.
    pub fn regression_candidates(&self, c: &ConditionSet) -> Vec<ActionId> {
        const BLOCKED: u8 = 2;
        let mut mark = vec![0u8; self.actions.len()];
        for l in c.iter() {
            for a in &self.blocked_by[l.index()] {
                mark[a.index()] = BLOCKED;
            }
        }
        let mut out = Vec::new();
        for l in c.iter() {
            for &a in &self.relevant[l.index()] {
                let m = &mut mark[a.index()];
                if *m == 0 {
                    *m = 1;
                    out.push(a);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Actions whose precondition holds in `s`, ascending by id.
    pub fn applicable_actions(&self, s: &WorldState) -> Vec<ActionId> {
        let mut out: Vec<ActionId> = s
            .atoms()
            .iter()
            .flat_map(|a| self.enabled_by[a.index()].iter().copied())
            .chain(self.always_check.iter().copied())
            .filter(|&id| self.action(id).is_applicable(s))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn apply(&self, id: ActionId, s: &WorldState) -> Result<WorldState, ActionError> {
        self.action(id).apply(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Cost;
    use crate::logic::Signature;

    fn tiny() -> Domain {
        let vocab = Vocabulary::new(
            [("A", "x"), ("B", "x"), ("P", "y")].map(|(a, b)| (a.into(), b.into())),
            [
                Signature::new("On", ["x", "y"]),
                Signature::new("Free", ["x"]),
            ],
            [Signature::new("Put", ["x"])],
        )
        .unwrap();
        let atoms = AtomTable::ground(&vocab);
        let on_a = atoms.get(&Atom::new("On", ["A", "P"])).unwrap();
        let free_a = atoms.get(&Atom::new("Free", ["A"])).unwrap();
        let put = GroundAction::new(
            "Put(A)",
            ConditionSet::from_lits([Lit::pos(free_a)]),
            [on_a],
            [free_a],
            Cost::from_integer(2),
        )
        .unwrap();
        Domain::new(vocab, atoms, vec![put]).unwrap()
    }

    #[test]
    fn grounds_category_compatible_atoms() {
        let d = tiny();
        // On: 2 x-objects * 1 y-object, Free: 2
        assert_eq!(d.literal_count(), 4);
        assert_eq!(d.atoms().atom(AtomId(0)).to_string(), "On(A,P)");
    }

    #[test]
    fn indexes_relevance_and_applicability() {
        let d = tiny();
        let free_a = d.atom_id(&Atom::new("Free", ["A"])).unwrap();
        let on_b = d.atom_id(&Atom::new("On", ["B", "P"])).unwrap();
        let c = ConditionSet::from_lits([Lit::neg(free_a)]);
        assert_eq!(d.relevant_actions(&c), vec![ActionId(0)]);
        assert!(d
            .relevant_actions(&ConditionSet::from_lits([Lit::pos(on_b)]))
            .is_empty());
        let s = WorldState::from_atoms([free_a]);
        assert_eq!(d.applicable_actions(&s), vec![ActionId(0)]);
        assert!(d.applicable_actions(&WorldState::new()).is_empty());
    }

    #[test]
    fn unknown_literal_is_reported() {
        let d = tiny();
        assert!(d.atom_id(&Atom::new("On", ["P", "A"])).is_err());
    }
}
