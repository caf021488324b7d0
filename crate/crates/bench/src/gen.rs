//! Seeded random planning instances built around a witness path.
//!
//! The vocabulary has `num_objects` objects `O0..` of one category, unary
//! condition predicates `P0..` and unary action predicates `A0..`. Every ground
//! action takes a distinct name `Ak(Oi)`, so `num_objects * num_action_predicates`
//! bounds the number of actions.
//!
//! Construction:
//! 1. `s0` holds each atom with probability `init_density`.
//! 2. A chain of `path_length` actions is built forward from `s0`. The first
//!    precondition is drawn from `s0`; later ones are drawn from the atoms the
//!    previous step added that still hold. Add lists take a fresh atom with probability
//!    `fresh_probability`, otherwise one that is currently false. Delete lists
//!    are drawn from the current state.
//! 3. The first goal clause is a subset of the literals that differ between
//!    the chain's final state and `s0`. Each further clause comes from a short
//!    branch leaving the chain at a random step.
//! 4. Every chain and branch action gets between 0 and `mac` copies with the
//!    same lists and independently drawn costs.
//! 5. `extra_action_count` distractors follow. About `bridge_density` per atom
//!    added along the witness paths are bridges: they need atoms added by one
//!    witness action and add atoms of another, opening alternative routes. The rest are
//!    noise whose preconditions hold in `s0` and whose add lists avoid
//!    `s0` and the witness atoms. Distractors delete their positive
//!    preconditions with probability `consume_probability`.
//!
//! Goal clauses use positive literals when the path added any atom.
//!
//! All costs are integers drawn uniformly from `cost_range`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use obtea_core::logic::{Clause, Dnf, Signature, Vocabulary};
use obtea_core::planner::{reachable_states, OracleError};
use obtea_core::world::{
    ActionId, AtomId, AtomTable, ConditionSet, Domain, GroundAction, Lit, WorldState,
};
use obtea_core::Cost;

/// Internal re-seeds before [`GenError::GenerationFailed`].
pub const RETRY_CAP: u32 = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("no instance after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: u32, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenParams {
    pub num_objects: usize,
    pub num_condition_predicates: usize,
    pub num_action_predicates: usize,
    /// Maximum copies per witness action.
    pub mac: usize,
    pub path_length: usize,
    pub extra_action_count: usize,
    pub goal_clause_count: usize,
    /// Inclusive integer cost bounds.
    pub cost_range: (i64, i64),
    pub seed: u64,
    pub max_pre: usize,
    pub max_add: usize,
    pub max_del: usize,
    pub max_goal_literals: usize,
    pub init_density: f64,
    pub fresh_probability: f64,
    /// Expected bridge distractors per witness atom.
    pub bridge_density: f64,
    /// Chance that a precondition literal is negative.
    pub negative_probability: f64,
    /// Chance that a positive precondition atom is also deleted.
    pub consume_probability: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            num_objects: 100,
            num_condition_predicates: 10,
            num_action_predicates: 10,
            mac: 0,
            path_length: 10,
            extra_action_count: 490,
            goal_clause_count: 2,
            cost_range: (1, 10),
            seed: 0,
            max_pre: 3,
            max_add: 3,
            max_del: 3,
            max_goal_literals: 3,
            init_density: 0.2,
            fresh_probability: 0.5,
            bridge_density: 1.0,
            negative_probability: 0.2,
            consume_probability: 1.0,
        }
    }
}

/// `(|O|, |Pc|, |Pa|, MAC)` of the ten scenario presets.
pub const CASES: [(usize, usize, usize, usize); 10] = [
    (100, 10, 10, 0),
    (100, 10, 50, 0),
    (500, 50, 50, 0),
    (100, 10, 10, 5),
    (100, 30, 10, 5),
    (100, 50, 10, 5),
    (100, 50, 30, 5),
    (100, 50, 50, 5),
    (300, 50, 50, 5),
    (500, 50, 50, 5),
];

impl GenParams {
    /// Scenario preset `case0`..`case9`. About `|O| * |Pa| / 2` actions in total.
    pub fn case(index: usize) -> Option<Self> {
        let &(o, pc, pa, mac) = CASES.get(index)?;
        let defaults = Self::default();
        Some(Self {
            num_objects: o,
            num_condition_predicates: pc,
            num_action_predicates: pa,
            mac,
            extra_action_count: (o * pa / 2).saturating_sub(defaults.path_length),
            seed: 1000 * index as u64,
            ..defaults
        })
    }

    /// 16 atoms, so at most 65536 reachable states.
    pub fn small() -> Self {
        Self {
            num_objects: 8,
            num_condition_predicates: 2,
            num_action_predicates: 6,
            mac: 2,
            path_length: 4,
            extra_action_count: 10,
            init_density: 0.3,
            ..Self::default()
        }
    }

    /// 12 atoms, so at most 4096 reachable states.
    pub fn tiny() -> Self {
        Self {
            num_objects: 6,
            num_condition_predicates: 2,
            num_action_predicates: 6,
            mac: 2,
            path_length: 3,
            extra_action_count: 8,
            init_density: 0.3,
            ..Self::default()
        }
    }

    /// `case0`..`case9`, `small` or `tiny`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "small" => Some(Self::small()),
            "tiny" => Some(Self::tiny()),
            _ => name.strip_prefix("case")?.parse().ok().and_then(Self::case),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn atom_count(&self) -> usize {
        self.num_objects * self.num_condition_predicates
    }

    pub fn action_slots(&self) -> usize {
        self.num_objects * self.num_action_predicates
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidParams(m.to_string()));
        let (lo, hi) = self.cost_range;
        if self.num_objects == 0 || self.num_condition_predicates == 0 {
            return bad("need at least one object and one condition predicate");
        }
        if self.num_action_predicates == 0 {
            return bad("need at least one action predicate");
        }
        if self.path_length == 0 || self.goal_clause_count == 0 {
            return bad("path_length and goal_clause_count must be at least 1");
        }
        if self.max_pre == 0 || self.max_add == 0 || self.max_goal_literals == 0 {
            return bad("max_pre, max_add and max_goal_literals must be at least 1");
        }
        if lo < 0 || hi < lo {
            return bad("cost_range must satisfy 0 <= lo <= hi");
        }
        let probs = [
            self.init_density,
            self.fresh_probability,
            self.negative_probability,
            self.consume_probability,
        ];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return bad("probabilities must lie in [0, 1]");
        }
        if !(self.bridge_density >= 0.0 && self.bridge_density.is_finite()) {
            return bad("bridge_density must be a finite non-negative number");
        }
        if self.atom_count() < 2 {
            return bad("need at least two atoms");
        }
        if self.path_length + self.extra_action_count > self.action_slots() {
            return bad("more actions requested than distinct action names");
        }
        Ok(())
    }
}

/// A path of named actions and the states it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    /// Index of the chain state the path starts from; 0 for the chain itself.
    pub start: usize,
    pub actions: Vec<String>,
    /// One more than `actions`, starting with the state the path leaves from.
    pub states: Vec<WorldState>,
    /// Index into [`Instance::subgoals`] that holds in the last state.
    pub clause: usize,
    pub cost: Cost,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub params: GenParams,
    pub domain: Domain,
    pub s0: WorldState,
    pub goal: Dnf,
    /// `goal` interned against `domain`, clause by clause.
    pub subgoals: Vec<ConditionSet>,
    /// The chain first, then one branch per further goal clause.
    pub witness: Vec<WitnessPath>,
    /// Internal re-seeds used.
    pub attempts: u32,
}

/// Measured size of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub literals: usize,
    pub actions: usize,
    /// Reachable states, or the bound if there are more.
    pub states: usize,
    pub states_capped: bool,
}

impl Instance {
    pub fn goal_text(&self) -> String {
        self.goal.to_string()
    }

    pub fn witness_action_ids(&self, path: usize) -> Vec<ActionId> {
        self.witness[path]
            .actions
            .iter()
            .map(|n| {
                self.domain
                    .action_by_name(n)
                    .expect("witness actions are in the domain")
            })
            .collect()
    }

    pub fn stats(&self, state_bound: usize) -> InstanceStats {
        let (states, capped) = match reachable_states(&self.s0, &self.domain, state_bound) {
            Ok(v) => (v.len(), false),
            Err(OracleError::StateSpaceTooLarge { bound }) => (bound, true),
            Err(e) => unreachable!("reachable_states only fails on the bound: {e}"),
        };
        InstanceStats {
            literals: self.domain.atoms().len(),
            actions: self.domain.actions().len(),
            states,
            states_capped: capped,
        }
    }
}

/// Builds an instance from `params`, re-seeding up to [`RETRY_CAP`] times.
pub fn generate(params: &GenParams) -> Result<Instance, GenError> {
    params.validate()?;
    let mut reason = String::new();
    for attempt in 0..RETRY_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(u64::from(attempt));
        match Builder::new(params, &mut rng).build() {
            Ok(mut inst) => {
                inst.attempts = attempt + 1;
                return Ok(inst);
            }
            Err(r) => reason = r,
        }
    }
    Err(GenError::GenerationFailed {
        attempts: RETRY_CAP,
        reason,
    })
}

#[derive(Debug, Clone)]
struct Spec {
    pre: Vec<Lit>,
    add: Vec<AtomId>,
    del: Vec<AtomId>,
    cost: i64,
}

impl Spec {
    fn key(&self) -> (Vec<Lit>, Vec<AtomId>, Vec<AtomId>) {
        let mut k = (self.pre.clone(), self.add.clone(), self.del.clone());
        k.0.sort_unstable();
        k.1.sort_unstable();
        k.2.sort_unstable();
        k
    }
}

struct Builder<'a> {
    p: &'a GenParams,
    rng: &'a mut ChaCha8Rng,
    n: usize,
    fresh: Vec<AtomId>,
    specs: Vec<Spec>,
}

impl<'a> Builder<'a> {
    fn new(p: &'a GenParams, rng: &'a mut ChaCha8Rng) -> Self {
        Self {
            p,
            rng,
            n: p.atom_count(),
            fresh: Vec::new(),
            specs: Vec::new(),
        }
    }

    fn cost(&mut self) -> i64 {
        let (lo, hi) = self.p.cost_range;
        self.rng.gen_range(lo..=hi)
    }

    fn atom(&mut self) -> AtomId {
        AtomId(self.rng.gen_range(0..self.n) as u32)
    }

    fn false_atom(&mut self, s: &WorldState) -> Option<AtomId> {
        if s.len() >= self.n {
            return None;
        }
        loop {
            let a = self.atom();
            if !s.contains(a) {
                return Some(a);
            }
        }
    }

    fn true_lit(&mut self, s: &WorldState) -> Lit {
        let neg =
            s.is_empty() || (s.len() < self.n && self.rng.gen_bool(self.p.negative_probability));
        if neg {
            Lit::neg(self.false_atom(s).expect("state is not full"))
        } else {
            Lit::pos(*s.atoms().choose(self.rng).expect("state is not empty"))
        }
    }

    /// One chain step enabled in `s`, depending on `prev` when given.
    fn step(&mut self, s: &WorldState, prev: &[AtomId]) -> Spec {
        let live: Vec<AtomId> = prev.iter().copied().filter(|a| s.contains(*a)).collect();
        let k = self.rng.gen_range(1..=self.p.max_pre);
        let mut pre: Vec<Lit> = Vec::with_capacity(k);
        if live.is_empty() {
            for _ in 0..8 * k {
                if pre.len() >= k {
                    break;
                }
                let l = self.true_lit(s);
                if !pre.iter().any(|x| x.atom() == l.atom()) {
                    pre.push(l);
                }
            }
        } else {
            pre.extend(
                live.choose_multiple(self.rng, k.min(live.len()))
                    .map(|&a| Lit::pos(a)),
            );
        }

        let k = self.rng.gen_range(1..=self.p.max_add);
        let mut add: Vec<AtomId> = Vec::with_capacity(k);
        for _ in 0..8 * k {
            if add.len() >= k {
                break;
            }
            let a = if self.rng.gen_bool(self.p.fresh_probability) {
                self.fresh.pop().or_else(|| self.false_atom(s))
            } else {
                self.false_atom(s)
            };
            if let Some(a) = a.filter(|a| !add.contains(a) && !s.contains(*a)) {
                add.push(a);
            }
        }

        let k = self.rng.gen_range(0..=self.p.max_del).min(s.len());
        let mut del = self.consumed(&pre);
        for a in s
            .atoms()
            .choose_multiple(self.rng, k)
            .copied()
            .collect::<Vec<_>>()
        {
            if del.len() < k && !del.contains(&a) && !add.contains(&a) {
                del.push(a);
            }
        }

        let cost = self.cost();
        Spec {
            pre,
            add,
            del,
            cost,
        }
    }

    /// Runs `len` steps from `s`, returning spec indices and visited states.
    fn walk(
        &mut self,
        s: &WorldState,
        prev: &[AtomId],
        len: usize,
    ) -> (Vec<usize>, Vec<WorldState>) {
        let mut states = vec![s.clone()];
        let mut ids = Vec::with_capacity(len);
        let mut prev = prev.to_vec();
        for _ in 0..len {
            let cur = states.last().expect("walk starts from a state").clone();
            let spec = self.step(&cur, &prev);
            let mut next: Vec<AtomId> = cur
                .atoms()
                .iter()
                .copied()
                .filter(|a| !spec.del.contains(a))
                .collect();
            next.extend(spec.add.iter().copied());
            prev = spec.add.clone();
            ids.push(self.specs.len());
            self.specs.push(spec);
            states.push(WorldState::from_atoms(next));
        }
        (ids, states)
    }

    /// A goal clause true in `end` and false in `s0`, preferring `last_add`.
    fn goal_clause(
        &mut self,
        s0: &WorldState,
        end: &WorldState,
        last_add: &[AtomId],
    ) -> Option<ConditionSet> {
        let mut diff: Vec<Lit> = end
            .atoms()
            .iter()
            .filter(|a| !s0.contains(**a))
            .map(|&a| Lit::pos(a))
            .chain(
                s0.atoms()
                    .iter()
                    .filter(|a| !end.contains(**a))
                    .map(|&a| Lit::neg(a)),
            )
            .collect();
        if diff.is_empty() {
            return None;
        }
        if diff.iter().any(|l| !l.is_negated()) {
            diff.retain(|l| !l.is_negated());
        }
        diff.shuffle(self.rng);
        let lead = diff
            .iter()
            .position(|l| !l.is_negated() && last_add.contains(&l.atom()));
        if let Some(i) = lead {
            diff.swap(0, i);
        }
        let k = self
            .rng
            .gen_range(1..=self.p.max_goal_literals)
            .min(diff.len());
        let mut c: Vec<Lit> = diff[..1].to_vec();
        let rest: Vec<Lit> = diff[1..].to_vec();
        let extra: Vec<Lit> = rest.choose_multiple(self.rng, k - 1).copied().collect();
        c.extend(extra);
        Some(ConditionSet::from_lits(c))
    }

    fn consumed(&mut self, pre: &[Lit]) -> Vec<AtomId> {
        pre.iter()
            .filter(|l| !l.is_negated())
            .map(|l| l.atom())
            .filter(|_| self.rng.gen_bool(self.p.consume_probability))
            .collect()
    }

    /// Up to `k` distinct atoms from `draw`, giving up after a few misses.
    fn atoms_from(
        &mut self,
        k: usize,
        draw: &mut dyn FnMut(&mut Self) -> Option<AtomId>,
    ) -> Vec<AtomId> {
        let mut out: Vec<AtomId> = Vec::with_capacity(k);
        for _ in 0..8 * k {
            if out.len() >= k {
                break;
            }
            if let Some(a) = draw(self).filter(|a| !out.contains(a)) {
                out.push(a);
            }
        }
        out
    }

    fn finish(&mut self, pre: Vec<Lit>, add: Vec<AtomId>) -> Spec {
        let del = self
            .consumed(&pre)
            .into_iter()
            .filter(|a| !add.contains(a))
            .collect();
        let cost = self.cost();
        Spec {
            pre,
            add,
            del,
            cost,
        }
    }

    /// Needs atoms added by one witness action and adds atoms of another.
    fn bridge(&mut self, layers: &[Vec<AtomId>]) -> Spec {
        let from = layers
            .choose(self.rng)
            .expect("at least one witness action");
        let to = layers
            .choose(self.rng)
            .expect("at least one witness action");
        let k = self.rng.gen_range(1..=self.p.max_pre).min(from.len());
        let pre: Vec<AtomId> = from.choose_multiple(self.rng, k).copied().collect();
        let k = self.rng.gen_range(1..=self.p.max_add);
        let add = self.atoms_from(k, &mut |b| {
            to.choose(b.rng).copied().filter(|a| !pre.contains(a))
        });
        self.finish(pre.into_iter().map(Lit::pos).collect(), add)
    }

    /// Preconditions true in `s0`; adds outside `s0` and the witness atoms.
    fn noise(&mut self, s0: &WorldState, witness: &[AtomId]) -> Spec {
        let outside = |b: &mut Self| {
            let a = b.atom();
            (!s0.contains(a) && witness.binary_search(&a).is_err()).then_some(a)
        };
        let k = self.rng.gen_range(1..=self.p.max_pre);
        let pre: Vec<Lit> = self
            .atoms_from(k, &mut |b| {
                if s0.is_empty() || b.rng.gen_bool(b.p.negative_probability) {
                    outside(b).map(Lit::neg).map(|l| l.atom())
                } else {
                    s0.atoms().choose(b.rng).copied()
                }
            })
            .into_iter()
            .map(|a| Lit::new(a, !s0.contains(a)))
            .collect();
        let k = self.rng.gen_range(1..=self.p.max_add);
        let add = self.atoms_from(k, &mut |b| {
            outside(b).filter(|a| !pre.iter().any(|l| l.atom() == *a))
        });
        self.finish(pre, add)
    }

    fn build(mut self) -> Result<Instance, String> {
        let p = self.p;
        let s0 = WorldState::from_atoms(
            (0..self.n)
                .filter(|_| self.rng.gen_bool(p.init_density))
                .map(|i| AtomId(i as u32)),
        );
        self.fresh = (0..self.n as u32)
            .map(AtomId)
            .filter(|a| !s0.contains(*a))
            .collect();
        self.fresh.shuffle(self.rng);

        let mut subgoals: Vec<ConditionSet> = Vec::new();
        let mut paths: Vec<(usize, Vec<usize>, Vec<WorldState>, usize)> = Vec::new();

        let (chain, states) = self.walk(&s0, &[], p.path_length);
        let last_add = self.specs[*chain.last().expect("path_length >= 1")]
            .add
            .clone();
        let g = self
            .goal_clause(&s0, states.last().expect("walk yields states"), &last_add)
            .ok_or("chain ends in the initial state")?;
        subgoals.push(g);
        paths.push((0, chain.clone(), states.clone(), 0));

        let branch_max = (p.path_length / 2).max(1);
        let mut tries = 0;
        while subgoals.len() < p.goal_clause_count {
            tries += 1;
            if tries > 8 * p.goal_clause_count {
                return Err("could not branch enough distinct goal clauses".into());
            }
            let t = self.rng.gen_range(0..p.path_length);
            let prev = if t == 0 {
                Vec::new()
            } else {
                self.specs[chain[t - 1]].add.clone()
            };
            let len = self.rng.gen_range(1..=branch_max);
            let mark = self.specs.len();
            let (ids, bstates) = self.walk(&states[t], &prev, len);
            let last_add = self.specs[*ids.last().expect("len >= 1")].add.clone();
            let clause =
                self.goal_clause(&s0, bstates.last().expect("walk yields states"), &last_add);
            match clause {
                Some(c) if !subgoals.contains(&c) => {
                    paths.push((t, ids, bstates, subgoals.len()));
                    subgoals.push(c);
                }
                _ => self.specs.truncate(mark),
            }
        }

        let witness_specs = self.specs.len();
        for i in 0..witness_specs {
            for _ in 0..self.rng.gen_range(0..=p.mac) {
                let mut copy = self.specs[i].clone();
                copy.cost = self.cost();
                self.specs.push(copy);
            }
        }
        let layers: Vec<Vec<AtomId>> = self.specs[..witness_specs]
            .iter()
            .map(|s| s.add.clone())
            .collect();
        let mut witness: Vec<AtomId> = layers.concat();
        witness.sort_unstable();
        witness.dedup();
        let bridges =
            ((p.bridge_density * witness.len() as f64).round() as usize).min(p.extra_action_count);
        for i in 0..p.extra_action_count {
            let d = if i < bridges {
                self.bridge(&layers)
            } else {
                self.noise(&s0, &witness)
            };
            let key = d.key();
            if !d.add.is_empty() && !self.specs[..witness_specs].iter().any(|w| w.key() == key) {
                self.specs.push(d);
            }
        }
        if self.specs.len() > p.action_slots() {
            return Err(format!(
                "{} actions but only {} distinct names",
                self.specs.len(),
                p.action_slots()
            ));
        }

        let mut slots: Vec<(usize, usize)> = (0..p.num_action_predicates)
            .flat_map(|k| (0..p.num_objects).map(move |i| (k, i)))
            .collect();
        slots.shuffle(self.rng);
        let mut order: Vec<usize> = (0..self.specs.len()).collect();
        order.shuffle(self.rng);
        let mut names = vec![String::new(); self.specs.len()];
        let mut actions = Vec::with_capacity(self.specs.len());
        for (&i, &(k, o)) in order.iter().zip(&slots) {
            let s = &self.specs[i];
            names[i] = format!("A{k}(O{o})");
            let action = GroundAction::new(
                names[i].clone(),
                ConditionSet::from_lits(s.pre.iter().copied()),
                s.add.iter().copied(),
                s.del.iter().copied(),
                Cost::from_integer(s.cost),
            )
            .map_err(|e| e.to_string())?;
            actions.push(action);
        }

        let vocab = vocabulary(p);
        let atoms = AtomTable::ground(&vocab);
        let domain = Domain::new(vocab, atoms, actions).map_err(|e| e.to_string())?;
        let goal = Dnf::new(
            subgoals
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| domain.signed_literal(l))
                        .collect::<Clause>()
                })
                .collect(),
        );
        let witness = paths
            .into_iter()
            .map(|(start, ids, states, clause)| WitnessPath {
                start,
                actions: ids.iter().map(|&i| names[i].clone()).collect(),
                cost: ids
                    .iter()
                    .map(|&i| Cost::from_integer(self.specs[i].cost))
                    .sum(),
                states,
                clause,
            })
            .collect();
        Ok(Instance {
            params: p.clone(),
            domain: domain.with_init(s0.clone()),
            s0,
            goal,
            subgoals,
            witness,
            attempts: 0,
        })
    }
}

fn vocabulary(p: &GenParams) -> Vocabulary {
    Vocabulary::new(
        (0..p.num_objects).map(|i| (format!("O{i}"), "obj".to_string())),
        (0..p.num_condition_predicates).map(|j| Signature::new(format!("P{j}"), ["obj"])),
        (0..p.num_action_predicates).map(|k| Signature::new(format!("A{k}"), ["obj"])),
    )
    .expect("generated names are distinct and the category is inhabited")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for i in 0..10 {
            GenParams::case(i).unwrap().validate().unwrap();
        }
        GenParams::small().validate().unwrap();
        GenParams::tiny().validate().unwrap();
        assert_eq!(GenParams::preset("case3").unwrap().mac, 5);
        assert!(GenParams::preset("case10").is_none());
        assert!(GenParams::preset("big").is_none());
    }

    #[test]
    fn invalid_params_are_rejected() {
        let p = GenParams {
            cost_range: (5, 2),
            ..GenParams::small()
        };
        assert!(matches!(generate(&p), Err(GenError::InvalidParams(_))));
        let p = GenParams {
            path_length: 0,
            ..GenParams::small()
        };
        assert!(matches!(generate(&p), Err(GenError::InvalidParams(_))));
        let p = GenParams {
            extra_action_count: 1000,
            ..GenParams::small()
        };
        assert!(matches!(generate(&p), Err(GenError::InvalidParams(_))));
    }

    #[test]
    fn too_many_copies_fail_generation() {
        // 5 slots, 3 chain actions with up to 50 copies each.
        let p = GenParams {
            num_objects: 5,
            num_condition_predicates: 2,
            num_action_predicates: 1,
            path_length: 3,
            goal_clause_count: 1,
            extra_action_count: 2,
            mac: 50,
            ..GenParams::default()
        };
        assert!(matches!(
            generate(&p),
            Err(GenError::GenerationFailed { .. })
        ));
    }

    #[test]
    fn witness_paths_reach_their_clauses() {
        for seed in 0..50 {
            let inst = generate(&GenParams::small().with_seed(seed)).unwrap();
            assert_eq!(inst.subgoals.len(), inst.params.goal_clause_count);
            for (k, w) in inst.witness.iter().enumerate() {
                let mut s = inst.witness[0].states[w.start].clone();
                for a in inst.witness_action_ids(k) {
                    s = inst.domain.apply(a, &s).unwrap();
                }
                assert!(inst.subgoals[w.clause].holds(&s));
                assert!(!inst.subgoals[w.clause].holds(&inst.s0));
                assert_eq!(&s, w.states.last().unwrap());
            }
        }
    }

    #[test]
    fn goal_dnf_matches_subgoals() {
        let inst = generate(&GenParams::small().with_seed(3)).unwrap();
        let interned = obtea_core::planner::parse_sub_goals(&inst.goal, &inst.domain).unwrap();
        assert_eq!(interned, inst.subgoals);
    }
}
