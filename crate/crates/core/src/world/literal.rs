//! Interned literals, condition sets and world states.

use std::fmt;

use smallvec::SmallVec;

/// Index of a ground atom in a [`Domain`](super::Domain)'s literal universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A signed atom packed as `atom << 1 | negated`, so `l` and `!l` sort next to each other.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(atom: AtomId) -> Self {
        Lit(atom.0 << 1)
    }

    pub fn neg(atom: AtomId) -> Self {
        Lit(atom.0 << 1 | 1)
    }

    pub fn new(atom: AtomId, negated: bool) -> Self {
        Lit(atom.0 << 1 | negated as u32)
    }

    pub fn atom(self) -> AtomId {
        AtomId(self.0 >> 1)
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }

    /// Dense index usable for per-literal tables of size `2 * atom_count`.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negated() {
            write!(f, "!#{}", self.atom().0)
        } else {
            write!(f, "#{}", self.atom().0)
        }
    }
}

/// A set of signed literals, stored sorted and deduplicated.
///
/// A set holding both `l` and `!l` can be built but is reported by
/// [`is_consistent`](Self::is_consistent); planners prune such sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionSet(SmallVec<[Lit; 6]>);

impl ConditionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Self {
        let mut v: SmallVec<[Lit; 6]> = lits.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ConditionSet(v)
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn is_consistent(&self) -> bool {
        self.0.windows(2).all(|w| w[0].atom() != w[1].atom())
    }

    pub fn union(&self, other: &ConditionSet) -> ConditionSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ConditionSet(out)
    }

    pub fn difference(&self, other: &ConditionSet) -> ConditionSet {
        ConditionSet(
            self.0
                .iter()
                .copied()
                .filter(|l| !other.contains(*l))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &ConditionSet) -> ConditionSet {
        ConditionSet(
            self.0
                .iter()
                .copied()
                .filter(|l| other.contains(*l))
                .collect(),
        )
    }

    pub fn intersects(&self, other: &ConditionSet) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &ConditionSet) -> bool {
        self.0.iter().all(|l| other.contains(*l))
    }

    /// Closed-world satisfaction: positives present, negated atoms absent.
    pub fn holds(&self, state: &WorldState) -> bool {
        self.0.iter().all(|l| state.satisfies(*l))
    }
}

impl FromIterator<Lit> for ConditionSet {
    fn from_iter<I: IntoIterator<Item = Lit>>(iter: I) -> Self {
        ConditionSet::from_lits(iter)
    }
}

/// `true` iff every positive literal of `c` is in `s` and every negated literal's atom is not.
pub fn holds(c: &ConditionSet, s: &WorldState) -> bool {
    c.holds(s)
}

/// The set of true atoms; everything absent is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldState(Vec<AtomId>);

impl WorldState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = AtomId>) -> Self {
        let mut v: Vec<AtomId> = atoms.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        WorldState(v)
    }

    pub fn atoms(&self) -> &[AtomId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.0.binary_search(&atom).is_ok()
    }

    pub fn satisfies(&self, lit: Lit) -> bool {
        self.contains(lit.atom()) != lit.is_negated()
    }

    /// `self ∪ add \ del` for sorted atom slices.
    pub(crate) fn transition(&self, add: &[AtomId], del: &[AtomId]) -> WorldState {
        let mut out = Vec::with_capacity(self.0.len() + add.len());
        let (a, b) = (&self.0, add);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = if j == b.len() || (i < a.len() && a[i] < b[j]) {
                i += 1;
                a[i - 1]
            } else if i == a.len() || b[j] < a[i] {
                j += 1;
                b[j - 1]
            } else {
                i += 1;
                j += 1;
                a[i - 1]
            };
            if del.binary_search(&next).is_err() {
                out.push(next);
            }
        }
        WorldState(out)
    }

    /// The condition made of this state's atoms as positive literals.
    pub fn to_condition(&self) -> ConditionSet {
        ConditionSet::from_lits(self.0.iter().map(|&a| Lit::pos(a)))
    }
}

impl FromIterator<AtomId> for WorldState {
    fn from_iter<I: IntoIterator<Item = AtomId>>(iter: I) -> Self {
        WorldState::from_atoms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Lit {
        Lit::pos(AtomId(i))
    }

    fn n(i: u32) -> Lit {
        Lit::neg(AtomId(i))
    }

    fn state(ids: &[u32]) -> WorldState {
        ids.iter().map(|&i| AtomId(i)).collect()
    }

    #[test]
    fn empty_condition_holds_everywhere() {
        assert!(ConditionSet::new().holds(&state(&[])));
        assert!(ConditionSet::new().holds(&state(&[1, 2])));
    }

    #[test]
    fn negation_is_closed_world() {
        let c = ConditionSet::from_lits([n(1)]);
        assert!(!c.holds(&state(&[1])));
        assert!(c.holds(&state(&[])));
        let c = ConditionSet::from_lits([p(1), n(2)]);
        assert!(c.holds(&state(&[1])));
    }

    #[test]
    fn detects_inconsistency() {
        assert!(!ConditionSet::from_lits([p(3), n(3)]).is_consistent());
        assert!(ConditionSet::from_lits([p(3), n(4)]).is_consistent());
    }

    #[test]
    fn set_algebra() {
        let a = ConditionSet::from_lits([p(1), p(2), n(5)]);
        let b = ConditionSet::from_lits([p(2), p(3)]);
        assert_eq!(
            a.union(&b),
            ConditionSet::from_lits([p(1), p(2), p(3), n(5)])
        );
        assert_eq!(a.intersection(&b), ConditionSet::from_lits([p(2)]));
        assert_eq!(a.difference(&b), ConditionSet::from_lits([p(1), n(5)]));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&ConditionSet::from_lits([n(1)])));
        assert!(ConditionSet::from_lits([p(2)]).is_subset(&a));
    }

    #[test]
    fn transition_adds_then_deletes() {
        let s = state(&[1, 2]);
        let t = s.transition(&[AtomId(3)], &[AtomId(1)]);
        assert_eq!(t, state(&[2, 3]));
        assert_eq!(
            s.transition(&[AtomId(0), AtomId(2)], &[]),
            state(&[0, 1, 2])
        );
    }
}
