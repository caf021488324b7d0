//! Truth-table equivalence of two formulas.

use std::collections::HashMap;

use thiserror::Error;

use super::wff::{Atom, Wff};

/// Largest atom count for which the exhaustive check runs.
pub const MAX_EQUIV_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("{count} distinct atoms exceed the truth-table limit of {MAX_EQUIV_ATOMS}")]
    TooManyAtoms { count: usize },
}

/// True iff `a` and `b` agree on every assignment to the union of their atoms.
pub fn wff_equivalent(a: &Wff, b: &Wff) -> Result<bool, EquivError> {
    let mut index: HashMap<&Atom, usize> = HashMap::new();
    for atom in a.atoms().into_iter().chain(b.atoms()) {
        let next = index.len();
        index.entry(atom).or_insert(next);
    }
    let k = index.len();
    if k > MAX_EQUIV_ATOMS {
        return Err(EquivError::TooManyAtoms { count: k });
    }
    for bits in 0u32..(1u32 << k) {
        let truth = |atom: &Atom| bits >> index[atom] & 1 == 1;
        if a.eval(&truth) != b.eval(&truth) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_wff;

    fn eq(a: &str, b: &str) -> bool {
        wff_equivalent(&parse_wff(a).unwrap(), &parse_wff(b).unwrap()).unwrap()
    }

    #[test]
    fn distributive_law() {
        assert!(eq("(l1 & l2) | (l1 & l3)", "l1 & (l2 | l3)"));
    }

    #[test]
    fn literal_is_not_its_negation() {
        assert!(!eq("l1", "!l1"));
    }

    #[test]
    fn de_morgan() {
        assert!(eq("!(a & b)", "!a | !b"));
    }

    #[test]
    fn extra_atom_matters() {
        assert!(!eq("a", "a & b"));
        assert!(eq("a", "a & (b | !b)"));
    }

    #[test]
    fn guards_atom_count() {
        let big = (0..21)
            .map(|i| format!("P{i}"))
            .collect::<Vec<_>>()
            .join(" | ");
        let w = parse_wff(&big).unwrap();
        assert_eq!(
            wff_equivalent(&w, &w),
            Err(EquivError::TooManyAtoms { count: 21 })
        );
    }
}
