//! Negation pushing, distribution and clause simplification into disjunctive normal form.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::wff::{Atom, SignedLiteral, Wff};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnfError {
    #[error("goal is unsatisfiable: every disjunct is contradictory")]
    EmptyGoal,
}

/// A conjunction of literals, kept sorted.
pub type Clause = BTreeSet<SignedLiteral>;

/// A disjunction of clauses. Each clause is one sub-goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dnf {
    pub clauses: Vec<Clause>,
}

impl Dnf {
    pub fn new(clauses: Vec<Clause>) -> Self {
        Self { clauses }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Clause set ignoring order.
    pub fn clause_set(&self) -> HashSet<&Clause> {
        self.clauses.iter().collect()
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out: Vec<&Atom> = Vec::new();
        for lit in self.clauses.iter().flatten() {
            if !out.contains(&&lit.atom) {
                out.push(&lit.atom);
            }
        }
        out
    }
}

/// Formats one clause as `A & !B`.
pub fn clause_to_string(clause: &Clause) -> String {
    clause
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" & ")
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(clause_to_string).collect();
        f.write_str(&parts.join(" | "))
    }
}

fn contradictory(clause: &Clause) -> bool {
    // `l` and `!l` are adjacent in the sorted order.
    clause
        .iter()
        .zip(clause.iter().skip(1))
        .any(|(a, b)| a.atom == b.atom && a.negated != b.negated)
}

fn push_unique(out: &mut Vec<Clause>, clause: Clause) {
    if !contradictory(&clause) && !out.contains(&clause) {
        out.push(clause);
    }
}

fn distribute(wff: &Wff, negate: bool) -> Vec<Clause> {
    match (wff, negate) {
        (Wff::Literal(l), _) => {
            let lit = if negate { l.negate() } else { l.clone() };
            vec![Clause::from([lit])]
        }
        (Wff::Not(inner), _) => distribute(inner, !negate),
        (Wff::And(a, b), false) | (Wff::Or(a, b), true) => {
            let left = distribute(a, negate);
            let right = distribute(b, negate);
            let mut out = Vec::new();
            for l in &left {
                for r in &right {
                    push_unique(&mut out, l.union(r).cloned().collect());
                }
            }
            out
        }
        (Wff::Or(a, b), false) | (Wff::And(a, b), true) => {
            let mut out = distribute(a, negate);
            for c in distribute(b, negate) {
                push_unique(&mut out, c);
            }
            out
        }
    }
}

/// Converts a formula to DNF.
///
/// Contradictory clauses and duplicates are dropped, then any clause that is a
/// strict superset of another is removed. Surviving clauses keep the order in
/// which distribution first produced them.
pub fn to_dnf(wff: &Wff) -> Result<Dnf, DnfError> {
    let clauses = distribute(wff, false);
    let kept: Vec<Clause> = clauses
        .iter()
        .filter(|c| !clauses.iter().any(|o| o.len() < c.len() && o.is_subset(c)))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(DnfError::EmptyGoal);
    }
    Ok(Dnf::new(kept))
}

/// Rebuilds a formula as a left-nested disjunction of left-nested conjunctions.
/// Negated literals become `Not` over a positive literal, matching the parser's output shape.
pub fn dnf_to_wff(dnf: &Dnf) -> Wff {
    let clause_wff = |clause: &Clause| {
        clause
            .iter()
            .map(|l| {
                let pos = Wff::atom(l.atom.clone());
                if l.negated {
                    Wff::not(pos)
                } else {
                    pos
                }
            })
            .reduce(Wff::and)
            .expect("clauses are nonempty")
    };
    dnf.clauses
        .iter()
        .map(clause_wff)
        .reduce(Wff::or)
        .expect("dnf is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_wff;

    fn dnf(text: &str) -> Result<Vec<String>, DnfError> {
        to_dnf(&parse_wff(text).unwrap()).map(|d| d.clauses.iter().map(clause_to_string).collect())
    }

    #[test]
    fn keeps_factored_subgoals() {
        assert_eq!(
            dnf("(L1 & L2) | (L1 & L3)").unwrap(),
            ["L1 & L2", "L1 & L3"]
        );
    }

    #[test]
    fn distributes_cafe_goal() {
        assert_eq!(
            dnf("¬Dirty(T) ∧ (On(C,T) ∨ On(Te,T))").unwrap(),
            ["!Dirty(T) & On(C,T)", "!Dirty(T) & On(Te,T)"]
        );
    }

    #[test]
    fn de_morgan_and_double_negation() {
        assert_eq!(dnf("!(a | b)").unwrap(), ["!a & !b"]);
        assert_eq!(dnf("!!a").unwrap(), ["a"]);
        assert_eq!(dnf("!(a & b)").unwrap(), ["!a", "!b"]);
    }

    #[test]
    fn contradiction_is_empty_goal() {
        assert_eq!(dnf("a & !a"), Err(DnfError::EmptyGoal));
        assert_eq!(dnf("a & !a | b").unwrap(), ["b"]);
    }

    #[test]
    fn removes_duplicates_and_subsumed_clauses() {
        assert_eq!(dnf("a & b | a | a & b").unwrap(), ["a"]);
        assert_eq!(dnf("a | a & b | b").unwrap(), ["a", "b"]);
    }

    #[test]
    fn rebuilt_formula_prints_in_grammar() {
        let d = to_dnf(&parse_wff("!x & (y | z)").unwrap()).unwrap();
        assert_eq!(dnf_to_wff(&d).to_string(), "!x & y | !x & z");
    }
}
