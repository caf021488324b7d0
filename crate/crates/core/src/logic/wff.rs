//! Well-formed formula AST over ground literals and its canonical printer.

use std::fmt;

use serde::{Serialize, Serializer};

/// A ground predicate instance `P(o1,...,ok)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new(
        predicate: impl Into<String>,
        args: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Self {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// An atom with a sign. Ordering is by atom first, so `l` sorts directly before `!l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLiteral {
    pub atom: Atom,
    pub negated: bool,
}

impl SignedLiteral {
    pub fn pos(atom: Atom) -> Self {
        Self {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Self {
            atom,
            negated: true,
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for SignedLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        self.atom.fmt(f)
    }
}

impl Serialize for SignedLiteral {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Wff {
    Literal(SignedLiteral),
    Not(Box<Wff>),
    And(Box<Wff>, Box<Wff>),
    Or(Box<Wff>, Box<Wff>),
}

impl Wff {
    pub fn atom(atom: Atom) -> Self {
        Wff::Literal(SignedLiteral::pos(atom))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Wff) -> Self {
        Wff::Not(Box::new(inner))
    }

    pub fn and(a: Wff, b: Wff) -> Self {
        Wff::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Wff, b: Wff) -> Self {
        Wff::Or(Box::new(a), Box::new(b))
    }

    /// Every literal leaf, left to right.
    pub fn literals(&self) -> Vec<&SignedLiteral> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a SignedLiteral>) {
        match self {
            Wff::Literal(l) => out.push(l),
            Wff::Not(w) => w.collect_literals(out),
            Wff::And(a, b) | Wff::Or(a, b) => {
                a.collect_literals(out);
                b.collect_literals(out);
            }
        }
    }

    /// Distinct atoms in order of first appearance.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out: Vec<&Atom> = Vec::new();
        for l in self.literals() {
            if !out.contains(&&l.atom) {
                out.push(&l.atom);
            }
        }
        out
    }

    /// Evaluates under a closed-world assignment given as a predicate on atoms.
    pub fn eval(&self, truth: &impl Fn(&Atom) -> bool) -> bool {
        match self {
            Wff::Literal(l) => truth(&l.atom) != l.negated,
            Wff::Not(w) => !w.eval(truth),
            Wff::And(a, b) => a.eval(truth) && b.eval(truth),
            Wff::Or(a, b) => a.eval(truth) || b.eval(truth),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Wff::Or(..) => 1,
            Wff::And(..) => 2,
            Wff::Not(_) | Wff::Literal(_) => 3,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical ASCII form. Binary operators are left-associative, so a right
/// operand of the same operator is parenthesized to keep the tree shape.
impl fmt::Display for Wff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wff::Literal(l) => l.fmt(f),
            Wff::Not(w) => {
                f.write_str("!")?;
                w.write_operand(f, 3)
            }
            Wff::And(a, b) => {
                a.write_operand(f, 2)?;
                f.write_str(" & ")?;
                b.write_operand(f, 3)
            }
            Wff::Or(a, b) => {
                a.write_operand(f, 1)?;
                f.write_str(" | ")?;
                b.write_operand(f, 2)
            }
        }
    }
}
