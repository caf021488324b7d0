//! Semantic checks of formulas against a vocabulary.

use serde::Serialize;
use thiserror::Error;

use super::vocab::Vocabulary;
use super::wff::{Atom, Wff};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind")]
pub enum SemanticError {
    #[error("unknown predicate `{predicate}`")]
    UnknownPredicate { predicate: String },
    #[error("unknown object `{object}` in `{literal}`")]
    UnknownObject { object: String, literal: String },
    #[error("`{predicate}` takes {expected} argument(s) but `{literal}` has {found}")]
    ArityMismatch {
        predicate: String,
        literal: String,
        expected: usize,
        found: usize,
    },
    #[error(
        "argument {position} of `{literal}` must be a <{expected}> but `{object}` is a <{found}>"
    )]
    CategoryMismatch {
        literal: String,
        position: usize,
        object: String,
        expected: String,
        found: String,
    },
}

impl SemanticError {
    /// The predicate or object name this error is about.
    pub fn token(&self) -> &str {
        match self {
            SemanticError::UnknownPredicate { predicate } => predicate,
            SemanticError::ArityMismatch { predicate, .. } => predicate,
            SemanticError::UnknownObject { object, .. } => object,
            SemanticError::CategoryMismatch { object, .. } => object,
        }
    }
}

/// Checks one atom. Errors are reported per argument so a caller sees every offending token.
pub fn validate_atom(atom: &Atom, vocab: &Vocabulary) -> Vec<SemanticError> {
    let literal = atom.to_string();
    let Some(sig) = vocab.condition(&atom.predicate) else {
        let mut errors = vec![SemanticError::UnknownPredicate {
            predicate: atom.predicate.clone(),
        }];
        for arg in &atom.args {
            if vocab.category_of(arg).is_none() {
                errors.push(SemanticError::UnknownObject {
                    object: arg.clone(),
                    literal: literal.clone(),
                });
            }
        }
        return errors;
    };
    if sig.arity() != atom.args.len() {
        return vec![SemanticError::ArityMismatch {
            predicate: atom.predicate.clone(),
            literal,
            expected: sig.arity(),
            found: atom.args.len(),
        }];
    }
    let mut errors = Vec::new();
    for (i, (arg, want)) in atom.args.iter().zip(&sig.params).enumerate() {
        match vocab.category_of(arg) {
            None => errors.push(SemanticError::UnknownObject {
                object: arg.clone(),
                literal: literal.clone(),
            }),
            Some(found) if found != want => errors.push(SemanticError::CategoryMismatch {
                literal: literal.clone(),
                position: i + 1,
                object: arg.clone(),
                expected: want.clone(),
                found: found.to_string(),
            }),
            Some(_) => {}
        }
    }
    errors
}

/// Returns every semantic error in `wff`; empty means the formula is valid.
pub fn validate_wff(wff: &Wff, vocab: &Vocabulary) -> Vec<SemanticError> {
    let mut errors: Vec<SemanticError> = Vec::new();
    for lit in wff.literals() {
        for e in validate_atom(&lit.atom, vocab) {
            if !errors.contains(&e) {
                errors.push(e);
            }
        }
    }
    errors
}
