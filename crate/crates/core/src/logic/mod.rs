//! First-order-logic goals: vocabulary, formula AST, goal grammar, validation and DNF.

mod dnf;
mod equiv;
mod parser;
mod validate;
mod vocab;
mod wff;

pub use dnf::{clause_to_string, dnf_to_wff, to_dnf, Clause, Dnf, DnfError};
pub use equiv::{wff_equivalent, EquivError, MAX_EQUIV_ATOMS};
pub use parser::{parse_goal, parse_wff, GoalError, SyntaxError};
pub use validate::{validate_atom, validate_wff, SemanticError};
pub use vocab::{Signature, VocabError, Vocabulary};
pub use wff::{Atom, SignedLiteral, Wff};
