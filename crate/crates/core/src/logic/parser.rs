//! Recursive-descent parser for the goal grammar.
//!
//! ```text
//! goal    := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | '(' or ')' | literal
//! literal := IDENT '(' IDENT (',' IDENT)* ')' | IDENT
//! ```
//!
//! `¬`, `∧` and `∨` are accepted as spellings of `!`, `&` and `|`.
//! Identifiers match `[A-Za-z_][A-Za-z0-9_]*`. Whitespace is insignificant.
//! Error positions are character offsets into the input.

use std::fmt;

use thiserror::Error;

use super::validate::{validate_wff, SemanticError};
use super::vocab::Vocabulary;
use super::wff::{Atom, Wff};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoalError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{}", join_errors(.0))]
    Semantic(Vec<SemanticError>),
}

fn join_errors(errors: &[SemanticError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::Not => f.write_str("`!`"),
            Token::And => f.write_str("`&`"),
            Token::Or => f.write_str("`|`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(SyntaxError {
                    position: i,
                    expected: "a literal, operator or parenthesis".into(),
                    found: format!("character `{other}`"),
                })
            }
        };
        tokens.push((i, tok));
        i += 1;
    }
    tokens.push((chars.len(), Token::Eof));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> SyntaxError {
        let (position, tok) = &self.tokens[self.pos];
        SyntaxError {
            position: *position,
            expected: expected.into(),
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, want: Token, expected: &str) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn or(&mut self) -> Result<Wff, SyntaxError> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Wff::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Wff, SyntaxError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Wff::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Wff, SyntaxError> {
        match self.peek() {
            Token::Not => {
                self.bump();
                Ok(Wff::not(self.unary()?))
            }
            Token::LParen => {
                self.bump();
                let inner = self.or()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Token::Ident(_) => self.literal(),
            _ => Err(self.error("a literal, `!` or `(`")),
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, SyntaxError> {
        match self.peek() {
            Token::Ident(_) => match self.bump().1 {
                Token::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error(expected)),
        }
    }

    fn literal(&mut self) -> Result<Wff, SyntaxError> {
        let predicate = self.ident("a predicate name")?;
        let mut args = Vec::new();
        if *self.peek() == Token::LParen {
            self.bump();
            args.push(self.ident("an object name")?);
            loop {
                match self.peek() {
                    Token::Comma => {
                        self.bump();
                        args.push(self.ident("an object name")?);
                    }
                    Token::RParen => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.error("`,` or `)`")),
                }
            }
        }
        Ok(Wff::atom(Atom { predicate, args }))
    }
}

/// Parses goal text without consulting a vocabulary.
pub fn parse_wff(text: &str) -> Result<Wff, SyntaxError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let wff = parser.or()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.error("`&`, `|` or end of input"));
    }
    Ok(wff)
}

/// Parses goal text and validates every literal against `vocab`.
pub fn parse_goal(text: &str, vocab: &Vocabulary) -> Result<Wff, GoalError> {
    let wff = parse_wff(text)?;
    let errors = validate_wff(&wff, vocab);
    if errors.is_empty() {
        Ok(wff)
    } else {
        Err(GoalError::Semantic(errors))
    }
}
