//! The checker-feedback retry loop.

use obtea_core::logic::{to_dnf, Dnf, SemanticError, Wff};
use serde::Serialize;
use thiserror::Error;

use crate::backend::{BackendError, CompletionBackend};
use crate::check::{check, CheckError, CheckKind};
use crate::prompt::{build_prompt, FeedbackState, PromptConfig};

pub const DEFAULT_MAX_RETRIES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretError {
    #[error(transparent)]
    BackendUnavailable(#[from] BackendError),
}

/// One prompt/response round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub prompt: String,
    pub response: String,
    pub candidate: String,
    /// `None` when the candidate passed.
    pub error_kind: Option<CheckKind>,
    pub errors: Vec<String>,
    pub blacklist_predicates: Vec<String>,
    pub blacklist_objects: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpretOutcome {
    Goal {
        wff: Wff,
        dnf: Dnf,
        attempts_used: usize,
        transcript: Vec<Attempt>,
    },
    Failed {
        transcript: Vec<Attempt>,
    },
}

impl InterpretOutcome {
    pub fn transcript(&self) -> &[Attempt] {
        match self {
            InterpretOutcome::Goal { transcript, .. } | InterpretOutcome::Failed { transcript } => {
                transcript
            }
        }
    }

    pub fn goal(&self) -> Option<&Wff> {
        match self {
            InterpretOutcome::Goal { wff, .. } => Some(wff),
            InterpretOutcome::Failed { .. } => None,
        }
    }
}

fn update_feedback(fb: &mut FeedbackState, candidate: &str, err: &CheckError) {
    if let CheckError::Semantic(errors) = err {
        for e in errors {
            match e {
                SemanticError::UnknownPredicate { predicate } => {
                    fb.blacklist_predicates.insert(predicate.clone());
                }
                SemanticError::UnknownObject { object, .. } => {
                    fb.blacklist_objects.insert(object.clone());
                }
                SemanticError::ArityMismatch { .. } | SemanticError::CategoryMismatch { .. } => {}
            }
        }
    }
    fb.last_output = Some(candidate.to_string());
    fb.last_errors = err.messages();
}

/// Asks `backend` for a goal, feeding checker errors back until a candidate
/// passes or `max_retries` retries (so `max_retries + 1` attempts) are used.
pub fn interpret(
    instruction: &str,
    backend: &dyn CompletionBackend,
    config: &PromptConfig,
    max_retries: usize,
) -> Result<InterpretOutcome, InterpretError> {
    let mut fb = FeedbackState::default();
    let mut transcript = Vec::new();
    for _ in 0..=max_retries {
        let prompt = build_prompt(config, instruction, &fb);
        let response = backend.complete(&prompt)?;
        fb.attempt += 1;
        let checked = check(&response, &config.vocab);
        let result = checked.result.and_then(|w| {
            to_dnf(&w)
                .map(|d| (w, d))
                .map_err(|_| CheckError::Unsatisfiable)
        });
        let mut attempt = Attempt {
            prompt,
            response,
            candidate: checked.candidate.clone(),
            error_kind: None,
            errors: Vec::new(),
            blacklist_predicates: Vec::new(),
            blacklist_objects: Vec::new(),
        };
        match result {
            Ok((wff, dnf)) => {
                attempt.blacklist_predicates = fb.blacklist_predicates.iter().cloned().collect();
                attempt.blacklist_objects = fb.blacklist_objects.iter().cloned().collect();
                transcript.push(attempt);
                return Ok(InterpretOutcome::Goal {
                    wff,
                    dnf,
                    attempts_used: fb.attempt,
                    transcript,
                });
            }
            Err(e) => {
                update_feedback(&mut fb, &checked.candidate, &e);
                attempt.error_kind = Some(e.kind());
                attempt.errors = e.messages();
                attempt.blacklist_predicates = fb.blacklist_predicates.iter().cloned().collect();
                attempt.blacklist_objects = fb.blacklist_objects.iter().cloned().collect();
                transcript.push(attempt);
            }
        }
    }
    Ok(InterpretOutcome::Failed { transcript })
}
