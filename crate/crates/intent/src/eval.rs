//! Dataset loading and grammatical / interpretation accuracy.

use std::fs;
use std::path::Path;

use obtea_core::logic::{parse_goal, to_dnf, wff_equivalent, EquivError, GoalError, Wff};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::{BackendError, CompletionBackend};
use crate::interpret::{interpret, InterpretError, InterpretOutcome};
use crate::prompt::{Demonstration, PromptConfig};

/// One line of a dataset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetItem {
    pub instruction: String,
    pub goal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<String>,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: ground-truth goal `{goal}` does not check: {error}")]
    InvalidGoal {
        line: usize,
        goal: String,
        error: GoalError,
    },
}

/// Reads a JSON-lines file of `{"instruction", "goal", "difficulty"?}` records.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<DatasetItem>, DatasetError> {
    parse_jsonl(&read(path.as_ref())?)
}

/// Reads a JSON-lines file of `{"instruction", "goal"}` demonstrations.
pub fn load_demonstrations(path: impl AsRef<Path>) -> Result<Vec<Demonstration>, DatasetError> {
    parse_jsonl(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String, DatasetError> {
    fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_dataset(text: &str) -> Result<Vec<DatasetItem>, DatasetError> {
    parse_jsonl(text)
}

fn parse_jsonl<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>, DatasetError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| DatasetError::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ItemRecord {
    pub instruction: String,
    pub ground_truth: String,
    /// Canonical form of the accepted goal.
    pub output: Option<String>,
    pub grammatical: bool,
    pub equivalent: bool,
    pub attempts: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    /// Grammatical accuracy.
    pub ga: f64,
    /// Interpretation accuracy.
    pub ia: f64,
    pub items: Vec<ItemRecord>,
}

/// Formula equivalence; falls back to comparing normalized clause sets when
/// a truth table would be too large.
pub fn goals_equivalent(a: &Wff, b: &Wff) -> bool {
    match wff_equivalent(a, b) {
        Ok(eq) => eq,
        Err(EquivError::TooManyAtoms { .. }) => match (to_dnf(a), to_dnf(b)) {
            (Ok(x), Ok(y)) => x.clause_set() == y.clause_set(),
            _ => false,
        },
    }
}

fn evaluate_item(
    item: &DatasetItem,
    backend: &dyn CompletionBackend,
    config: &PromptConfig,
    max_retries: usize,
) -> Result<ItemRecord, BackendError> {
    let truth = parse_goal(&item.goal, &config.vocab).ok();
    let outcome = interpret(&item.instruction, backend, config, max_retries)
        .map_err(|InterpretError::BackendUnavailable(e)| e)?;
    let attempts = outcome.transcript().len();
    Ok(match outcome {
        InterpretOutcome::Goal { wff, .. } => ItemRecord {
            instruction: item.instruction.clone(),
            ground_truth: item.goal.clone(),
            equivalent: truth.as_ref().is_some_and(|t| goals_equivalent(t, &wff)),
            output: Some(wff.to_string()),
            grammatical: true,
            attempts,
        },
        InterpretOutcome::Failed { .. } => ItemRecord {
            instruction: item.instruction.clone(),
            ground_truth: item.goal.clone(),
            output: None,
            grammatical: false,
            equivalent: false,
            attempts,
        },
    })
}

/// Interprets every item with at most `in_flight` concurrent backend calls.
///
/// Ground-truth goals must check against the vocabulary. Records keep dataset
/// order regardless of completion order.
pub fn evaluate_dataset(
    items: &[DatasetItem],
    backend: &dyn CompletionBackend,
    config: &PromptConfig,
    max_retries: usize,
    in_flight: usize,
) -> Result<EvalReport, EvalError> {
    for (i, item) in items.iter().enumerate() {
        parse_goal(&item.goal, &config.vocab).map_err(|error| {
            EvalError::Dataset(DatasetError::InvalidGoal {
                line: i + 1,
                goal: item.goal.clone(),
                error,
            })
        })?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(in_flight.max(1))
        .build()
        .expect("thread pool");
    let records: Vec<ItemRecord> = pool.install(|| {
        items
            .par_iter()
            .map(|item| evaluate_item(item, backend, config, max_retries))
            .collect::<Result<_, _>>()
    })?;
    let n = records.len().max(1) as f64;
    let ga = records.iter().filter(|r| r.grammatical).count() as f64 / n;
    let ia = records.iter().filter(|r| r.equivalent).count() as f64 / n;
    Ok(EvalReport {
        ga,
        ia,
        items: records,
    })
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    BackendUnavailable(#[from] BackendError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{LookupBackend, ScriptedBackend};
    use obtea_core::logic::{Signature, Vocabulary};

    fn config() -> PromptConfig {
        let vocab = Vocabulary::new(
            [
                ("Coffee", "food"),
                ("Tea", "food"),
                ("Table", "place"),
                ("Bar", "place"),
            ]
            .map(|(a, b)| (a.to_string(), b.to_string())),
            [
                Signature::new("On", ["food", "place"]),
                Signature::new("RobotNear", ["place"]),
            ],
            [],
        )
        .unwrap();
        PromptConfig::new(vocab, vec![]).unwrap()
    }

    fn items() -> Vec<DatasetItem> {
        parse_dataset(
            "{\"instruction\": \"a\", \"goal\": \"RobotNear(Bar)\"}\n\
             \n\
             {\"instruction\": \"b\", \"goal\": \"On(Tea,Table) | On(Coffee,Table)\", \"difficulty\": \"medium\"}\n",
        )
        .unwrap()
    }

    #[test]
    fn echoing_truth_scores_full_marks() {
        let b = LookupBackend::new()
            .with("a", ["RobotNear(Bar)"])
            .with("b", ["On(Coffee,Table) | On(Tea,Table)"]);
        let r = evaluate_dataset(&items(), &b, &config(), 5, 4).unwrap();
        assert_eq!((r.ga, r.ia), (1.0, 1.0));
    }

    #[test]
    fn valid_but_wrong_goals() {
        let b = ScriptedBackend::repeating("RobotNear(Table)");
        let r = evaluate_dataset(&items(), &b, &config(), 5, 1).unwrap();
        assert_eq!((r.ga, r.ia), (1.0, 0.0));
    }

    #[test]
    fn bad_ground_truth_is_rejected() {
        let bad = parse_dataset("{\"instruction\": \"a\", \"goal\": \"Fly(Bar)\"}").unwrap();
        let b = ScriptedBackend::repeating("RobotNear(Bar)");
        assert!(matches!(
            evaluate_dataset(&bad, &b, &config(), 5, 1),
            Err(EvalError::Dataset(DatasetError::InvalidGoal {
                line: 1,
                ..
            }))
        ));
    }

    #[test]
    fn malformed_line_reports_position() {
        assert!(matches!(
            parse_dataset("{\"instruction\": \"a\"}"),
            Err(DatasetError::Parse { line: 1, .. })
        ));
    }
}
