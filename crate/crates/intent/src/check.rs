//! Extraction of a candidate formula from a completion and the two checkers.

use obtea_core::logic::{parse_wff, validate_wff, SemanticError, SyntaxError, Vocabulary, Wff};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    Syntax(SyntaxError),
    Semantic(Vec<SemanticError>),
    /// Passes both checkers but no assignment satisfies it.
    Unsatisfiable,
}

impl CheckError {
    pub fn messages(&self) -> Vec<String> {
        match self {
            CheckError::Syntax(e) => vec![e.to_string()],
            CheckError::Semantic(es) => es.iter().map(ToString::to_string).collect(),
            CheckError::Unsatisfiable => vec!["the goal is a contradiction".to_string()],
        }
    }

    pub fn kind(&self) -> CheckKind {
        match self {
            CheckError::Syntax(_) => CheckKind::Syntax,
            CheckError::Semantic(_) => CheckKind::Semantic,
            CheckError::Unsatisfiable => CheckKind::Unsatisfiable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Syntax,
    Semantic,
    Unsatisfiable,
}

/// Outcome of checking one completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checked {
    /// The text that was checked.
    pub candidate: String,
    pub result: Result<Wff, CheckError>,
}

fn clean(line: &str) -> &str {
    line.trim().trim_matches('`').trim()
}

/// Picks the text to check from a completion.
///
/// Lines are trimmed of whitespace and backticks. The first line that parses
/// and passes the semantic checker wins; failing that, the first line that
/// parses; failing that, the whole trimmed response.
pub fn extract_candidate(output: &str, vocab: &Vocabulary) -> String {
    let lines: Vec<&str> = output
        .lines()
        .map(clean)
        .filter(|l| !l.is_empty())
        .collect();
    let parsed: Vec<(&str, Wff)> = lines
        .iter()
        .filter_map(|l| parse_wff(l).ok().map(|w| (*l, w)))
        .collect();
    if let Some((l, _)) = parsed
        .iter()
        .find(|(_, w)| validate_wff(w, vocab).is_empty())
    {
        return l.to_string();
    }
    if let Some((l, _)) = parsed.first() {
        return l.to_string();
    }
    clean(output).to_string()
}

/// Runs the syntax checker, then the semantic checker, on the extracted candidate.
pub fn check(output: &str, vocab: &Vocabulary) -> Checked {
    let candidate = extract_candidate(output, vocab);
    let result = match parse_wff(&candidate) {
        Err(e) => Err(CheckError::Syntax(e)),
        Ok(w) => {
            let errors = validate_wff(&w, vocab);
            if errors.is_empty() {
                Ok(w)
            } else {
                Err(CheckError::Semantic(errors))
            }
        }
    };
    Checked { candidate, result }
}

#[cfg(test)]
mod tests {
    use super::*;
    use obtea_core::logic::Signature;

    fn vocab() -> Vocabulary {
        Vocabulary::new(
            [("Coffee", "food"), ("Table", "place"), ("Bar", "place")]
                .map(|(a, b)| (a.to_string(), b.to_string())),
            [
                Signature::new("On", ["food", "place"]),
                Signature::new("RobotNear", ["place"]),
            ],
            [],
        )
        .unwrap()
    }

    #[test]
    fn plain_goal_passes() {
        let c = check("RobotNear(Bar)", &vocab());
        assert_eq!(c.result.unwrap().to_string(), "RobotNear(Bar)");
    }

    #[test]
    fn unclosed_call_is_a_syntax_error() {
        let c = check("On(Coffee", &vocab());
        assert!(matches!(c.result, Err(CheckError::Syntax(_))));
    }

    #[test]
    fn unknown_predicate_is_semantic() {
        let c = check("Fly(Table)", &vocab());
        let Err(CheckError::Semantic(es)) = c.result else {
            panic!()
        };
        assert_eq!(es[0].token(), "Fly");
    }

    #[test]
    fn prose_is_stripped() {
        let c = check(
            "Sure! Here is the goal:\n```\nOn(Coffee,Table) & RobotNear(Bar)\n```\n",
            &vocab(),
        );
        assert_eq!(c.candidate, "On(Coffee,Table) & RobotNear(Bar)");
        assert!(c.result.is_ok());
    }

    #[test]
    fn valid_line_preferred_over_parseable_prose() {
        let c = check("Okay\nRobotNear(Table)", &vocab());
        assert_eq!(c.candidate, "RobotNear(Table)");
        let c = check("Okay\nFly(Table)", &vocab());
        assert_eq!(c.candidate, "Okay");
    }

    #[test]
    fn unparseable_response_is_checked_whole() {
        let c = check("  no formula here.  ", &vocab());
        assert_eq!(c.candidate, "no formula here.");
        assert!(matches!(c.result, Err(CheckError::Syntax(_))));
    }
}
