//! Prompt assembly.
//!
//! Layout (version [`PROMPT_TEMPLATE_VERSION`]):
//!
//! ```text
//! <system text>
//!
//! Objects by category:
//!   <category>: <object>, <object>, ...
//!
//! Condition predicates:
//!   <Name>(<category>,...)
//!
//! Goal syntax: literals such as On(Coffee,Table), combined with & (and),
//! | (or) and ! (not); parentheses group sub-formulas.
//!
//! Examples:                       (omitted when there are no demonstrations)
//! Instruction: <text>
//! Goal: <formula>
//!
//! Your previous answer:           (only after a rejected attempt)
//! <output>
//! It was rejected because:
//! - <error>
//! Do not use these predicates: <names>
//! Do not use these objects: <names>
//!
//! Instruction: <instruction>
//! Goal:
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use obtea_core::logic::{parse_goal, GoalError, Signature, Vocabulary};
use serde::{Deserialize, Serialize};

pub const PROMPT_TEMPLATE_VERSION: u32 = 1;

pub const DEFAULT_SYSTEM_TEXT: &str = "You convert instructions for a service robot into goal formulas. \
Use only the objects and condition predicates listed below and reply with one formula on a single line.";

const INSTRUCTION_TAG: &str = "Instruction: ";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demonstration {
    pub instruction: String,
    pub goal: String,
}

#[derive(Debug, Clone)]
pub struct PromptConfig {
    pub system_text: String,
    pub vocab: Vocabulary,
    pub demonstrations: Vec<Demonstration>,
}

impl PromptConfig {
    /// Fails if a demonstration goal does not check against `vocab`.
    pub fn new(
        vocab: Vocabulary,
        demonstrations: Vec<Demonstration>,
    ) -> Result<Self, (usize, GoalError)> {
        for (i, d) in demonstrations.iter().enumerate() {
            parse_goal(&d.goal, &vocab).map_err(|e| (i, e))?;
        }
        Ok(Self {
            system_text: DEFAULT_SYSTEM_TEXT.to_string(),
            vocab,
            demonstrations,
        })
    }

    pub fn with_system_text(mut self, text: impl Into<String>) -> Self {
        self.system_text = text.into();
        self
    }

    /// `(category, objects)` in declaration order.
    pub fn objects_by_category(&self) -> Vec<(&str, Vec<&str>)> {
        self.vocab
            .categories()
            .into_iter()
            .map(|c| (c, self.vocab.objects_in(c).collect()))
            .collect()
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Signature> {
        self.vocab.condition_predicates()
    }
}

/// Retry state carried between attempts of one interpretation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FeedbackState {
    /// Attempts made so far.
    pub attempt: usize,
    pub blacklist_predicates: BTreeSet<String>,
    pub blacklist_objects: BTreeSet<String>,
    pub last_output: Option<String>,
    pub last_errors: Vec<String>,
}

impl FeedbackState {
    fn has_feedback(&self) -> bool {
        !self.last_errors.is_empty()
            || !self.blacklist_predicates.is_empty()
            || !self.blacklist_objects.is_empty()
    }
}

fn signature_text(sig: &Signature) -> String {
    if sig.params.is_empty() {
        sig.name.clone()
    } else {
        format!("{}({})", sig.name, sig.params.join(","))
    }
}

fn join<'a>(items: impl IntoIterator<Item = &'a String>) -> String {
    items
        .into_iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn build_prompt(config: &PromptConfig, instruction: &str, fb: &FeedbackState) -> String {
    let mut p = String::new();
    // Writing to a String cannot fail.
    let _ = writeln!(p, "{}\n", config.system_text.trim_end());
    p.push_str("Objects by category:\n");
    for (category, objects) in config.objects_by_category() {
        let _ = writeln!(p, "  {category}: {}", objects.join(", "));
    }
    p.push_str("\nCondition predicates:\n");
    for sig in config.predicates() {
        let _ = writeln!(p, "  {}", signature_text(sig));
    }
    p.push_str(
        "\nGoal syntax: literals such as On(Coffee,Table), combined with & (and),\n\
         | (or) and ! (not); parentheses group sub-formulas.\n",
    );
    if !config.demonstrations.is_empty() {
        p.push_str("\nExamples:\n");
        for d in &config.demonstrations {
            let _ = writeln!(p, "{INSTRUCTION_TAG}{}\nGoal: {}\n", d.instruction, d.goal);
        }
    } else {
        p.push('\n');
    }
    if fb.has_feedback() {
        if let Some(out) = &fb.last_output {
            let _ = writeln!(p, "Your previous answer:\n{out}");
        }
        if !fb.last_errors.is_empty() {
            p.push_str("It was rejected because:\n");
            for e in &fb.last_errors {
                let _ = writeln!(p, "- {e}");
            }
        }
        if !fb.blacklist_predicates.is_empty() {
            let _ = writeln!(
                p,
                "Do not use these predicates: {}",
                join(&fb.blacklist_predicates)
            );
        }
        if !fb.blacklist_objects.is_empty() {
            let _ = writeln!(
                p,
                "Do not use these objects: {}",
                join(&fb.blacklist_objects)
            );
        }
        p.push('\n');
    }
    let _ = write!(p, "{INSTRUCTION_TAG}{}\nGoal:", instruction.trim());
    p
}

/// The instruction of a prompt built by [`build_prompt`]: the text after the
/// last `Instruction: ` line.
pub fn instruction_of(prompt: &str) -> Option<&str> {
    prompt
        .lines()
        .rev()
        .find_map(|l| l.strip_prefix(INSTRUCTION_TAG))
        .map(str::trim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab() -> Vocabulary {
        Vocabulary::new(
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
        .unwrap()
    }

    fn demos(n: usize) -> Vec<Demonstration> {
        (0..n)
            .map(|i| Demonstration {
                instruction: format!("demo instruction {i}"),
                goal: if i % 2 == 0 {
                    "RobotNear(Bar)".into()
                } else {
                    "On(Tea,Table)".into()
                },
            })
            .collect()
    }

    #[test]
    fn zero_shot_has_no_examples() {
        let c = PromptConfig::new(vocab(), vec![]).unwrap();
        let p = build_prompt(&c, "go to the bar", &FeedbackState::default());
        assert!(!p.contains("Examples:"));
        assert!(p.contains("  food: Coffee, Tea"));
        assert!(p.contains("  On(food,place)"));
        assert!(p.ends_with("Instruction: go to the bar\nGoal:"));
    }

    #[test]
    fn demonstrations_appear_in_order() {
        let c = PromptConfig::new(vocab(), demos(5)).unwrap();
        let p = build_prompt(&c, "x", &FeedbackState::default());
        let positions: Vec<usize> = (0..5)
            .map(|i| p.find(&format!("demo instruction {i}\n")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(instruction_of(&p), Some("x"));
    }

    #[test]
    fn feedback_section_lists_blacklist() {
        let c = PromptConfig::new(vocab(), demos(1)).unwrap();
        let fb = FeedbackState {
            attempt: 1,
            blacklist_predicates: ["Fly".to_string()].into(),
            last_output: Some("Fly(Table)".into()),
            last_errors: vec!["unknown predicate `Fly`".into()],
            ..Default::default()
        };
        let p = build_prompt(&c, "x", &fb);
        assert!(p.contains("Your previous answer:\nFly(Table)\n"));
        assert!(p.contains("Do not use these predicates: Fly\n"));
        assert!(!p.contains("Do not use these objects"));
    }

    #[test]
    fn invalid_demonstration_is_rejected() {
        let bad = vec![Demonstration {
            instruction: "x".into(),
            goal: "Fly(Bar)".into(),
        }];
        assert_eq!(PromptConfig::new(vocab(), bad).unwrap_err().0, 0);
    }
}
