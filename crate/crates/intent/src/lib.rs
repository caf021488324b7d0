//! Turning natural-language instructions into checked goal formulas.

pub mod backend;
pub mod check;
pub mod eval;
pub mod interpret;
pub mod prompt;

pub use backend::{
    read_transcript, BackendError, CompletionBackend, LookupBackend, RecordingBackend,
    RemoteBackend, ReplayBackend, ScriptedBackend, TranscriptEntry, TOKEN_ENV, URL_ENV,
};
pub use check::{check, extract_candidate, CheckError, CheckKind, Checked};
pub use eval::{
    evaluate_dataset, goals_equivalent, load_dataset, load_demonstrations, parse_dataset,
    DatasetError, DatasetItem, EvalError, EvalReport, ItemRecord,
};
pub use interpret::{interpret, Attempt, InterpretError, InterpretOutcome, DEFAULT_MAX_RETRIES};
pub use prompt::{
    build_prompt, instruction_of, Demonstration, FeedbackState, PromptConfig,
    PROMPT_TEMPLATE_VERSION,
};
