//! Text-completion backends.

use std::collections::{HashMap, VecDeque};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prompt::instruction_of;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("backend unavailable: {0}")]
    Unavailable(String),
    #[error("scripted backend has no response left")]
    Exhausted,
    #[error("no recorded response for this prompt")]
    NotRecorded,
    #[error("backend configuration: {0}")]
    Config(String),
}

/// Anything that turns a prompt into a completion.
pub trait CompletionBackend: Send + Sync {
    fn complete(&self, prompt: &str) -> Result<String, BackendError>;
}

impl<B: CompletionBackend + ?Sized> CompletionBackend for &B {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        (**self).complete(prompt)
    }
}

impl<B: CompletionBackend + ?Sized> CompletionBackend for Box<B> {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        (**self).complete(prompt)
    }
}

/// Returns canned responses in order, ignoring the prompt.
#[derive(Debug)]
pub struct ScriptedBackend {
    responses: Vec<String>,
    next: Mutex<usize>,
    repeat_last: bool,
}

impl ScriptedBackend {
    /// Fails with [`BackendError::Exhausted`] after the last response.
    pub fn new(responses: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            responses: responses.into_iter().map(Into::into).collect(),
            next: Mutex::new(0),
            repeat_last: false,
        }
    }

    /// Always answers `response`.
    pub fn repeating(response: impl Into<String>) -> Self {
        Self {
            responses: vec![response.into()],
            next: Mutex::new(0),
            repeat_last: true,
        }
    }

    /// Number of completions served so far.
    pub fn calls(&self) -> usize {
        *self.next.lock().unwrap()
    }
}

impl CompletionBackend for ScriptedBackend {
    fn complete(&self, _prompt: &str) -> Result<String, BackendError> {
        let mut next = self.next.lock().unwrap();
        let i = *next;
        *next += 1;
        match self.responses.get(i) {
            Some(r) => Ok(r.clone()),
            None if self.repeat_last && !self.responses.is_empty() => {
                Ok(self.responses.last().unwrap().clone())
            }
            None => Err(BackendError::Exhausted),
        }
    }
}

/// Per-instruction response scripts, so concurrent items stay deterministic.
///
/// The instruction is recovered from the prompt's final `Instruction:` line.
/// Once a script runs out its last response repeats.
#[derive(Debug, Default)]
pub struct LookupBackend {
    scripts: HashMap<String, Vec<String>>,
    served: Mutex<HashMap<String, usize>>,
}

impl LookupBackend {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(
        mut self,
        instruction: impl Into<String>,
        responses: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        self.scripts.insert(
            instruction.into(),
            responses.into_iter().map(Into::into).collect(),
        );
        self
    }

    /// Reads a JSON-lines file of `{"instruction": .., "responses": [..]}` records.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BackendError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| BackendError::Config(format!("{}: {e}", path.display())))?;
        let mut out = Self::new();
        for (i, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let s: Script = serde_json::from_str(line)
                .map_err(|e| BackendError::Config(format!("{}:{}: {e}", path.display(), i + 1)))?;
            out = out.with(s.instruction, s.responses);
        }
        Ok(out)
    }
}

#[derive(Deserialize)]
struct Script {
    instruction: String,
    responses: Vec<String>,
}

impl CompletionBackend for LookupBackend {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        let instruction = instruction_of(prompt).ok_or(BackendError::NotRecorded)?;
        let script = self
            .scripts
            .get(instruction)
            .filter(|s| !s.is_empty())
            .ok_or(BackendError::NotRecorded)?;
        let mut served = self.served.lock().unwrap();
        let n = served.entry(instruction.to_string()).or_insert(0);
        let response = script[(*n).min(script.len() - 1)].clone();
        *n += 1;
        Ok(response)
    }
}

/// One line of a transcript file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub prompt: String,
    pub response: String,
}

/// Serves responses recorded for identical prompts, in recording order.
#[derive(Debug, Default)]
pub struct ReplayBackend {
    queues: Mutex<HashMap<String, VecDeque<String>>>,
}

impl ReplayBackend {
    pub fn from_entries(entries: impl IntoIterator<Item = TranscriptEntry>) -> Self {
        let mut queues: HashMap<String, VecDeque<String>> = HashMap::new();
        for e in entries {
            queues.entry(e.prompt).or_default().push_back(e.response);
        }
        Self {
            queues: Mutex::new(queues),
        }
    }

    /// Reads a JSON-lines transcript of `{"prompt": .., "response": ..}` records.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BackendError> {
        Ok(Self::from_entries(read_transcript(path)?))
    }
}

pub fn read_transcript(path: impl AsRef<Path>) -> Result<Vec<TranscriptEntry>, BackendError> {
    let path = path.as_ref();
    let file = fs::File::open(path)
        .map_err(|e| BackendError::Config(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| BackendError::Config(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line)
            .map_err(|e| BackendError::Config(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(entry);
    }
    Ok(out)
}

impl CompletionBackend for ReplayBackend {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        let mut queues = self.queues.lock().unwrap();
        let q = queues.get_mut(prompt).ok_or(BackendError::NotRecorded)?;
        // Keep serving the final recording once a prompt's queue is drained.
        if q.len() > 1 {
            Ok(q.pop_front().unwrap())
        } else {
            q.front().cloned().ok_or(BackendError::NotRecorded)
        }
    }
}

/// Wraps another backend and keeps every exchange for later replay.
pub struct RecordingBackend<B> {
    inner: B,
    log: Mutex<Vec<TranscriptEntry>>,
}

impl<B: CompletionBackend> RecordingBackend<B> {
    pub fn new(inner: B) -> Self {
        Self {
            inner,
            log: Mutex::new(Vec::new()),
        }
    }

    pub fn entries(&self) -> Vec<TranscriptEntry> {
        self.log.lock().unwrap().clone()
    }

    pub fn write_jsonl(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = fs::File::create(path)?;
        for e in self.log.lock().unwrap().iter() {
            writeln!(
                f,
                "{}",
                serde_json::to_string(e).expect("entries serialize")
            )?;
        }
        Ok(())
    }
}

impl<B: CompletionBackend> CompletionBackend for RecordingBackend<B> {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        let response = self.inner.complete(prompt)?;
        self.log.lock().unwrap().push(TranscriptEntry {
            prompt: prompt.to_string(),
            response: response.clone(),
        });
        Ok(response)
    }
}

pub const URL_ENV: &str = "OBTEA_BACKEND_URL";
pub const TOKEN_ENV: &str = "OBTEA_BACKEND_TOKEN";

/// HTTP endpoint that accepts the prompt as a `text/plain` POST body and
/// answers with the completion text.
#[derive(Debug, Clone)]
pub struct RemoteBackend {
    url: String,
    token: Option<String>,
    timeout: Duration,
    transport_retries: u32,
}

impl RemoteBackend {
    pub fn new(url: impl Into<String>, token: Option<String>) -> Self {
        Self {
            url: url.into(),
            token,
            timeout: Duration::from_secs(60),
            transport_retries: 2,
        }
    }

    /// Reads the endpoint from `OBTEA_BACKEND_URL` and an optional bearer
    /// token from `OBTEA_BACKEND_TOKEN`.
    pub fn from_env() -> Result<Self, BackendError> {
        let url = std::env::var(URL_ENV)
            .map_err(|_| BackendError::Config(format!("{URL_ENV} is not set")))?;
        Ok(Self::new(url, std::env::var(TOKEN_ENV).ok()))
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_transport_retries(mut self, n: u32) -> Self {
        self.transport_retries = n;
        self
    }

    fn send(&self, prompt: &str) -> Result<String, ureq::Error> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let mut req = agent
            .post(&self.url)
            .header("Content-Type", "text/plain; charset=utf-8");
        if let Some(t) = &self.token {
            req = req.header("Authorization", format!("Bearer {t}"));
        }
        req.send(prompt)?.body_mut().read_to_string()
    }
}

impl CompletionBackend for RemoteBackend {
    fn complete(&self, prompt: &str) -> Result<String, BackendError> {
        let mut last = String::new();
        for _ in 0..=self.transport_retries {
            match self.send(prompt) {
                Ok(text) => return Ok(text),
                Err(e) => last = e.to_string(),
            }
        }
        Err(BackendError::Unavailable(last))
    }
}
