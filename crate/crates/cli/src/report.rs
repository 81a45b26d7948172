use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Self { code: EXIT_CAP, message: message.into() }
    }
}

/// Result of one command: exit code, text rendering and JSON payload.
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub results: Value,
    pub dot: Option<String>,
}

impl Outcome {
    pub fn new(text: impl Into<String>, results: Value) -> Self {
        Self { code: 0, text: text.into(), results, dot: None }
    }

    pub fn holds(mut self, ok: bool) -> Self {
        self.code = if ok { 0 } else { EXIT_FAILS };
        self
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema_version: u32,
    version: &'static str,
    command: &'a [String],
    inputs_digest: String,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
    results: &'a Value,
}

pub struct Session {
    command: Vec<String>,
    hasher: Sha256,
    pub threads: usize,
    dot: Option<String>,
    timing: bool,
    start: Instant,
}

impl Session {
    /// The command echo leaves out options that cannot change the results.
    pub fn new(args: Vec<String>, threads: usize, dot: Option<String>, timing: bool) -> Self {
        let mut command = Vec::new();
        let mut skip = false;
        for a in args {
            if std::mem::take(&mut skip) {
                continue;
            }
            match a.as_str() {
                "--threads" => skip = true,
                "--timing" => {}
                _ if a.starts_with("--threads=") => {}
                _ => command.push(a),
            }
        }
        let mut hasher = Sha256::new();
        for a in &command {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Self { command, hasher, threads, dot, timing, start: Instant::now() }
    }

    /// Reads an input file and folds its bytes into the inputs digest.
    pub fn read(&mut self, path: &str) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    pub fn finish(self, out: &Outcome, json: bool) -> Result<(), CliError> {
        if let Some(path) = &self.dot {
            let dot = out.dot.as_ref().ok_or_else(|| CliError::input("--dot is not supported by this command"))?;
            std::fs::write(path, dot).map_err(|e| CliError::input(format!("cannot write {path}: {e}")))?;
        }
        if json {
            let digest: String = self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
            let report = RunReport {
                schema_version: SCHEMA_VERSION,
                version: env!("CARGO_PKG_VERSION"),
                command: &self.command,
                inputs_digest: digest,
                exit_code: out.code,
                timing_ms: self.timing.then(|| self.start.elapsed().as_millis()),
                results: &out.results,
            };
            emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            emit(out.text.trim_end());
        }
        Ok(())
    }
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    if text.is_empty() {
        return;
    }
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}").and_then(|_| stdout.flush());
}
