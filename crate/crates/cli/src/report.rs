//! JSON reports and the exit-code convention.

use std::process::ExitCode;

use orient_core::normalizer::NormalizeError;
use orient_core::reductions::{CnfError, ReductionError};
use orient_core::{GraphError, OrientationError, SolveError, TreeError};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// The question had a negative answer.
    Negative = 1,
    InputError = 2,
    SizeCap = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

/// What a subcommand hands back before it is wrapped into a [`Report`].
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub witness: Option<String>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { status: Status::Success, result, witness: None, diagnostics: Vec::new() }
    }

    pub fn negative(result: Value) -> Self {
        Outcome { status: Status::Negative, ..Outcome::ok(result) }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: Status::InputError, message: message.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::SizeCap { .. } | SolveError::ValueRange(_) => Status::SizeCap,
            SolveError::Alphabet(_) | SolveError::Internal(_) => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Solve(inner) => inner.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::input(e.to_string())
            }
        }
    )*};
}

input_errors!(GraphError, OrientationError, TreeError, NormalizeError, CnfError, std::io::Error);
