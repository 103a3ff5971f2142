use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::fuzzy::TermRole;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage an error was raised in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Load,
    Weights,
    Fuzzification,
    Membership,
    Reliability,
    Integration,
    LinguisticAggregation,
    Weighting,
    Ranking,
    Sensitivity,
    Report,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Load => "load",
            Stage::Weights => "weights",
            Stage::Fuzzification => "fuzzification",
            Stage::Membership => "membership",
            Stage::Reliability => "reliability",
            Stage::Integration => "integration",
            Stage::LinguisticAggregation => "linguistic-aggregation",
            Stage::Weighting => "weighting",
            Stage::Ranking => "ranking",
            Stage::Sensitivity => "sensitivity",
            Stage::Report => "report",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {role} term `{token}`")]
    Lexicon { token: String, role: TermRole },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("invalid result: {0}")]
    InvalidResult(String),

    #[error("degenerate frame: all {count} values equal {value}")]
    DegenerateFrame { value: f64, count: usize },

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("membership vector has no support in any class")]
    NoSupport,

    #[error("decision maker {dm} has degenerate importance (a + c = 0)")]
    DegenerateImportance { dm: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("cannot normalize criterion {criterion}: {reason}")]
    Normalization { criterion: String, reason: String },

    #[error("degenerate ranking: {0}")]
    DegenerateRanking(String),

    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("[stage {stage}] {entity}: {source}")]
    Stage {
        stage: Stage,
        entity: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, stage: Stage, entity: impl Into<String>) -> Self {
        Error::Stage {
            stage,
            entity: entity.into(),
            source: Box::new(self),
        }
    }

    /// Stage of the outermost stage wrapper, if any.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// Innermost error, with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub(crate) trait StageExt<T> {
    fn at(self, stage: Stage, entity: impl Into<String>) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn at(self, stage: Stage, entity: impl Into<String>) -> Result<T> {
        self.map_err(|e| e.at(stage, entity))
    }
}
