use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown key `{key}` for command `{command}`")]
    UnknownKey { key: String, command: String },
    #[error("key `{key}`: `{value}` is not a valid number")]
    MalformedNumber { key: String, value: String },
    #[error("key `{key}`: `{value}` is not one of {allowed}")]
    InvalidChoice { key: String, value: String, allowed: String },
    #[error("command `{command}` needs key `{key}`")]
    MissingKey { key: String, command: String },
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot sweep `{0}`: not a numeric parameter of this command")]
    NotSweepable(String),
    #[error("{0}")]
    Model(#[from] edeco::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::UnknownKey { .. } => "unknown_key",
            CliError::MalformedNumber { .. } => "malformed_number",
            CliError::InvalidChoice { .. } => "invalid_choice",
            CliError::MissingKey { .. } => "missing_key",
            CliError::Syntax { .. } => "config_syntax",
            CliError::Usage(_) => "usage",
            CliError::NotSweepable(_) => "not_sweepable",
            CliError::Model(_) => "model",
            CliError::Io { .. } => "io",
            CliError::Output(_) => "output",
        }
    }

    /// Process exit status: 2 for bad input, 1 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(_) | CliError::Io { .. } | CliError::Output(_) => 1,
            _ => 2,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
