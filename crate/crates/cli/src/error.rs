use std::fmt;
use std::process::ExitCode;

/// Failure reported to the user as one `prefix: message` line.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Validate(String),
    Numerical(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Numerical(_) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prefix, msg) = match self {
            CliError::Config(m) => ("config", m),
            CliError::Io(m) => ("io", m),
            CliError::Validate(m) => ("validate", m),
            CliError::Numerical(m) => ("numerical", m),
        };
        let one_line = msg.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "{prefix}: {one_line}")
    }
}

impl From<invsim::Error> for CliError {
    fn from(e: invsim::Error) -> Self {
        use invsim::Error as E;
        let msg = e.to_string();
        match e {
            E::Domain(_) | E::Config(_) => CliError::Config(msg),
            E::Parse { .. } | E::Validation { .. } => CliError::Validate(msg),
            E::Numerical(_) => CliError::Numerical(msg),
            E::Io(_) => CliError::Io(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(format!("invalid JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
