use polystring_core::census::CensusError;
use polystring_core::constructions::ConstructionError;
use polystring_core::cstring::CStringError;
use polystring_core::engine::EngineError;
use polystring_core::ff::FieldError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
    #[error("invalid group file: {0}")]
    GroupFile(String),
    #[error("cap `{cap}` exceeded by {what} ({size} > {limit}); raise it with POLYSTRING_CAPS={cap}=N")]
    Cap {
        cap: &'static str,
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("{what} exceeds a fixed internal limit ({size} > {limit})")]
    FixedLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("group order could not be certified; give an upper bound with the `order` field")]
    Uncertified,
    #[error("time budget exhausted after {explored} of {total} subtrees{}", checkpoint_note(.checkpoint))]
    Budget {
        explored: usize,
        total: usize,
        checkpoint: Option<String>,
    },
    #[error("{0}")]
    Core(String),
}

fn checkpoint_note(path: &Option<String>) -> String {
    match path {
        Some(p) => format!("; checkpoint written to {p}"),
        None => String::new(),
    }
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

/// The `POLYSTRING_CAPS` key that governs an engine limit, when one does.
fn cap_key(what: &str) -> Option<&'static str> {
    Some(match what {
        "census" => "census",
        "intersection enumeration" => "intersection",
        "element enumeration" => "classes",
        "chamber graph" | "Cayley graph search" => "bfs",
        "chamber graph export" => "export",
        _ => return None,
    })
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::CapExceeded { what, size, cap } => match cap_key(what) {
                Some(key) => CliError::Cap {
                    cap: key,
                    what,
                    size,
                    limit: cap,
                },
                None => CliError::FixedLimit {
                    what,
                    size,
                    limit: cap,
                },
            },
            EngineError::Uncertified => CliError::Uncertified,
            other => CliError::Core(other.to_string()),
        }
    }
}

impl From<CStringError> for CliError {
    fn from(e: CStringError) -> Self {
        match e {
            CStringError::Engine(e) => e.into(),
            other => CliError::Core(other.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Engine(e) => e.into(),
            CensusError::CString(e) => e.into(),
            CensusError::Uncertified => CliError::Uncertified,
            other => CliError::Core(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Engine(e) => e.into(),
            ConstructionError::CString(e) => e.into(),
            other => CliError::Core(other.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::GroupFile(e.to_string())
    }
}
