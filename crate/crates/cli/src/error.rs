use std::fmt;
use std::process::ExitCode;

use knotcord::chords::ChordError;
use knotcord::cord_algebra::CordError;
use knotcord::group_ring::RingError;
use knotcord::presentations::PresentationError;
use knotcord::rewriting::RewriteError;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Config(String),
    Undecided(String),
    Numerical(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) | CliError::Config(_) => 2,
            CliError::Undecided(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Invariant(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Io(m) => ("i/o error", m),
            CliError::Parse(m) => ("parse error", m),
            CliError::Config(m) => ("invalid configuration", m),
            CliError::Undecided(m) => ("undecided", m),
            CliError::Numerical(m) => ("numerical failure", m),
            CliError::Invariant(m) => ("invariant violation", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::Undecided => CliError::Undecided(e.to_string()),
            RewriteError::Budget(_) | RewriteError::NotCoprime { .. } | RewriteError::BadTorusMap(_) | RewriteError::NotAbelian(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Rewrite(r) => r.into(),
            RingError::Presentation(p) => p.into(),
            RingError::NotSeifert { .. } => CliError::Config(e.to_string()),
            RingError::BackendMismatch => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<CordError> for CliError {
    fn from(e: CordError) -> Self {
        match e {
            CordError::Parse { .. } | CordError::Style { .. } => CliError::Parse(e.to_string()),
            CordError::NotSeifert { .. } => CliError::Config(e.to_string()),
            CordError::Ring(r) => r.into(),
            CordError::Malformed(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<ChordError> for CliError {
    fn from(e: ChordError) -> Self {
        match e {
            ChordError::Parse(_) => CliError::Parse(e.to_string()),
            ChordError::Config(_) => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
