use std::fmt;
use std::io;

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numfac(numfac::Error),
    Io(io::Error),
    /// `verify` or `bench` found a failing property.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use numfac::Error as E;
        match self {
            CliError::Numfac(E::EmptyGenerators | E::ZeroGenerator | E::NonCoprime { .. }) => 2,
            CliError::Numfac(E::Overflow { .. }) => 3,
            CliError::Numfac(E::NotInMonoid(_)) => 4,
            CliError::Failed(_) => 5,
            CliError::Usage(_) | CliError::Numfac(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Failed(msg) => f.write_str(msg),
            CliError::Numfac(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<numfac::Error> for CliError {
    fn from(e: numfac::Error) -> Self {
        CliError::Numfac(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}
