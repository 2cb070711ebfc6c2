use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or incomplete input; exit status 2.
    Config(String),
    /// A computation failed; exit status 1.
    Compute(String),
    /// One or more verification checks failed; exit status 1.
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
            CliError::Verification(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<diracwell::Error> for CliError {
    fn from(e: diracwell::Error) -> Self {
        use diracwell::Error::*;
        match e {
            InvalidPotential(_) | InvalidField(_) | InvalidGrid(_) | InvalidLevel(_)
            | UnsupportedRegime { .. } => CliError::Config(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}
