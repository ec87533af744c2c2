use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// `Input` covers malformed or contract-violating arguments. `Capability`
/// means the inputs are well formed but the requested method does not apply
/// to them (for example, enumerating on a lattice whose height slices are not
/// negative definite).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("capability error: {0}")]
    Capability(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
