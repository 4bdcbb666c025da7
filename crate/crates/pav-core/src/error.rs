//! The shared error type for the workspace.
//!
//! Every crate in the workspace reports failures through this enum so the
//! command-line front end can map error classes to exit codes uniformly:
//! invalid input → 2, resource guard → 3, certification failure → 1.

use thiserror::Error;

/// Workspace-wide error classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller supplied arguments outside an operation's domain
    /// (duplicate entries, indices out of range, parameters violating a
    /// precondition, malformed text input, …).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation would exceed a resource guard (enumeration size,
    /// materialization limit).  Guards fail loudly instead of exhausting
    /// memory or CPU; most can be raised explicitly by the caller.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// The operation is only defined (or only claimed) on a restricted
    /// parameter range that excludes the request.
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    /// A verification suite ran to completion and found a certified claim
    /// violated.  Reserved for the verification layer.
    #[error("certification failure: {0}")]
    CertificationFailure(String),
}

impl Error {
    /// Build an [`Error::InvalidInput`] from anything displayable.
    pub fn invalid(msg: impl std::fmt::Display) -> Self {
        Error::InvalidInput(msg.to_string())
    }

    /// Build an [`Error::ResourceLimit`] from anything displayable.
    pub fn resource(msg: impl std::fmt::Display) -> Self {
        Error::ResourceLimit(msg.to_string())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::UnsupportedRange(_) => 2,
            Error::ResourceLimit(_) => 3,
            Error::CertificationFailure(_) => 1,
        }
    }
}
