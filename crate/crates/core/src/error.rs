use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse group spec at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("element {0} does not belong to the group")]
    NotAnElement(String),

    #[error("group ring element is not integral")]
    NotIntegral,

    #[error("coefficient does not fit into a machine integer")]
    Overflow,

    #[error("the lattice of the trivial group is empty")]
    EmptyLattice,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no basis of minimal vectors exists for {0} (only four vectors of minimal length)")]
    NoMinimalBasis(String),

    #[error("the lattice of {0} is not eutactic: its minimal vectors span a proper subspace")]
    NotEutactic(String),

    #[error("vector is not a member of the lattice")]
    NotMember,

    #[error("candidate has non-integral coordinates in the reference basis")]
    NonIntegralSolution,

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
