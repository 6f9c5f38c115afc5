use alloc::string::String;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameters violate an operation's precondition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A count or frequency left the 64-bit range.
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    /// `p` was expected to be prime.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// `q` was expected to be a prime power.
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    /// The instance is beyond the supported desk scale.
    #[error("size exceeded: {0}")]
    SizeExceeded(String),
    /// An enumeration would exceed its work bound.
    #[error("too large: {0}")]
    TooLarge(String),
    /// A frequency prescription cannot be filled into blocks.
    #[error("invalid prescription: {0}")]
    Prescription(String),
    /// Broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
    /// The thinning probability is outside the asymptotic regime.
    #[error("outside the asymptotic regime (raw p = {raw_p})")]
    Regime {
        /// The value the formula produced.
        raw_p: f64,
    },
    /// The randomized construction never produced an adesign.
    #[error("no adesign found after {attempts} attempts")]
    RetriesExhausted {
        /// Number of attempts made.
        attempts: u32,
    },
    /// A PBD block is not larger than the adesign block size.
    #[error("PBD block of size {0} is too small")]
    BlockTooSmall(usize),
    /// A search ran out of nodes before deciding.
    #[error("budget exhausted after {nodes} nodes (proved lower bound {lower}, best known {best_known:?})")]
    BudgetExhausted {
        /// Nodes explored.
        nodes: u64,
        /// Every value below this was proved infeasible.
        lower: u64,
        /// Best feasible value known from constructions, if any.
        best_known: Option<u64>,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
