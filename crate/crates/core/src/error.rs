use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant is a precondition failure of some operation; the CLI maps
/// them to exit code 1, except [`Error::BudgetExceeded`] which maps to 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element {element} for group [{group}]: {reason}")]
    InvalidElement {
        element: String,
        group: String,
        reason: String,
    },

    #[error("subsets live in different groups: [{left}] vs [{right}]")]
    GroupMismatch { left: String, right: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("refused: search needs an estimated {estimate} nodes, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("exhaustive and branch-and-bound searches disagree on [{group}], r={r}: {exhaustive} vs {pruned}")]
    OracleDisagreement {
        group: String,
        r: usize,
        exhaustive: usize,
        pruned: usize,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
