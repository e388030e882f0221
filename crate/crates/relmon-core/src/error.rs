use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{op}: size {size} exceeds the supported limit {limit}")]
    TooLarge { op: &'static str, size: usize, limit: usize },

    #[error("relation is not a partial order")]
    NotAnOrder,

    #[error("images do not form a permutation")]
    InvalidPermutation,

    #[error("permutation list is not a group")]
    NotAGroup,

    #[error("permutation does not preserve the order")]
    NotAnAutomorphism,

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("{what}: {divisor} does not divide the numerator")]
    InexactDivision { what: &'static str, divisor: u64 },

    #[error("inconsistent result: {0}")]
    Inconsistent(&'static str),

    #[error("lattice structure violated: {0}")]
    LatticeStructure(&'static str),
}
