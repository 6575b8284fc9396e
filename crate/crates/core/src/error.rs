use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts sum to {sum}, expected {n}")]
    PartsSumMismatch { n: u64, sum: u64 },

    #[error("no lattice path of length {n} ends at height {d}")]
    InfeasibleEndpoint { n: u64, d: i64 },

    #[error("{what} requires n >= {min}, got {n}")]
    SizeTooSmall {
        what: &'static str,
        n: u64,
        min: u64,
    },

    #[error("{what} supports n <= {max}, got {n}")]
    SizeTooLarge {
        what: &'static str,
        n: u64,
        max: u64,
    },

    #[error("prefix with {small} small / {large} large exceeds oracle totals ({total_small}, {total_large})")]
    PrefixExceedsTotals {
        small: usize,
        large: usize,
        total_small: usize,
        total_large: usize,
    },

    #[error("strategy has no decision for prefix `{0}`")]
    PartialStrategy(String),

    #[error("cannot parse class symbol {0:?}")]
    BadSymbol(char),
}
