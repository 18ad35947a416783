use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),

    #[error("characteristic {0} is not supported on this path")]
    UnsupportedCharacteristic(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    Range {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("no integral solution for the H-type system")]
    NonIntegralSolution,

    #[error("parity mismatch between d_(m(p-1)) and p^m")]
    Parity,

    #[error("degree {found} where {expected} was required")]
    Degree { expected: u32, found: u32 },

    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,

    #[error("group element moves variables other than x_1 and y_1")]
    OutsidePlane,

    #[error("functions belong to different (m, p, t) contexts")]
    ContextMismatch,

    #[error("{what} has size {size}, above the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::Range { what, value, lo, hi });
    }
    Ok(())
}
