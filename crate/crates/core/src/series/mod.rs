//! Exact truncated power series over the rationals, and polynomials in
//! `L = log z` with such series as coefficients.

mod log;
mod truncated;

pub use log::{LogSeries, MAX_LOG_DEGREE};
pub use truncated::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("reversion needs a0 = 0 and a1 != 0")]
    NotReversible,
    #[error("exp needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("log needs constant term 1")]
    ConstantTermNotOne,
    #[error("inner series of a composition must have zero constant term")]
    InnerConstantTerm,
    #[error("log degree {0} exceeds the supported maximum {max}", max = MAX_LOG_DEGREE)]
    LogDegreeExceeded(usize),
    #[error("a log series needs at least one part")]
    NoParts,
}
