//! Error type shared by every analysis stage.

use crate::series::MonthStamp;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("no daily records in month {0}")]
    GapMonth(MonthStamp),
    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },
    #[error("line {line}: {message}")]
    DailyRecord { line: usize, message: String },
    #[error("invalid month stamp {0:?} (expected YYYY-MM)")]
    InvalidMonth(String),
    #[error("invalid window: {from} is after {to}")]
    InvalidWindow { from: MonthStamp, to: MonthStamp },
    #[error("window {from}..{to} does not overlap the series")]
    EmptyWindow { from: MonthStamp, to: MonthStamp },
    #[error("paired sequences differ in length ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("series overlap has {found} observed months, need at least 3")]
    InsufficientOverlap { found: usize },
    #[error("interior missing value at {0}; only leading/trailing gaps are allowed")]
    InteriorGap(MonthStamp),
    #[error("series has {len} values, need at least {required}")]
    SeriesTooShort { len: usize, required: usize },
    #[error("unexpected missing value at {0}")]
    UnexpectedMissing(MonthStamp),
    #[error("no detrended observations for calendar month {0}")]
    IncompleteCycle(u32),
    #[error("input sequence has zero variance")]
    ZeroVariance,
    #[error("degrees of freedom must be at least 1, got {0}")]
    InvalidDf(u64),
    #[error("incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")]
    NonConvergence { a: f64, b: f64, x: f64 },
    #[error("max lag {max_lag} needs at least {} paired observations, have {n}", max_lag + 3)]
    LagExceedsData { max_lag: usize, n: usize },
    #[error("need at least 3 training pairs, have {0}")]
    InsufficientData(usize),
    #[error("predictor has no value for {0}")]
    MissingPredictor(MonthStamp),
    #[error("actual value is zero at {0}; percent error undefined")]
    DivisionByZero(MonthStamp),
    #[error("models were fit on different windows or with non-swapped roles")]
    WindowMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
