//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by laminate construction, the convexity builder, the
/// counterexample machinery and file IO.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate interval ({lo}, {hi}): lower end must be strictly below upper end")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("invariant violated in `{field}` at index {index}: {reason}")]
    InvariantViolation {
        field: &'static str,
        index: usize,
        reason: String,
    },

    #[error("mixing weight {0} is outside its admissible range")]
    AlphaOutOfRange(f64),

    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("residue j = {j} must lie in [1, {}]", q - 1)]
    JOutOfRange { j: i64, q: i64 },

    #[error("function is undefined at x = {x}")]
    UndefinedAtBreakpoint { x: f64 },

    #[error("no index found in ({lo}, {hi}) for n in [{n_min}, {cap})")]
    SearchCapExceeded {
        lo: f64,
        hi: f64,
        n_min: u64,
        cap: u64,
    },

    #[error("point {0} lies outside the open interval (-1, 1)")]
    OutOfDomain(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateInterval { .. } => "degenerate_interval",
            Error::InvariantViolation { .. } => "invariant_violation",
            Error::AlphaOutOfRange(_) => "alpha_out_of_range",
            Error::NotCoprime { .. } => "not_coprime",
            Error::JOutOfRange { .. } => "j_out_of_range",
            Error::UndefinedAtBreakpoint { .. } => "undefined_at_breakpoint",
            Error::SearchCapExceeded { .. } => "search_cap_exceeded",
            Error::OutOfDomain(_) => "out_of_domain",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse_error",
            Error::Io(_) => "io_error",
        }
    }

    /// Process exit status: 2 for usage, parse and IO problems, 3 for
    /// numeric-domain errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvariantViolation { .. }
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
