use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: invalid input (a bad spec, an index
/// out of range, a shape mismatch) and numerical failure (non-finite values
/// or a solver that did not produce a usable answer). The CLI maps the first
/// family to exit code 2 and the second to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cannot parse distribution spec `{spec}`: {reason}")]
    DistSpec { spec: String, reason: String },

    #[error("index {index} out of range (limit {limit}) for {what}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("shift ({s}, {k}) exceeds field padding ({row_pad}, {col_pad})")]
    ShiftExceedsPadding {
        s: i64,
        k: i64,
        row_pad: usize,
        col_pad: usize,
    },

    #[error("field of {rows} x {cols} entries overflows usize")]
    SizeOverflow { rows: usize, cols: usize },

    #[error("input sample is not sorted ascending")]
    Unsorted,

    #[error("empty input for {0}")]
    Empty(&'static str),

    #[error("perturbation bound is vacuous: gap {gap:e} <= residual {residual:e}")]
    VacuousBound { gap: f64, residual: f64 },

    #[error("untruncated moment of order {exponent} diverges for tail index {alpha}")]
    DivergentMoment { exponent: f64, alpha: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("replication {replication} failed: {source}")]
    Replication {
        replication: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics rather than of the request.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite(_) | Error::VacuousBound { .. } => true,
            Error::Replication { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            3
        } else {
            2
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
