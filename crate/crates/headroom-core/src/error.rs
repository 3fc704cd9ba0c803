use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the crate. `Data` variants indicate unusable input
/// records or files; `Range` variants indicate queries outside what the
/// model or a table can answer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("timestamps not strictly increasing at line {line}")]
    NonMonotonic { line: usize },

    #[error("gap of {missing} missing 5-minute slots between {start} and {end} exceeds the {max} slot limit")]
    GapTooLong {
        start: String,
        end: String,
        missing: usize,
        max: usize,
    },

    #[error("need at least {need} records with 5-minute cadence, got {got}")]
    ShortYear { got: usize, need: usize },

    #[error("{series} trace has zero mean; cannot normalize")]
    ZeroMean { series: &'static str },

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    #[error("week {week} out of range 1..=52")]
    WeekOutOfRange { week: usize },

    #[error("target {target} outside achievable range [{lo}, {hi}]")]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },

    #[error("degenerate straddle: both ends carry the same value {value}")]
    DegenerateStraddle { value: f64 },

    #[error("{axis} = {value} outside grid range [{lo}, {hi}]")]
    OutOfGrid {
        axis: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("table section missing: {0}")]
    MissingSection(&'static str),

    #[error("empty series")]
    EmptySeries,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }

    /// True for errors caused by unusable input data (as opposed to
    /// out-of-range queries against valid data).
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::NonMonotonic { .. }
                | Error::GapTooLong { .. }
                | Error::ShortYear { .. }
                | Error::ZeroMean { .. }
                | Error::MissingSection(_)
                | Error::Io(_)
        )
    }
}
