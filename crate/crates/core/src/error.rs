use thiserror::Error;

/// Errors produced by the axmul library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown full-adder kind `{0}`")]
    UnknownKind(String),

    #[error("invalid design name `{name}`: {reason}")]
    InvalidDesign { name: String, reason: String },

    #[error("unsupported compressor size {0} (expected 3..=8 inputs)")]
    UnsupportedCompressor(usize),

    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },

    #[error("width {width} is too large for {what}")]
    WidthTooLarge { width: u32, what: &'static str },

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),

    #[error("malformed catalog: {0}")]
    Catalog(String),

    #[error("metric `{metric}` is not available for `{name}`")]
    MissingMetric { name: String, metric: &'static str },

    #[error("baseline metric `{0}` must be positive")]
    ZeroBaseline(&'static str),

    #[error("fitness coefficient {0} outside [0, 1]")]
    CoefficientRange(f64),

    #[error("objective schemas differ")]
    SchemaMismatch,

    #[error("empty input")]
    EmptyInput,

    #[error("malformed PGM: {0}")]
    Pgm(String),

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
