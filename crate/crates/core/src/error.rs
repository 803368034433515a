use chrono::NaiveDate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors returned by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A CSV cell or header could not be parsed.
    #[error("format error at line {line}: {msg}")]
    Format { line: u64, msg: String },
    /// The same date appears twice with different values.
    #[error("duplicate date {date} with conflicting values")]
    Duplicate { date: NaiveDate },
    /// A value lies outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation received no usable input.
    #[error("empty input: {0}")]
    EmptyInput(String),
    /// No present observation precedes the forecast origin.
    #[error("insufficient history: {0}")]
    InsufficientHistory(String),
    /// A likelihood or filter produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Model estimation failed.
    #[error("fit error: {msg} (best loglik {best_loglik:.6}, {iterations} iterations)")]
    Fit {
        msg: String,
        best_loglik: f64,
        iterations: usize,
    },
    /// The data do not satisfy a model's requirements.
    #[error("data error: {0}")]
    Data(String),
    /// Every candidate in an order search failed.
    #[error("order selection failed: {0}")]
    Selection(String),
    /// A feature row does not match the training schema.
    #[error("schema error: expected {expected} features, got {got}")]
    Schema { expected: usize, got: usize },
    /// A date lies outside the series range.
    #[error("range error: {0}")]
    Range(String),
    /// No fold survives planning.
    #[error("plan error: {0}")]
    Plan(String),
    /// A standardizing transform was fitted on constant data.
    #[error("degenerate scale: training data have zero variance")]
    DegenerateScale,
    /// Persistence is perfect while the model is not.
    #[error("skill undefined: persistence error is zero but model error is {0}")]
    UndefinedSkill(f64),
    /// Malformed or inconsistent input records.
    #[error("input error: {0}")]
    Input(String),
    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Runs cannot be compared.
    #[error("incompatible runs: {0}")]
    Incompatible(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Fit { .. } | Error::Selection(_) | Error::Numeric(_) => 4,
            Error::Incompatible(_) => 5,
            _ => 3,
        }
    }

    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Format { .. } => "format",
            Error::Duplicate { .. } => "duplicate",
            Error::Domain(_) => "domain",
            Error::EmptyInput(_) => "empty_input",
            Error::InsufficientHistory(_) => "insufficient_history",
            Error::Numeric(_) => "numeric",
            Error::Fit { .. } => "fit",
            Error::Data(_) => "data",
            Error::Selection(_) => "selection",
            Error::Schema { .. } => "schema",
            Error::Range(_) => "range",
            Error::Plan(_) => "plan",
            Error::DegenerateScale => "degenerate_scale",
            Error::UndefinedSkill(_) => "undefined_skill",
            Error::Input(_) => "input",
            Error::Config(_) => "config",
            Error::Incompatible(_) => "incompatible",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}
