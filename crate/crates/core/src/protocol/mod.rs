//! Fold planning, train-only preprocessing and the protocol runner.

mod folds;
mod preproc;
mod records;
mod runner;

pub use folds::{count_valid_origins, rolling_folds, static_split, DroppedFold, FoldPlan, FoldSpec, DEFAULT_MIN_TEST};
pub use preproc::{fit_preprocessor, PreprocKind, PreprocSpec};
pub use records::{
    read_records, read_records_file, write_records, write_records_file, FoldFailure, ForecastRecord,
    ForecastRecordSet, RunProvenance, SkipCounts, RECORD_COLUMNS,
};
pub use runner::run_protocol;
