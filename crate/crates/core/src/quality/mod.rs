//! Quality rates, the sparse quality matrix and the submodular objective.

mod io;
mod matrix;
mod objective;
mod rate;

use thiserror::Error;

pub use io::{read_quality_matrix, write_quality_matrix, QUALITY_MAGIC};
pub use matrix::{build_quality_matrix, BuildStats, QualityMatrix, MIN_STORED_RATE};
pub use objective::{total_quality, ObjectiveState};
pub use rate::{quality_rate, QualityRateFunction};

#[derive(Debug, Error)]
pub enum QualityError {
    #[error("entry ({row}, {col}) lies outside the matrix")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("entry ({row}, {col}) appears twice")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) has invalid rate {value}")]
    InvalidValue { row: usize, col: usize, value: f64 },
    #[error("{0} model points exceed the supported row count")]
    TooManyRows(usize),
    #[error("corrupt quality matrix file {0}")]
    CorruptFile(String),
}
