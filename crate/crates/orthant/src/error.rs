use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("row {row}, column {col}: {message}")]
    Parse { row: usize, col: usize, message: String },

    #[error("response column {0:?} not found")]
    MissingColumn(String),

    #[error("{0}")]
    Shape(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Core(#[from] orthant_core::Error),
}

impl Error {
    /// 1 for usage errors, 2 for bad or unreadable data, 3 when the
    /// numerical solver gives up.
    pub fn exit_code(&self) -> u8 {
        use orthant_core::Error as E;
        match self {
            Error::Usage(_) => 1,
            Error::Io { .. } | Error::Parse { .. } | Error::MissingColumn(_) | Error::Shape(_) | Error::Csv(_) => 2,
            Error::Core(e) => match e {
                E::InvalidAlpha(_) | E::InvalidParameter(_) | E::InvalidSign(_) | E::DimensionCap { .. } => 1,
                E::DimensionMismatch { .. } | E::RankDeficient { .. } | E::ZeroOlsCoefficient { .. } | E::EmptyData => {
                    2
                }
                E::SingularSubmatrix | E::NoValidCandidate { .. } | E::ConvergenceFailure { .. } => 3,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
