use thiserror::Error;

use crate::image2d::container::ContainerError;
use crate::imageio::fits::FitsError;
use crate::imageio::pgm::PgmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length must be even, got {0}")]
    OddLength(usize),

    #[error("signal length {len} is shorter than the filter ({taps} taps)")]
    TooShort { len: usize, taps: usize },

    #[error("channel lengths differ: approx {approx}, detail {detail}")]
    ChannelMismatch { approx: usize, detail: usize },

    #[error("level count must be at least 1")]
    ZeroLevels,

    #[error("{requested} levels are not feasible for size {size} with '{filter}'; maximum feasible is {max}")]
    TooManyLevels {
        requested: usize,
        max: usize,
        size: String,
        filter: String,
    },

    #[error("filter '{name}' is not orthonormal (residual {residual:e})")]
    NotOrthonormal { name: String, residual: f64 },

    #[error("filter '{name}' has invalid length {len}; must be even and at least 2")]
    FilterLength { name: String, len: usize },

    #[error("unknown filter '{0}'; valid names: haar, db4, haar-multi, db4-multi, ghm")]
    UnknownFilter(String),

    #[error("frequency grid needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("keep_levels {keep} is outside 1..={levels}")]
    KeepLevels { keep: usize, levels: usize },

    #[error("pyramid was built with '{found}' but '{expected}' was requested")]
    FilterMismatch { expected: String, found: String },

    #[error("pyramid layout mismatch: {0}")]
    Layout(String),

    #[error(transparent)]
    Fits(#[from] FitsError),

    #[error(transparent)]
    Pgm(#[from] PgmError),

    #[error(transparent)]
    Container(#[from] ContainerError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
