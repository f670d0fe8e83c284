use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("PGM parse error at byte {offset}: {reason}")]
    Pgm { offset: usize, reason: String },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("pixel ({x}, {y}) outside {width}x{height} image")]
    OutOfBounds {
        x: i64,
        y: i64,
        width: usize,
        height: usize,
    },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),

    #[error("invalid analog parameters: {0}")]
    InvalidParams(String),

    #[error("threshold {theta} cannot be calibrated; feasible range is ({min}, {max})")]
    Calibration { theta: f64, min: f64, max: f64 },

    #[error("shift register overflow: all {0} cells already filled")]
    RegisterOverflow(usize),

    #[error("invalid similarity mask: {0}")]
    InvalidMask(String),

    #[error("averaging circuit has no active branch")]
    DegenerateMask,

    #[error("corpus {0} contains no readable grayscale images")]
    EmptyCorpus(String),

    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
