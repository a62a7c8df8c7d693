use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid shape mismatch: expected {expected}x{expected} values for level {level}, got {rows}x{cols}")]
    Shape {
        level: u32,
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("grid value at {0:?} is not finite")]
    NonFinite(Vec<usize>),

    #[error("level {level} is too large (max {max})")]
    LevelTooLarge { level: u32, max: u32 },

    #[error("rectangle [{i0},{i1})x[{j0},{j1}) out of range for a {n}x{n} grid")]
    IndexOutOfRange {
        i0: usize,
        i1: usize,
        j0: usize,
        j1: usize,
        n: usize,
    },

    #[error("truncation level {requested} exceeds grid level {level}")]
    TruncationExceedsLevel { requested: u32, level: u32 },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error("function is not monotonically non-increasing in each variable")]
    NotMonotone,

    #[error("coefficient sequence is not non-increasing at n = {0}")]
    NonMonotoneCoefficients(usize),

    #[error("invalid sweep config: {0}")]
    Config(String),
}
