//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("image dimensions {found_w}x{found_h} do not match expected {expected_w}x{expected_h}")]
    DimensionMismatch {
        expected_w: usize,
        expected_h: usize,
        found_w: usize,
        found_h: usize,
    },

    #[error("image dimensions must be at least {min_w}x{min_h}, got {w}x{h}")]
    ImageTooSmall {
        w: usize,
        h: usize,
        min_w: usize,
        min_h: usize,
    },

    #[error("sample buffer holds {got} values, {w}x{h} image needs {expected}")]
    SampleCountMismatch {
        w: usize,
        h: usize,
        expected: usize,
        got: usize,
    },

    #[error("sample at index {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error("rectangle {x0},{y0} {w}x{h} exceeds image bounds {img_w}x{img_h}")]
    RectOutOfBounds {
        x0: usize,
        y0: usize,
        w: usize,
        h: usize,
        img_w: usize,
        img_h: usize,
    },

    #[error("window side length must be at least 1")]
    ZeroWindow,

    #[error("need at least {needed} input images, got {got}")]
    TooFewImages { needed: usize, got: usize },

    #[error("cannot compute a statistic over an empty sample set")]
    EmptySamples,

    #[error("block grid was built for {grid_w}x{grid_h}, image is {img_w}x{img_h}")]
    GridMismatch {
        grid_w: usize,
        grid_h: usize,
        img_w: usize,
        img_h: usize,
    },

    #[error("blur sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),

    #[error("decomposition depth {levels} is out of range [1, {max}]")]
    InvalidLevels { levels: usize, max: usize },

    #[error("wavelet pyramid band dimensions are inconsistent at level {level}")]
    InconsistentPyramid { level: usize },

    #[error("every sliding window is degenerate (both images constant in all windows)")]
    AllWindowsDegenerate,

    #[error(transparent)]
    Pgm(#[from] PgmError),
}

/// Parse failures for the portable graymap codec. Every variant carries the
/// byte offset in the input stream where the problem was detected.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum PgmError {
    #[error("unknown magic number at byte {offset} (expected \"P2\" or \"P5\")")]
    BadMagic { offset: usize },

    #[error("non-numeric header token {token:?} at byte {offset}")]
    BadHeaderToken { token: String, offset: usize },

    #[error("unexpected end of header at byte {offset}")]
    TruncatedHeader { offset: usize },

    #[error("maxval {maxval} at byte {offset} is outside [1, 65535]")]
    BadMaxval { maxval: u64, offset: usize },

    #[error("header declares {w}x{h} image at byte {offset}; both dimensions must be at least 1")]
    BadDimensions { w: usize, h: usize, offset: usize },

    #[error("sample data truncated at byte {offset}: got {got} of {expected} samples")]
    TruncatedData {
        expected: usize,
        got: usize,
        offset: usize,
    },

    #[error("non-numeric sample token {token:?} at byte {offset}")]
    BadSampleToken { token: String, offset: usize },
}
