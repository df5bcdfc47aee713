//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by callers (the CLI in particular) to map
/// failures onto stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad flags, bad config files, malformed inputs under the caller's control.
    Usage,
    /// Missing or undecodable data, I/O failures.
    Data,
    /// Numeric failure (divergent training, non-finite values).
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("filename does not match the expected grammar: {name}")]
    MalformedFilename { name: String },
    #[error("dataset root missing or contains no class directories: {path}")]
    MissingRoot { path: PathBuf },
    #[error("dataset contains no decodable images")]
    EmptyDataset,
    #[error("i/o failure at {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("image decode failure at {path}: {source}")]
    ImageDecode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("class {class} has only {count} samples, need at least {min}")]
    ClassTooSmall {
        class: usize,
        count: usize,
        min: usize,
    },
    #[error("unsupported channel count: {channels} (expected 1 or 3)")]
    UnsupportedChannelCount { channels: u8 },
    #[error("kernel size {ksize} exceeds image dimensions {width}x{height}")]
    KernelLargerThanImage {
        ksize: usize,
        width: usize,
        height: usize,
    },
    #[error("image {width}x{height} too small, need at least {min}x{min}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {msg}")]
    ShapeMismatch { msg: String },
    #[error("spatial dimensions must be even for 2x2 pooling: {width}x{height}")]
    OddSpatialDim { width: usize, height: usize },
    #[error("non-finite loss at epoch {epoch}: {loss}")]
    NonFiniteLoss { epoch: usize, loss: f64 },
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("length mismatch: {left} labels vs {right} predictions")]
    LengthMismatch { left: usize, right: usize },
    #[error("label {label} out of range 0..{num_classes}")]
    LabelOutOfRange { label: usize, num_classes: usize },
    #[error("evaluation over zero samples")]
    EmptyEvaluation,
    #[error("unknown experiment id: {id}")]
    UnknownExperiment { id: String },
    #[error("invalid config: {msg}")]
    ConfigInvalid { msg: String },
    #[error("need at least 2 reports to compare, got {got}")]
    TooFewReports { got: usize },
    #[error("report schema error: {msg}")]
    SchemaError { msg: String },
}

impl Error {
    /// Which exit-code class this failure belongs to.
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            MalformedFilename { .. }
            | ClassTooSmall { .. }
            | UnsupportedChannelCount { .. }
            | KernelLargerThanImage { .. }
            | ImageTooSmall { .. }
            | DimensionMismatch { .. }
            | ShapeMismatch { .. }
            | OddSpatialDim { .. }
            | LengthMismatch { .. }
            | LabelOutOfRange { .. }
            | EmptyEvaluation
            | EmptyTrainingSet
            | UnknownExperiment { .. }
            | ConfigInvalid { .. }
            | TooFewReports { .. }
            | SchemaError { .. } => ErrorClass::Usage,
            MissingRoot { .. } | EmptyDataset | IoFailure { .. } | ImageDecode { .. } => {
                ErrorClass::Data
            }
            NonFiniteLoss { .. } => ErrorClass::Numeric,
        }
    }
}
