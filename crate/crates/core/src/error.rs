use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("field shape {got} does not match axes {expected}")]
    ShapeMismatch { expected: String, got: String },

    #[error("field contains a non-finite value at index {0}")]
    NonFinite(usize),

    #[error("invalid smoothing widths: {0}")]
    InvalidWidths(String),

    #[error("smoothing kernel too wide: sigma {sigma} exceeds grid span {span}")]
    KernelTooWide { sigma: f64, span: f64 },

    #[error("total mass of the field is zero; moments are undefined")]
    ZeroMass,

    #[error("wave function does not decay at the axis edges (edge/max = {ratio:.3e})")]
    NotDecayed { ratio: f64 },

    #[error("frequency axis reaches {max:.6}, beyond the lag-sampling bound {bound:.6}")]
    Aliasing { max: f64, bound: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("propagation aborted at t = {time:.4}: {reason}")]
    PropagationAborted { time: f64, reason: String },

    #[error("malformed data: {0}")]
    Format(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Io(_) | Error::Json(_) | Error::Format(_) => 1,
            _ => 3,
        }
    }
}
