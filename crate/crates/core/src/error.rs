use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {0}: must be at least 1")]
    InvalidOrder(i64),
    #[error("invalid frequency {0}: must be positive and finite")]
    InvalidFrequency(f64),
    #[error("invalid ripple {0} dB: must be positive")]
    InvalidRipple(f64),
    #[error("invalid elliptic modulus {0}: must lie in [0, 1)")]
    InvalidModulus(f64),
    #[error("complete elliptic integral diverges for modulus {0} >= 1")]
    DivergentIntegral(f64),
    #[error("invalid selectivity {0}: must exceed 1")]
    InvalidSelectivity(f64),
    #[error("infeasible specification: {0}")]
    Infeasible(String),
    #[error("frequency {frequency} Hz outside the open band (0, {nyquist}) Hz")]
    OutOfBand { frequency: f64, nyquist: f64 },
    #[error("invalid band edges: {0}")]
    InvalidEdges(String),
    #[error("bilinear map is singular at s = {0}")]
    MappingSingularity(f64),
    #[error("roots are not conjugate symmetric: {0}")]
    ConjugateSymmetry(String),
    #[error("filter state has {actual} registers, cascade needs {expected}")]
    StateShape { expected: usize, actual: usize },
    #[error("invalid response kind: {0}")]
    InvalidKind(String),
    #[error("invalid transform size {0}: must be a power of two")]
    InvalidSize(usize),
    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt file: {0}")]
    CorruptFile(String),
    #[error("invalid filter file: {0}")]
    InvalidFilterFile(String),
    #[error("sample rate mismatch: coefficients are for {coefficients} Hz, input is {input} Hz")]
    SampleRateMismatch { coefficients: f64, input: f64 },
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
