use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quaternionic dimension must be positive, got {0}")]
    InvalidDimension(i64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("normal vector is zero")]
    ZeroNormal,

    #[error("vector must be unit length, |v| = {norm}")]
    NotUnit { norm: f64 },

    #[error("vector is not tangent: |g(v, N)| = {normal_component}")]
    NotTangent { normal_component: f64 },

    #[error("vectors are not orthonormal (max Gram deviation {deviation})")]
    NotOrthonormal { deviation: f64 },

    #[error("parameter `{name}` = {value} outside domain {domain}")]
    ParameterDomain {
        name: &'static str,
        value: f64,
        domain: String,
    },

    #[error("frame configuration mismatch: {0}")]
    FrameConfiguration(String),

    #[error("quaternionic slot search failed after {restarts} restarts, best residual {best_residual:e}")]
    SlotSearch { restarts: usize, best_residual: f64 },

    #[error("eigenspace {label} has dimension {actual}, expected {expected}")]
    EigenspaceDimension {
        label: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("degenerate mixing: {0}")]
    DegenerateMixing(String),

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("failed to write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("report serialization: {0}")]
    Serialization(#[from] serde_json::Error),
}
