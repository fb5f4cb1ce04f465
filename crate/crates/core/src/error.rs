use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("not Hermitian (max |a_ij - conj(a_ji)| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("trace is not 1 (|Tr - 1| = {residual:e})")]
    TraceNotOne { residual: f64 },

    #[error("not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("state vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("state is not Bell-diagonal (residual {residual:e})")]
    NotBellDiagonal { residual: f64 },

    #[error("state is not diagonal in the computational basis (residual {residual:e})")]
    NotComputationalDiagonal { residual: f64 },

    #[error("matrix is not unitary (max |U^dag U - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("parameter {name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("state file: {0}")]
    StateFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
