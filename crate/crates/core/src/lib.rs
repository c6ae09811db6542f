//! Exact construction and certification of equiangular tight frames.
pub mod construct;
pub mod design;
pub mod frame;
pub mod hadamard;
pub mod io;
pub mod qsd;
pub mod recipe;
pub mod scalar;

pub use scalar::{Domain, ExactMatrix, Rational, Scalar};

/// Any failure from the library, for callers that do not care which layer raised it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] scalar::matrix::MatrixError),
    #[error(transparent)]
    Design(#[from] design::DesignError),
    #[error(transparent)]
    Hadamard(#[from] hadamard::HadamardError),
    #[error(transparent)]
    Frame(#[from] frame::FrameError),
    #[error(transparent)]
    Construct(#[from] construct::ConstructError),
    #[error(transparent)]
    Qsd(#[from] qsd::QsdError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
