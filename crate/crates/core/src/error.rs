use thiserror::Error;

/// Errors produced by the frame analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice basis is singular (|det| = {det:e})")]
    SingularBasis { det: f64 },

    #[error("eigensolver did not converge for a {dim}x{dim} matrix at omega = ({}, {}){}",
        omega[0], omega[1],
        repetition.map(|r| format!(" in repetition {r}")).unwrap_or_default())]
    NoConvergence {
        dim: usize,
        omega: [f64; 2],
        repetition: Option<usize>,
    },

    #[error("I0({x}) overflows f64; use the exponentially scaled variant")]
    Overflow { x: f64 },

    #[error("quadrature did not converge after {doublings} doublings (last change {change:e})")]
    QuadratureStall { doublings: usize, change: f64 },

    #[error("lattice sum tail did not converge before radius {radius}")]
    TailNotConverged { radius: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
