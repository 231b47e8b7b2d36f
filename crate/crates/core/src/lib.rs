//! Frame analysis for shifted-lattice samplings of the SE(2) wavelet
//! transform with a modulated Gaussian mother wavelet, restricted to
//! Paley-Wiener spaces.

pub mod bessel;
pub mod cli;
pub mod config;
pub mod cutoff;
pub mod eigen;
pub mod error;
pub mod export;
pub mod framefield;
pub mod gramian;
pub mod lattice;
pub mod oracle;
pub mod quadrature;
pub mod wavelet;

pub use error::{Error, Result};
