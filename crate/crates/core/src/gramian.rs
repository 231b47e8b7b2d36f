//! The dual Gramian `G(omega)` indexed by `V_rho(omega)`, and its spectrum.
//!
//! Two constructions are provided. The product form
//!
//! ```text
//! G[nu, nu'] = sum_k conj(phi^_k(omega + nu)) phi^_k(omega + nu')
//! ```
//!
//! is the Gram structure itself and is the reference. The closed form
//!
//! ```text
//! G[nu, nu'] = exp(-pi^2 s^2 |nu - nu'|^2)
//!            * sum_k exp(2 pi i alpha_k.(nu - nu'))
//!                    exp(-4 pi^2 s^2 |omega + (nu + nu')/2 - p (cos t_k, sin t_k)|^2)
//! ```
//!
//! follows from `|a|^2 + |b|^2 = 2 |(a + b)/2|^2 + |a - b|^2 / 2`. The phase
//! `exp(+2 pi i alpha.(nu - nu'))` is the one produced by the product; the
//! opposite sign would give the transpose, which has the same spectrum.

use std::f64::consts::{PI, TAU};

use nalgebra::{Complex, DMatrix};

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::framefield::SamplingSpec;
use crate::lattice::{enumerate_indices, IndexSet, Point};
use crate::wavelet::{phi_hat, Generator, WaveletParams};

/// Matrices whose Hermitian defect exceeds this (relative to the largest
/// entry) are rejected by [`spectrum`].
pub const HERMITIAN_TOL: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct DualGramian {
    pub omega: Point,
    pub indices: IndexSet,
    pub entries: DMatrix<Complex<f64>>,
}

impl DualGramian {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Dimension-0 matrix, produced when `V_rho(omega)` is empty.
    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    /// `max |G[i,j] - conj(G[j,i])| / max |G[i,j]|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let scale = self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst / scale
    }

    /// `sum_{nu, nu'} z_nu G[nu, nu'] conj(z_nu')`, real and nonnegative for
    /// a Gram matrix.
    pub fn quadratic_form(&self, z: &[Complex<f64>]) -> f64 {
        assert_eq!(z.len(), self.dim());
        let mut acc = Complex::new(0.0, 0.0);
        for (i, zi) in z.iter().enumerate() {
            for (j, zj) in z.iter().enumerate() {
                acc += zi * self.entries[(i, j)] * zj.conj();
            }
        }
        acc.re
    }
}

/// Eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }
}

/// Smallest and largest eigenvalue of a nonempty `G(omega)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBounds {
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// `phi^_k(omega + nu)` for every generator `k` (rows) and index `nu` (columns).
pub fn synthesis_matrix(indices: &IndexSet, generators: &[Generator]) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(generators.len(), indices.len(), |k, j| {
        phi_hat(&(indices.omega + indices.points[j]), &generators[k])
    })
}

/// Product form `Phi^H Phi` on a given index set.
pub fn gramian_product(indices: IndexSet, generators: &[Generator]) -> DualGramian {
    let phi = synthesis_matrix(&indices, generators);
    DualGramian {
        omega: indices.omega,
        entries: phi.ad_mul(&phi),
        indices,
    }
}

/// Closed form on a given index set.
pub fn gramian_closed_form(
    indices: IndexSet,
    params: &WaveletParams,
    generators: &[Generator],
) -> DualGramian {
    let s2 = params.sigma * params.sigma;
    let peaks: Vec<Point> = generators.iter().map(|g| params.peak(g.theta)).collect();
    let n = indices.len();
    let omega = indices.omega;
    let entries = DMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (&indices.points[i], &indices.points[j]);
        let diff = a - b;
        let mid = omega + (a + b) * 0.5;
        let envelope = (-PI * PI * s2 * diff.norm_squared()).exp();
        let sum: Complex<f64> = generators
            .iter()
            .zip(&peaks)
            .map(|(g, c)| {
                let bell = (-4.0 * PI * PI * s2 * (mid - c).norm_squared()).exp();
                Complex::from_polar(bell, TAU * g.alpha.dot(&diff))
            })
            .sum();
        sum * envelope
    });
    DualGramian {
        omega,
        indices,
        entries,
    }
}

/// `G(omega)` from the closed Gaussian form.
pub fn build_gramian(omega: &Point, spec: &SamplingSpec) -> Result<DualGramian> {
    let generators = spec.generators()?;
    let indices = enumerate_indices(omega, spec.rho, &spec.dual_lattice());
    Ok(gramian_closed_form(indices, &spec.wavelet, &generators))
}

/// `G(omega)` assembled from products of `phi^_k` values.
pub fn build_gramian_direct(omega: &Point, spec: &SamplingSpec) -> Result<DualGramian> {
    let generators = spec.generators()?;
    let indices = enumerate_indices(omega, spec.rho, &spec.dual_lattice());
    Ok(gramian_product(indices, &generators))
}

/// Full spectrum of a (validated Hermitian) dual Gramian.
pub fn spectrum(g: &DualGramian) -> Result<Spectrum> {
    let defect = g.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian (relative defect {defect:e})"
        )));
    }
    hermitian_eigenvalues(&g.entries)
        .map(|eigenvalues| Spectrum { eigenvalues })
        .ok_or(Error::NoConvergence {
            dim: g.dim(),
            omega: [g.omega[0], g.omega[1]],
            repetition: None,
        })
}

/// `(lambda_min, lambda_max)`, or `None` for the empty matrix.
pub fn spectral_bounds(g: &DualGramian) -> Result<Option<SpectralBounds>> {
    let s = spectrum(g)?;
    Ok(s.min().zip(s.max()).map(|(lambda_min, lambda_max)| SpectralBounds {
        lambda_min,
        lambda_max,
    }))
}
