//! Spectral sweeps of `G(omega)` over a fundamental cell of the dual lattice,
//! with randomized lattice shifts, and the resulting frame report.
//!
//! The family `{pi(gamma + alpha_k, theta_k) psi}` is a frame for the
//! Paley-Wiener space of radius `rho` with bounds `A <= B` exactly when every
//! eigenvalue of every `G(omega)` lies in `[A / |Omega|, B / |Omega|]`. The
//! sweep samples `omega` on a cell-centered grid, so the reported bounds are
//! grid estimates of the essential infimum and supremum.

use nalgebra::Matrix2;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::gramian::{gramian_product, SpectralBounds};
use crate::lattice::{enumerate_indices, FundamentalCell, Lattice2D, Point};
use crate::wavelet::{reduce_angle, Generator, WaveletParams};

/// Two shifts closer than this modulo the lattice (in lattice coordinates)
/// are considered the same coset.
pub const COSET_TOL: f64 = 1e-9;

/// Two angles closer than this modulo `2 pi` are considered equal.
pub const ANGLE_TOL: f64 = 1e-12;

/// A frame is reported degenerate when `A <= DEGENERATE_RATIO * B`.
pub const DEGENERATE_RATIO: f64 = 1e-14;

/// Cells with `lambda_min <= NEAR_SINGULAR_RATIO * lambda_max` count as
/// numerically singular.
pub const NEAR_SINGULAR_RATIO: f64 = 1e-12;

/// Lattice shifts `alpha_k`: given explicitly, or redrawn per repetition.
#[derive(Clone, Debug, PartialEq)]
pub enum Shifts {
    Fixed(Vec<Point>),
    Random,
}

/// The sampling set `union_k (Gamma + alpha_k) x {theta_k}` together with the
/// wavelet and the Paley-Wiener radius.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplingSpec {
    pub wavelet: WaveletParams,
    /// The spatial lattice `Gamma`.
    pub lattice: Lattice2D,
    pub rho: f64,
    pub angles: Vec<f64>,
    pub shifts: Shifts,
}

impl SamplingSpec {
    pub fn new(
        wavelet: WaveletParams,
        lattice: Lattice2D,
        rho: f64,
        angles: Vec<f64>,
        shifts: Shifts,
    ) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
        }
        if angles.is_empty() {
            return Err(Error::InvalidInput("at least one angle is required".into()));
        }
        let angles: Vec<f64> = angles.into_iter().map(reduce_angle).collect();
        check_distinct_angles(&angles)?;
        if let Shifts::Fixed(s) = &shifts {
            if s.len() != angles.len() {
                return Err(Error::InvalidInput(format!(
                    "{} shifts given for {} angles",
                    s.len(),
                    angles.len()
                )));
            }
            check_distinct_cosets(s, &lattice)?;
        }
        Ok(Self {
            wavelet,
            lattice,
            rho,
            angles,
            shifts,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.angles.len()
    }

    /// The frequency lattice `Gamma^perp`.
    pub fn dual_lattice(&self) -> Lattice2D {
        self.lattice.annihilator()
    }

    /// Copy with the given explicit shifts (not revalidated).
    pub fn with_shifts(&self, shifts: Vec<Point>) -> Self {
        Self {
            shifts: Shifts::Fixed(shifts),
            ..self.clone()
        }
    }

    /// The generators `e_{alpha_k} psi^_{theta_k}`; requires explicit shifts.
    pub fn generators(&self) -> Result<Vec<Generator>> {
        match &self.shifts {
            Shifts::Fixed(s) => Ok(self.generators_with(s)),
            Shifts::Random => Err(Error::InvalidInput(
                "shifts are randomized; draw them before building generators".into(),
            )),
        }
    }

    fn generators_with(&self, shifts: &[Point]) -> Vec<Generator> {
        self.angles
            .iter()
            .zip(shifts)
            .map(|(&t, a)| Generator::new(self.wavelet, t, *a))
            .collect()
    }
}

fn check_distinct_angles(angles: &[f64]) -> Result<()> {
    for (i, a) in angles.iter().enumerate() {
        for b in &angles[..i] {
            let d = (a - b).abs();
            if d.min(std::f64::consts::TAU - d) < ANGLE_TOL {
                return Err(Error::InvalidInput(format!(
                    "angles {b} and {a} coincide modulo 2 pi"
                )));
            }
        }
    }
    Ok(())
}

fn check_distinct_cosets(shifts: &[Point], lattice: &Lattice2D) -> Result<()> {
    let frac: Vec<Point> = shifts
        .iter()
        .map(|a| lattice.coordinates(a).map(|t| t - t.floor()))
        .collect();
    for i in 0..frac.len() {
        for j in 0..i {
            let same = (0..2).all(|c| {
                let d = (frac[i][c] - frac[j][c]).abs();
                d.min(1.0 - d) < COSET_TOL
            });
            if same {
                return Err(Error::InvalidInput(format!(
                    "shifts {j} and {i} lie in the same lattice coset"
                )));
            }
        }
    }
    Ok(())
}

/// Grid resolution, number of shift repetitions and RNG seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub grid_size: usize,
    pub repetitions: usize,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(grid_size: usize, repetitions: usize, seed: u64) -> Result<Self> {
        if grid_size == 0 || repetitions == 0 {
            return Err(Error::InvalidInput(
                "grid size and repetitions must be at least 1".into(),
            ));
        }
        Ok(Self {
            grid_size,
            repetitions,
            seed,
        })
    }
}

/// Cell-centered `M x M` grid on `cell`; the first coordinate runs fastest.
pub fn omega_grid(cell: &FundamentalCell, m: usize) -> Vec<Point> {
    assert!(m >= 1, "grid size must be at least 1");
    let step = 1.0 / m as f64;
    let mut grid = Vec::with_capacity(m * m);
    for j in 0..m {
        for i in 0..m {
            let local = Point::new((i as f64 + 0.5) * step - 0.5, (j as f64 + 0.5) * step - 0.5);
            grid.push(cell.center + cell.basis * local);
        }
    }
    grid
}

/// `n` shifts uniform in `(0, 1)^2`, keyed on `(seed, repetition, k, coordinate)`.
///
/// Each value is read from its own position of a ChaCha8 stream, so the
/// result does not depend on evaluation order.
pub fn draw_shifts(seed: u64, repetition: usize, n: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repetition as u64);
    let mut coord = |k: usize, c: usize| {
        rng.set_word_pos(((2 * k + c) * 2) as u128);
        open_unit(rng.next_u64())
    };
    (0..n).map(|k| Point::new(coord(k, 0), coord(k, 1))).collect()
}

fn open_unit(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Per-cell spectral extremes over all repetitions.
#[derive(Clone, Debug)]
pub struct SpectralField {
    pub grid_size: usize,
    /// Grid points, first coordinate fastest.
    pub grid: Vec<Point>,
    /// `n(omega) = |V_rho(omega)|` per cell.
    pub counts: Vec<usize>,
    /// `bounds[r][cell]`, `None` where `V_rho(omega)` is empty.
    pub bounds: Vec<Vec<Option<SpectralBounds>>>,
    /// Shifts used in each repetition.
    pub shifts: Vec<Vec<Point>>,
    pub num_generators: usize,
    /// Area `|Omega|` of the swept cell.
    pub cell_area: f64,
}

impl SpectralField {
    pub fn repetitions(&self) -> usize {
        self.bounds.len()
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn empty_cells(&self) -> usize {
        self.counts.iter().filter(|&&n| n == 0).count()
    }

    /// Mean over repetitions of `lambda_min` per cell.
    pub fn mean_lambda_min(&self) -> Vec<Option<f64>> {
        self.mean_of(|b| b.lambda_min)
    }

    /// Mean over repetitions of `lambda_max` per cell.
    pub fn mean_lambda_max(&self) -> Vec<Option<f64>> {
        self.mean_of(|b| b.lambda_max)
    }

    fn mean_of(&self, f: impl Fn(&SpectralBounds) -> f64) -> Vec<Option<f64>> {
        let reps = self.repetitions() as f64;
        (0..self.counts.len())
            .map(|c| {
                let mut sum = 0.0;
                for rep in &self.bounds {
                    sum += f(rep[c].as_ref()?);
                }
                Some(sum / reps)
            })
            .collect()
    }
}

/// Sweeps `G(omega)` over the centered cell of the dual lattice.
pub fn sweep(spec: &SamplingSpec, cfg: &SweepConfig) -> Result<SpectralField> {
    let dual = spec.dual_lattice();
    let cell = dual.centered_cell();
    let grid = omega_grid(&cell, cfg.grid_size);
    let counts: Vec<usize> = grid
        .par_iter()
        .map(|w| enumerate_indices(w, spec.rho, &dual).len())
        .collect();

    let mut bounds = Vec::with_capacity(cfg.repetitions);
    let mut shifts = Vec::with_capacity(cfg.repetitions);
    for r in 0..cfg.repetitions {
        let alpha = match &spec.shifts {
            Shifts::Fixed(s) => s.clone(),
            Shifts::Random => draw_shifts(cfg.seed, r, spec.num_generators()),
        };
        let generators = spec.generators_with(&alpha);
        let rep: Vec<Option<SpectralBounds>> = grid
            .par_iter()
            .map(|w| cell_bounds(w, spec.rho, &dual, &generators, r))
            .collect::<Result<_>>()?;
        bounds.push(rep);
        shifts.push(alpha);
    }

    Ok(SpectralField {
        grid_size: cfg.grid_size,
        grid,
        counts,
        bounds,
        shifts,
        num_generators: spec.num_generators(),
        cell_area: cell.area(),
    })
}

fn cell_bounds(
    omega: &Point,
    rho: f64,
    dual: &Lattice2D,
    generators: &[Generator],
    repetition: usize,
) -> Result<Option<SpectralBounds>> {
    let indices = enumerate_indices(omega, rho, dual);
    if indices.is_empty() {
        return Ok(None);
    }
    let g = gramian_product(indices, generators);
    let ev = hermitian_eigenvalues(&g.entries).ok_or(Error::NoConvergence {
        dim: g.dim(),
        omega: [omega[0], omega[1]],
        repetition: Some(repetition),
    })?;
    Ok(Some(SpectralBounds {
        lambda_min: ev[0],
        lambda_max: ev[ev.len() - 1],
    }))
}

/// Frame bounds and condition numbers estimated from a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameReport {
    /// `|Omega| * min lambda_min` over cells and repetitions.
    pub lower: f64,
    /// `|Omega| * max lambda_max` over cells and repetitions.
    pub upper: f64,
    /// `upper / lower` from the pooled extremes; infinite when degenerate.
    pub kappa: f64,
    pub kappa_per_repetition: Vec<f64>,
    pub kappa_mean: f64,
    pub kappa_std: f64,
    /// `max mean lambda_max / min mean lambda_min`, the means taken per cell
    /// over repetitions.
    pub kappa_mean_field: f64,
    /// `N >= max n(omega)`, necessary since `rank G(omega) <= N`.
    pub feasible: bool,
    pub max_n: usize,
    pub num_generators: usize,
    /// `lower <= DEGENERATE_RATIO * upper`.
    pub degenerate: bool,
    /// Fraction of nonempty (cell, repetition) pairs with
    /// `lambda_min <= NEAR_SINGULAR_RATIO * lambda_max`.
    pub near_singular_fraction: f64,
    pub empty_cells: usize,
}

fn kappa_of(lower: f64, upper: f64) -> f64 {
    if lower <= DEGENERATE_RATIO * upper {
        f64::INFINITY
    } else {
        upper / lower
    }
}

/// Aggregates a sweep into frame bounds for a cell of area `covolume`.
pub fn frame_report(field: &SpectralField, covolume: f64, num_generators: usize) -> FrameReport {
    let mut pooled_min = f64::INFINITY;
    let mut pooled_max = f64::NEG_INFINITY;
    let mut per_rep = Vec::with_capacity(field.repetitions());
    let (mut singular, mut total) = (0usize, 0usize);
    for rep in &field.bounds {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for b in rep.iter().flatten() {
            lo = lo.min(b.lambda_min);
            hi = hi.max(b.lambda_max);
            total += 1;
            if b.lambda_min <= NEAR_SINGULAR_RATIO * b.lambda_max {
                singular += 1;
            }
        }
        pooled_min = pooled_min.min(lo);
        pooled_max = pooled_max.max(hi);
        per_rep.push(kappa_of(lo, hi));
    }
    let lower = covolume * pooled_min;
    let upper = covolume * pooled_max;
    let kappa = kappa_of(lower, upper);
    let reps = per_rep.len().max(1) as f64;
    let kappa_mean = per_rep.iter().sum::<f64>() / reps;
    let kappa_std = if kappa_mean.is_finite() {
        (per_rep.iter().map(|k| (k - kappa_mean).powi(2)).sum::<f64>() / reps).sqrt()
    } else {
        f64::NAN
    };
    let fold = |v: Vec<Option<f64>>, init: f64, f: fn(f64, f64) -> f64| {
        v.into_iter().flatten().fold(init, f)
    };
    let kappa_mean_field = kappa_of(
        fold(field.mean_lambda_min(), f64::INFINITY, f64::min),
        fold(field.mean_lambda_max(), f64::NEG_INFINITY, f64::max),
    );
    let max_n = field.max_count();
    FrameReport {
        lower,
        upper,
        kappa,
        kappa_per_repetition: per_rep,
        kappa_mean,
        kappa_std,
        kappa_mean_field,
        feasible: num_generators >= max_n,
        max_n,
        num_generators,
        degenerate: !kappa.is_finite(),
        near_singular_fraction: if total == 0 {
            0.0
        } else {
            singular as f64 / total as f64
        },
        empty_cells: field.empty_cells(),
    }
}

/// The unit square `[-1/2, 1/2)^2`.
pub fn unit_cell() -> FundamentalCell {
    FundamentalCell {
        center: Point::zeros(),
        basis: Matrix2::identity(),
    }
}
