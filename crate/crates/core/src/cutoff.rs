//! Sufficient frame conditions for the frequency-cutoff wavelet
//! `phi^ = psi^ * chi_{B((p, 0), L/2)}` sampled on `(1/L) Z^2`.
//!
//! If the discs `B(p (cos t_k, sin t_k), L/2)` cover `B(0, rho)` with
//! multiplicity between `m` and `M` almost everywhere, then
//! `m L^2 exp(-L^2 pi^2 s^2) |f|^2 <= I(f) <= M L^2 |f|^2` for every shift
//! choice, hence `kappa <= (M/m) exp(L^2 pi^2 s^2)` when `m > 0`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Point;

pub const DEFAULT_RESOLUTION: usize = 512;

/// Essential minimum and maximum of the covering multiplicity over
/// `B(0, rho)`, as seen on a polar grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringCount {
    pub min: usize,
    pub max: usize,
    pub resolution: usize,
}

/// One sample of the multiplicity function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiplicitySample {
    pub xi: Point,
    pub count: usize,
}

fn check_positive(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if !(v.is_finite() && *v > 0.0) {
            return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

/// Number of discs `B(p (cos t_k, sin t_k), L/2)` containing `xi`; the
/// discs are open.
pub fn multiplicity(xi: &Point, p: f64, l: f64, angles: &[f64]) -> usize {
    let r = 0.5 * l;
    angles
        .iter()
        .filter(|&&t| (xi - Point::new(p * t.cos(), p * t.sin())).norm() < r)
        .count()
}

/// Multiplicity on the cell-centered polar grid of `B(0, rho)` with
/// `resolution` radii and `resolution` angles, the angular grid rotated by
/// `grid_rotation`.
pub fn multiplicity_field(
    p: f64,
    l: f64,
    rho: f64,
    angles: &[f64],
    resolution: usize,
    grid_rotation: f64,
) -> Result<Vec<MultiplicitySample>> {
    check_positive(&[("p", p), ("L", l), ("rho", rho)])?;
    if resolution == 0 || angles.is_empty() {
        return Err(Error::InvalidInput(
            "resolution and angle count must be at least 1".into(),
        ));
    }
    let res = resolution as f64;
    Ok((0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / resolution, idx % resolution);
            let r = rho * (i as f64 + 0.5) / res;
            let phi = grid_rotation + TAU * (j as f64 + 0.5) / res;
            let xi = Point::new(r * phi.cos(), r * phi.sin());
            MultiplicitySample {
                xi,
                count: multiplicity(&xi, p, l, angles),
            }
        })
        .collect())
}

/// Grid estimate of the essential bounds `m <= sum_k chi_k <= M` on `B(0, rho)`.
pub fn covering_counts(
    p: f64,
    l: f64,
    rho: f64,
    angles: &[f64],
    resolution: usize,
) -> Result<CoveringCount> {
    covering_counts_rotated(p, l, rho, angles, resolution, 0.0)
}

/// As [`covering_counts`], with the angular sampling grid rotated.
pub fn covering_counts_rotated(
    p: f64,
    l: f64,
    rho: f64,
    angles: &[f64],
    resolution: usize,
    grid_rotation: f64,
) -> Result<CoveringCount> {
    let field = multiplicity_field(p, l, rho, angles, resolution, grid_rotation)?;
    let min = field.iter().map(|s| s.count).min().unwrap_or(0);
    let max = field.iter().map(|s| s.count).max().unwrap_or(0);
    Ok(CoveringCount {
        min,
        max,
        resolution,
    })
}

/// Explicit frame bounds for the cutoff wavelet.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CutoffBounds {
    /// `m L^2 exp(-L^2 pi^2 sigma^2)`
    pub lower: f64,
    /// `M L^2`
    pub upper: f64,
    /// `(M/m) exp(L^2 pi^2 sigma^2)`, `None` when `m = 0`.
    pub kappa_bound: Option<f64>,
}

impl CutoffBounds {
    pub fn degenerate(&self) -> bool {
        self.kappa_bound.is_none()
    }
}

pub fn cutoff_frame_bounds(count: &CoveringCount, l: f64, sigma: f64) -> Result<CutoffBounds> {
    check_positive(&[("L", l), ("sigma", sigma)])?;
    let decay = (l * l * PI * PI * sigma * sigma).exp();
    let l2 = l * l;
    Ok(CutoffBounds {
        lower: count.min as f64 * l2 / decay,
        upper: count.max as f64 * l2,
        kappa_bound: (count.min > 0).then(|| count.max as f64 / count.min as f64 * decay),
    })
}

/// The two necessary geometric conditions for `m > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeuristicReport {
    pub p: f64,
    pub l: f64,
    pub rho: f64,
    /// `L >= 2p`: the discs reach the origin.
    pub origin_covered: bool,
    /// `rho < p + L/2`: the discs reach the rim of `B(0, rho)`.
    pub rim_covered: bool,
}

pub fn heuristic_check(p: f64, l: f64, rho: f64) -> Result<HeuristicReport> {
    check_positive(&[("p", p), ("L", l), ("rho", rho)])?;
    Ok(HeuristicReport {
        p,
        l,
        rho,
        origin_covered: l >= 2.0 * p,
        rim_covered: rho < p + 0.5 * l,
    })
}

impl fmt::Display for HeuristicReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAILS" };
        writeln!(
            f,
            "origin covered (L >= 2p: {} >= {}): {}",
            self.l,
            2.0 * self.p,
            mark(self.origin_covered)
        )?;
        write!(
            f,
            "rim covered (rho < p + L/2: {} < {}): {}",
            self.rho,
            self.p + 0.5 * self.l,
            mark(self.rim_covered)
        )
    }
}
