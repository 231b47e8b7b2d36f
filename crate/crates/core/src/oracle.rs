//! Brute-force evaluation of the sampled energy
//!
//! ```text
//! I(f) = sum_k sum_{gamma in Gamma} |W_psi f(gamma + alpha_k, theta_k)|^2
//! ```
//!
//! from individual wavelet coefficients, and of the same quantity through the
//! dual Gramian, `|Omega| int_Omega <z(omega), G(omega) z(omega)> d omega`
//! with `z_nu = f^(omega + nu)`. Agreement of the two routes checks the
//! periodization, the Parseval step and the Gramian entries together.
//!
//! Test functions are band-limited by construction: `f^` is a finite sum of
//! smooth bumps `c exp(1 - 1/(1 - |xi - xi_j|^2 / r_j^2))` supported in
//! `B(0, rho)`.

use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framefield::{omega_grid, SamplingSpec};
use crate::gramian::gramian_closed_form;
use crate::lattice::{enumerate_indices, Lattice2D, Point};
use crate::quadrature::gauss_legendre_on;
use crate::wavelet::{phi_hat, psi_hat_rotated, Generator, WaveletParams};

/// Relative change at which coefficient quadrature is accepted.
pub const COEFFICIENT_TOL: f64 = 1e-10;
/// Maximum number of order doublings for coefficient quadrature.
pub const MAX_DOUBLINGS: usize = 12;
/// Largest lattice radius `max |m|_inf` summed by [`energy_sum`].
pub const MAX_LATTICE_RADIUS: usize = 64;
/// Relative change at which the omega-grid integral is accepted.
pub const GRID_TOL: f64 = 1e-4;

const INITIAL_ORDER: usize = 16;
const MAX_ORDER: usize = 1024;
const MAX_GRID_DOUBLINGS: usize = 8;

/// A smooth bump `coeff * exp(1 - 1/(1 - t))`, `t = |xi - center|^2 / radius^2 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: Point,
    pub radius: f64,
    pub coeff: Complex<f64>,
}

impl Bump {
    pub fn profile(&self, xi: &Point) -> f64 {
        let t = (xi - self.center).norm_squared() / (self.radius * self.radius);
        if t < 1.0 {
            (1.0 - 1.0 / (1.0 - t)).exp()
        } else {
            0.0
        }
    }
}

/// A function given by its Fourier transform, a finite sum of bumps.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BandLimitedTestFunction {
    bumps: Vec<Bump>,
}

impl BandLimitedTestFunction {
    pub fn new(bumps: Vec<Bump>) -> Result<Self> {
        for b in &bumps {
            let finite = b.center.iter().all(|v| v.is_finite())
                && b.coeff.re.is_finite()
                && b.coeff.im.is_finite();
            if !(finite && b.radius.is_finite() && b.radius > 0.0) {
                return Err(Error::InvalidInput(format!("invalid bump {b:?}")));
            }
        }
        Ok(Self { bumps })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bumps(&self) -> &[Bump] {
        &self.bumps
    }

    /// `f^(xi)`.
    pub fn value(&self, xi: &Point) -> Complex<f64> {
        self.bumps.iter().map(|b| b.coeff * b.profile(xi)).sum()
    }

    /// Smallest radius `R` with `supp f^` inside the closed ball `B(0, R)`.
    pub fn support_radius(&self) -> f64 {
        self.bumps
            .iter()
            .map(|b| b.center.norm() + b.radius)
            .fold(0.0, f64::max)
    }

    /// `c f`.
    pub fn scaled(&self, c: Complex<f64>) -> Self {
        Self {
            bumps: self
                .bumps
                .iter()
                .map(|b| Bump {
                    coeff: b.coeff * c,
                    ..*b
                })
                .collect(),
        }
    }

    /// Fails unless `supp f^` lies strictly inside `B(0, rho)`.
    pub fn check_band_limit(&self, rho: f64) -> Result<()> {
        let r = self.support_radius();
        if r < rho {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "test function support radius {r} is not below rho = {rho}"
            )))
        }
    }

    fn is_zero(&self) -> bool {
        self.bumps.iter().all(|b| b.coeff == Complex::new(0.0, 0.0))
    }

    /// `|f|^2 = int |f^|^2`, by tensor Gauss–Legendre on the bounding box of
    /// the support.
    pub fn norm_sq(&self) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let (lo, hi) = self.bounding_box();
        let eval = |n: usize| {
            let (x, wx) = gauss_legendre_on(n, lo[0], hi[0]);
            let (y, wy) = gauss_legendre_on(n, lo[1], hi[1]);
            let mut s = 0.0;
            for (a, wa) in x.iter().zip(&wx) {
                for (b, wb) in y.iter().zip(&wy) {
                    s += wa * wb * self.value(&Point::new(*a, *b)).norm_sqr();
                }
            }
            s
        };
        let mut n = INITIAL_ORDER;
        let mut prev = eval(n);
        let mut change = f64::INFINITY;
        for _ in 0..MAX_DOUBLINGS {
            n *= 2;
            if n > MAX_ORDER {
                break;
            }
            let cur = eval(n);
            change = (cur - prev).abs();
            if change <= 1e-12 * cur {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::QuadratureStall {
            doublings: MAX_DOUBLINGS,
            change,
        })
    }

    fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::repeat(f64::INFINITY);
        let mut hi = Point::repeat(f64::NEG_INFINITY);
        for b in &self.bumps {
            for c in 0..2 {
                lo[c] = lo[c].min(b.center[c] - b.radius);
                hi[c] = hi[c].max(b.center[c] + b.radius);
            }
        }
        (lo, hi)
    }
}

/// A discretization of the measure `f^(xi) d xi` on the bump supports.
// Per bump, a full order x order tensor grid over the bump square (node
// index i * order + j for (x_i, y_j)); nodes outside the disc carry zero
// weight, so the tensor structure survives.
struct FrequencyRule {
    order: usize,
    nodes: Vec<Point>,
    weights: Vec<Complex<f64>>,
}

impl FrequencyRule {
    fn new(f: &BandLimitedTestFunction, order: usize) -> Self {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        // each bump is integrated on its own square, so overlaps are fine
        for b in &f.bumps {
            let (x, wx) = gauss_legendre_on(order, b.center[0] - b.radius, b.center[0] + b.radius);
            let (y, wy) = gauss_legendre_on(order, b.center[1] - b.radius, b.center[1] + b.radius);
            for (u, wu) in x.iter().zip(&wx) {
                for (v, wv) in y.iter().zip(&wy) {
                    let xi = Point::new(*u, *v);
                    nodes.push(xi);
                    weights.push(b.coeff * (wu * wv * b.profile(&xi)));
                }
            }
        }
        Self {
            order,
            nodes,
            weights,
        }
    }

    /// Multiplies every weight by `g(xi)`.
    fn weighted(mut self, g: impl Fn(&Point) -> Complex<f64>) -> Self {
        for (w, xi) in self.weights.iter_mut().zip(&self.nodes) {
            *w *= g(xi);
        }
        self
    }

    fn l1(&self) -> f64 {
        self.weights.iter().map(|w| w.norm()).sum()
    }

    /// `sum_q W_q exp(2 pi i x.xi_q)`
    fn transform(&self, x: &Point) -> Complex<f64> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(xi, w)| w * Complex::from_polar(1.0, TAU * x.dot(xi)))
            .sum()
    }
}

/// `W_psi f(x, theta) = <f^, e_x psi^_theta>
///   = int f^(xi) exp(2 pi i x.xi) psi^_theta(xi) d xi`.
///
/// The Gauss–Legendre order is doubled until the value changes by less than
/// `COEFFICIENT_TOL` times `int |f^ psi^_theta|`.
pub fn wavelet_coefficient(
    f: &BandLimitedTestFunction,
    x: &Point,
    theta: f64,
    w: &WaveletParams,
) -> Result<Complex<f64>> {
    if f.is_zero() {
        return Ok(Complex::new(0.0, 0.0));
    }
    let eval = |n: usize| {
        let rule = FrequencyRule::new(f, n).weighted(|xi| psi_hat_rotated(xi, theta, w).into());
        (rule.transform(x), rule.l1())
    };
    let mut n = INITIAL_ORDER;
    let (mut prev, _) = eval(n);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        if n > MAX_ORDER {
            break;
        }
        let (cur, scale) = eval(n);
        change = (cur - prev).norm();
        if change <= COEFFICIENT_TOL * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureStall {
        doublings: MAX_DOUBLINGS,
        change,
    })
}

/// `sum_{gamma in Gamma} |<f^, e_{gamma + alpha} psi^_theta>|^2` for a single
/// generator, summing square shells `|m|_inf = R` of lattice coordinates
/// until a shell adds less than `tail_tol` of the running total.
pub fn generator_energy(
    f: &BandLimitedTestFunction,
    g: &Generator,
    lattice: &Lattice2D,
    tail_tol: f64,
) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    let mut reach = 16;
    loop {
        let rule = lattice_rule(f, g, lattice, reach)?;
        if let Some(total) = shell_sum(&rule, lattice, reach, tail_tol) {
            return Ok(total);
        }
        if reach >= MAX_LATTICE_RADIUS {
            return Err(Error::TailNotConverged {
                radius: MAX_LATTICE_RADIUS,
            });
        }
        reach = (2 * reach).min(MAX_LATTICE_RADIUS);
    }
}

// f^ psi^_theta e^{2 pi i alpha.xi} d xi, with the order refined until the
// coefficients at the corners of the window |m|_inf <= reach have converged.
fn lattice_rule(
    f: &BandLimitedTestFunction,
    g: &Generator,
    lattice: &Lattice2D,
    reach: usize,
) -> Result<FrequencyRule> {
    let r = reach as i64;
    let probes: Vec<Point> = [[0, 0], [r, 0], [0, r], [r, r], [r, -r]]
        .iter()
        .map(|&m| lattice.point(m))
        .collect();
    let build = |n: usize| {
        FrequencyRule::new(f, n).weighted(|xi| phi_hat(xi, g).conj())
    };
    let mut n = INITIAL_ORDER;
    let mut prev: Vec<Complex<f64>> = {
        let rule = build(n);
        probes.iter().map(|x| rule.transform(x)).collect()
    };
    let mut change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        if n > MAX_ORDER {
            break;
        }
        let rule = build(n);
        let cur: Vec<Complex<f64>> = probes.iter().map(|x| rule.transform(x)).collect();
        change = cur
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if change <= COEFFICIENT_TOL * rule.l1() {
            return Ok(rule);
        }
        prev = cur;
    }
    Err(Error::QuadratureStall {
        doublings: MAX_DOUBLINGS,
        change,
    })
}

// conj(phi^(xi)) = psi^_theta(xi) exp(2 pi i alpha.xi), so the rule above
// evaluated at gamma gives the coefficient at gamma + alpha.
fn shell_sum(rule: &FrequencyRule, lattice: &Lattice2D, reach: usize, tail_tol: f64) -> Option<f64> {
    let r0 = reach as i64;
    let width = 2 * reach + 1;
    let basis = lattice.basis();
    let table = if basis[(0, 1)] == 0.0 && basis[(1, 0)] == 0.0 {
        Some(diagonal_table(rule, basis[(0, 0)], basis[(1, 1)], reach))
    } else {
        None
    };
    let a1 = basis.column(0).into_owned();
    let a2 = basis.column(1).into_owned();
    let phases = |a: &Point| -> Vec<Vec<Complex<f64>>> {
        if table.is_some() {
            return Vec::new();
        }
        let eta: Vec<f64> = rule.nodes.iter().map(|xi| a.dot(xi)).collect();
        (-r0..=r0)
            .map(|m| {
                eta.iter()
                    .map(|e| Complex::from_polar(1.0, TAU * m as f64 * e))
                    .collect()
            })
            .collect()
    };
    let e1 = phases(&a1);
    let e2 = phases(&a2);
    let coefficient_sq = |m: &(i64, i64)| -> f64 {
        let (i, j) = ((m.0 + r0) as usize, (m.1 + r0) as usize);
        if let Some(t) = &table {
            return t[i * width + j];
        }
        rule.weights
            .iter()
            .zip(e1[i].iter().zip(&e2[j]))
            .map(|(w, (a, b))| w * a * b)
            .sum::<Complex<f64>>()
            .norm_sqr()
    };
    let mut total = 0.0;
    for radius in 0..=r0 {
        let shell: Vec<(i64, i64)> = (-radius..=radius)
            .flat_map(|a| (-radius..=radius).map(move |b| (a, b)))
            .filter(|&(a, b)| a.abs().max(b.abs()) == radius)
            .collect();
        let contribution: f64 = shell.par_iter().map(coefficient_sq).collect::<Vec<_>>().iter().sum();
        total += contribution;
        if radius >= 3 && contribution <= tail_tol * total {
            return Some(total);
        }
    }
    None
}

// For a basis diag(h1, h2) the coefficient at (h1 m1, h2 m2) is
// sum_ij X[m1, i] W_ij Y[m2, j], so the whole window is X W Y^T per bump.
fn diagonal_table(rule: &FrequencyRule, h1: f64, h2: f64, reach: usize) -> Vec<f64> {
    let n = rule.order;
    let width = 2 * reach + 1;
    let mut total = DMatrix::<Complex<f64>>::zeros(width, width);
    for (b, w) in rule.weights.chunks(n * n).enumerate() {
        let nodes = &rule.nodes[b * n * n..(b + 1) * n * n];
        let phase = |h: f64, coord: &dyn Fn(usize) -> f64| {
            DMatrix::from_fn(width, n, |m, i| {
                let m = m as f64 - reach as f64;
                Complex::from_polar(1.0, TAU * h * m * coord(i))
            })
        };
        let x = phase(h1, &|i| nodes[i * n][0]);
        let y = phase(h2, &|j| nodes[j][1]);
        let wm = DMatrix::from_row_slice(n, n, w);
        total += x * wm * y.transpose();
    }
    (0..width * width)
        .map(|k| total[(k / width, k % width)].norm_sqr())
        .collect()
}

/// `I(f) = sum_k sum_gamma |W_psi f(gamma + alpha_k, theta_k)|^2`.
pub fn energy_sum(f: &BandLimitedTestFunction, spec: &SamplingSpec, tail_tol: f64) -> Result<f64> {
    f.check_band_limit(spec.rho)?;
    let generators = spec.generators()?;
    let mut total = 0.0;
    for g in &generators {
        total += generator_energy(f, g, &spec.lattice, tail_tol)?;
    }
    Ok(total)
}

/// `[f, phi]_Gamma(omega) = sum_{nu in Gamma^perp} f^(omega + nu) conj(phi^(omega + nu))`,
/// truncated exactly to the support of `f^`. `lattice` is the spatial
/// lattice `Gamma`.
pub fn bracket(
    f: &BandLimitedTestFunction,
    g: &Generator,
    omega: &Point,
    lattice: &Lattice2D,
) -> Complex<f64> {
    support_indices(f, omega, lattice)
        .map(|xi| f.value(&xi) * phi_hat(&xi, g).conj())
        .sum()
}

/// `[f, f]_Gamma(omega)`.
pub fn self_bracket(f: &BandLimitedTestFunction, omega: &Point, lattice: &Lattice2D) -> f64 {
    support_indices(f, omega, lattice)
        .map(|xi| f.value(&xi).norm_sqr())
        .sum()
}

fn support_indices(
    f: &BandLimitedTestFunction,
    omega: &Point,
    lattice: &Lattice2D,
) -> impl Iterator<Item = Point> {
    let radius = f.support_radius();
    let omega = *omega;
    let indices = if radius > 0.0 {
        enumerate_indices(&omega, radius, &lattice.annihilator()).points
    } else {
        Vec::new()
    };
    indices.into_iter().map(move |nu| omega + nu)
}

/// `|Omega| int_Omega <z, G(omega) z> d omega` on a cell-centered grid of the
/// dual cell, starting at `grid_size` and doubling until the relative change
/// drops below `GRID_TOL`.
pub fn quadratic_form_integral(
    f: &BandLimitedTestFunction,
    spec: &SamplingSpec,
    grid_size: usize,
) -> Result<f64> {
    f.check_band_limit(spec.rho)?;
    let generators = spec.generators()?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let dual = spec.dual_lattice();
    let cell = dual.centered_cell();
    let area = cell.area();
    let eval = |m: usize| -> f64 {
        let grid = omega_grid(&cell, m);
        let sum: f64 = grid
            .par_iter()
            .map(|omega| {
                let indices = enumerate_indices(omega, spec.rho, &dual);
                let z: Vec<Complex<f64>> =
                    indices.points.iter().map(|nu| f.value(&(omega + nu))).collect();
                gramian_closed_form(indices, &spec.wavelet, &generators).quadratic_form(&z)
            })
            .collect::<Vec<_>>()
            .iter()
            .sum();
        // |Omega| * (|Omega| * mean)
        area * area * sum / grid.len() as f64
    };
    let mut m = grid_size.max(1);
    let mut prev = eval(m);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_GRID_DOUBLINGS {
        m *= 2;
        let cur = eval(m);
        change = (cur - prev).abs();
        if change <= GRID_TOL * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureStall {
        doublings: MAX_GRID_DOUBLINGS,
        change,
    })
}

/// Both sides of the sampled-energy identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub energy_sum: f64,
    pub quadratic_form_integral: f64,
    pub relative_error: f64,
}

pub fn identity_check(
    f: &BandLimitedTestFunction,
    spec: &SamplingSpec,
    tail_tol: f64,
    grid_size: usize,
) -> Result<IdentityReport> {
    let lhs = energy_sum(f, spec, tail_tol)?;
    let rhs = quadratic_form_integral(f, spec, grid_size)?;
    let scale = lhs.abs().max(rhs.abs());
    Ok(IdentityReport {
        energy_sum: lhs,
        quadratic_form_integral: rhs,
        relative_error: if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framefield::Shifts;
    use crate::wavelet::uniform_angles;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn one_bump() -> BandLimitedTestFunction {
        BandLimitedTestFunction::new(vec![Bump {
            center: Point::new(0.3, 0.0),
            radius: 0.1,
            coeff: c(1.0, 0.0),
        }])
        .unwrap()
    }

    fn two_bumps() -> BandLimitedTestFunction {
        BandLimitedTestFunction::new(vec![
            Bump { center: Point::new(0.2, 0.1), radius: 0.4, coeff: c(1.0, -0.5) },
            Bump { center: Point::new(-0.3, 0.4), radius: 0.35, coeff: c(0.3, 0.8) },
        ])
        .unwrap()
    }

    fn sim_spec(rho: f64, n: usize) -> SamplingSpec {
        let shifts: Vec<Point> = (0..n)
            .map(|k| Point::new(0.13 + 0.21 * k as f64, 0.71 - 0.17 * k as f64))
            .collect();
        SamplingSpec::new(
            WaveletParams::new(0.5, 2.0 / PI).unwrap(),
            Lattice2D::integer(),
            rho,
            uniform_angles(n),
            Shifts::Fixed(shifts),
        )
        .unwrap()
    }

    // composite midpoint rule on the bump squares
    fn midpoint_coefficient(
        f: &BandLimitedTestFunction,
        x: &Point,
        theta: f64,
        w: &WaveletParams,
        n: usize,
    ) -> Complex<f64> {
        let mut acc = c(0.0, 0.0);
        for b in f.bumps() {
            let h = 2.0 * b.radius / n as f64;
            for i in 0..n {
                for j in 0..n {
                    let xi = b.center
                        + Point::new(-b.radius + (i as f64 + 0.5) * h, -b.radius + (j as f64 + 0.5) * h);
                    acc += b.coeff
                        * b.profile(&xi)
                        * psi_hat_rotated(&xi, theta, w)
                        * Complex::from_polar(h * h, TAU * x.dot(&xi));
                }
            }
        }
        acc
    }

    #[test]
    fn bump_profile() {
        let b = Bump { center: Point::new(0.1, 0.2), radius: 0.5, coeff: c(1.0, 0.0) };
        assert_eq!(b.profile(&b.center), 1.0);
        assert_eq!(b.profile(&Point::new(0.6, 0.2)), 0.0);
        assert!(b.profile(&Point::new(0.59, 0.2)) < 1e-10);
        assert!(BandLimitedTestFunction::new(vec![Bump { radius: 0.0, ..b }]).is_err());
    }

    #[test]
    fn zero_function() {
        let w = WaveletParams::new(0.5, 0.3).unwrap();
        let z = BandLimitedTestFunction::zero();
        let s = sim_spec(1.0, 3);
        assert_eq!(wavelet_coefficient(&z, &Point::new(1.0, 2.0), 0.3, &w).unwrap(), c(0.0, 0.0));
        assert_eq!(energy_sum(&z, &s, 1e-6).unwrap(), 0.0);
        assert_eq!(quadratic_form_integral(&z, &s, 8).unwrap(), 0.0);
        let zc = one_bump().scaled(c(0.0, 0.0));
        assert_eq!(energy_sum(&zc, &s, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn coefficient_matches_midpoint_rule() {
        let w = WaveletParams::new(0.5, 2.0 / PI).unwrap();
        let f = one_bump();
        let gl = wavelet_coefficient(&f, &Point::zeros(), 0.0, &w).unwrap();
        let mid = midpoint_coefficient(&f, &Point::zeros(), 0.0, &w, 400);
        assert!((gl - mid).norm() < 1e-8, "{gl} vs {mid}");
        assert!(gl.norm() > 1e-3);
        let x = Point::new(3.0, -2.0);
        let gl = wavelet_coefficient(&two_bumps(), &x, 1.1, &w).unwrap();
        let mid = midpoint_coefficient(&two_bumps(), &x, 1.1, &w, 400);
        assert!((gl - mid).norm() < 1e-8, "{gl} vs {mid}");
    }

    #[test]
    fn coefficient_is_linear() {
        let w = WaveletParams::new(0.7, 0.3).unwrap();
        let f = two_bumps();
        let x = Point::new(0.4, -1.0);
        let k = c(-1.5, 2.0);
        let a = wavelet_coefficient(&f.scaled(k), &x, 0.5, &w).unwrap();
        let b = wavelet_coefficient(&f, &x, 0.5, &w).unwrap() * k;
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn energy_scales_quadratically() {
        let s = sim_spec(1.0, 2);
        let f = two_bumps();
        let k = c(0.6, -0.8) * 3.0;
        let a = energy_sum(&f.scaled(k), &s, 1e-8).unwrap();
        let b = energy_sum(&f, &s, 1e-8).unwrap() * k.norm_sqr();
        assert!((a - b).abs() < 1e-9 * b);
        let qa = quadratic_form_integral(&f.scaled(k), &s, 16).unwrap();
        let qb = quadratic_form_integral(&f, &s, 16).unwrap() * k.norm_sqr();
        assert!((qa - qb).abs() < 1e-9 * qb);
    }

    #[test]
    fn band_limit_is_enforced() {
        let s = sim_spec(0.5, 2);
        assert!(energy_sum(&two_bumps(), &s, 1e-6).is_err());
        assert!(quadratic_form_integral(&two_bumps(), &s, 8).is_err());
    }

    #[test]
    fn energy_matches_quadratic_form_two_generators() {
        let s = sim_spec(1.0, 2);
        let f = two_bumps();
        let report = identity_check(&f, &s, 1e-8, 16).unwrap();
        assert!(report.relative_error < 1e-3, "{report:?}");
    }

    #[test]
    fn bracket_energy_equals_quadratic_form() {
        let s = sim_spec(1.3, 4);
        let f = two_bumps();
        let gens = s.generators().unwrap();
        for omega in [Point::new(0.1, -0.2), Point::new(-0.45, 0.33), Point::zeros()] {
            let lhs: f64 = gens
                .iter()
                .map(|g| bracket(&f, g, &omega, &s.lattice).norm_sqr())
                .sum();
            let idx = enumerate_indices(&omega, s.rho, &s.dual_lattice());
            let z: Vec<Complex<f64>> = idx.points.iter().map(|nu| f.value(&(omega + nu))).collect();
            let g = gramian_closed_form(idx, &s.wavelet, &gens);
            let rhs = g.quadratic_form(&z);
            assert!(rhs >= 0.0);
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300) + 1e-15, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn bracket_is_linear_and_vanishes_off_support() {
        let s = sim_spec(1.0, 1);
        let g = s.generators().unwrap()[0];
        let f = one_bump();
        // the bump lives in B((0.3, 0), 0.1); omega + Z^2 misses it at omega = (-0.5, 0.5)
        assert_eq!(bracket(&f, &g, &Point::new(-0.5, 0.5), &s.lattice), c(0.0, 0.0));
        let omega = Point::new(0.31, 0.02);
        let k = c(2.0, -1.0);
        let a = bracket(&f.scaled(k), &g, &omega, &s.lattice);
        let b = bracket(&f, &g, &omega, &s.lattice) * k;
        assert!((a - b).norm() < 1e-15);
        assert!(a.norm() > 0.0);
    }

    #[test]
    fn bracket_integral_is_the_norm() {
        let f = two_bumps();
        let lattice = Lattice2D::integer();
        let n = 256;
        let grid = omega_grid(&lattice.centered_cell(), n);
        let integral: f64 =
            grid.iter().map(|w| self_bracket(&f, w, &lattice)).sum::<f64>() / (n * n) as f64;
        let norm = f.norm_sq().unwrap();
        assert!((integral - norm).abs() < 1e-4 * norm, "{integral} vs {norm}");
    }

    #[test]
    fn parseval_for_one_cell_support() {
        // f^ supported in a single translate of the unit cell
        let f = BandLimitedTestFunction::new(vec![Bump {
            center: Point::new(0.1, -0.05),
            radius: 0.35,
            coeff: c(0.7, 0.2),
        }])
        .unwrap();
        let w = WaveletParams::new(0.5, 0.4).unwrap();
        let g = Generator::new(w, 0.4, Point::new(0.3, 0.6));
        let lattice = Lattice2D::integer();
        let lhs = generator_energy(&f, &g, &lattice, 1e-9).unwrap();
        // |Omega| int |f^ phi^|^2 by tensor Gauss-Legendre on the bump square
        let (x, wx) = gauss_legendre_on(200, -0.25, 0.45);
        let (y, wy) = gauss_legendre_on(200, -0.4, 0.3);
        let mut rhs = 0.0;
        for (a, wa) in x.iter().zip(&wx) {
            for (b, wb) in y.iter().zip(&wy) {
                let xi = Point::new(*a, *b);
                rhs += wa * wb * (f.value(&xi) * phi_hat(&xi, &g)).norm_sqr();
            }
        }
        assert!((lhs - rhs).abs() < 1e-4 * rhs, "{lhs} vs {rhs}");
    }

    #[test]
    fn nonsquare_lattice_identity() {
        let lattice = Lattice2D::from_rows([[1.2, 0.3], [0.0, 0.9]]).unwrap();
        let s = SamplingSpec::new(
            WaveletParams::new(0.6, 0.35).unwrap(),
            lattice,
            1.0,
            uniform_angles(3),
            Shifts::Fixed(vec![Point::new(0.1, 0.2), Point::new(0.5, 0.1), Point::new(0.3, 0.7)]),
        )
        .unwrap();
        let f = BandLimitedTestFunction::new(vec![Bump {
            center: Point::new(0.1, 0.2),
            radius: 0.5,
            coeff: c(1.0, 0.3),
        }])
        .unwrap();
        let report = identity_check(&f, &s, 1e-8, 16).unwrap();
        assert!(report.relative_error < 1e-3, "{report:?}");
    }
}
