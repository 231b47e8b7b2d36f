//! Full-rank planar lattices, their annihilators and the frequency index
//! sets `V_rho(omega) = { nu in dual : |nu + omega| < rho }`.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or vector) of the plane.
pub type Point = Vector2<f64>;

/// Points closer than this (relative to `max(1, rho)`) to the sphere
/// `|nu + omega| = rho` are treated as lying on it and excluded.
pub const SPHERE_TIE_TOL: f64 = 1e-12;

const SINGULAR_TOL: f64 = 1e-12;

/// A full-rank lattice `A Z^2`; the columns of `basis` are the generators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice2D {
    basis: Matrix2<f64>,
}

impl Lattice2D {
    pub fn new(basis: Matrix2<f64>) -> Result<Self> {
        let det = basis.determinant();
        let scale = basis.amax();
        if !det.is_finite() || scale == 0.0 || det.abs() <= SINGULAR_TOL * scale * scale {
            return Err(Error::SingularBasis { det });
        }
        Ok(Self { basis })
    }

    /// Builds a lattice from rows `[[a11, a12], [a21, a22]]`.
    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    /// The integer lattice `Z^2`.
    pub fn integer() -> Self {
        Self {
            basis: Matrix2::identity(),
        }
    }

    pub fn basis(&self) -> &Matrix2<f64> {
        &self.basis
    }

    /// The annihilator lattice, with basis `(A^T)^{-1}`.
    pub fn annihilator(&self) -> Self {
        let inv_t = self
            .basis
            .transpose()
            .try_inverse()
            .expect("basis checked nonsingular at construction");
        Self { basis: inv_t }
    }

    /// Area of a fundamental cell, `|det A|`.
    pub fn covolume(&self) -> f64 {
        self.basis.determinant().abs()
    }

    /// Fundamental cell `A [-1/2, 1/2)^2` centered at the origin.
    pub fn centered_cell(&self) -> FundamentalCell {
        FundamentalCell {
            center: Point::zeros(),
            basis: self.basis,
        }
    }

    /// The lattice vector with integer coordinates `n`.
    pub fn point(&self, n: [i64; 2]) -> Point {
        self.basis * Point::new(n[0] as f64, n[1] as f64)
    }

    /// Coordinates of `x` in the lattice basis, `A^{-1} x`.
    pub fn coordinates(&self, x: &Point) -> Point {
        self.basis
            .try_inverse()
            .expect("basis checked nonsingular at construction")
            * x
    }
}

/// A fundamental domain `center + basis [-1/2, 1/2)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalCell {
    pub center: Point,
    pub basis: Matrix2<f64>,
}

impl FundamentalCell {
    pub fn area(&self) -> f64 {
        self.basis.determinant().abs()
    }

    /// Whether `x` lies in the half-open cell.
    pub fn contains(&self, x: &Point) -> bool {
        match self.basis.try_inverse() {
            Some(inv) => {
                let c = inv * (x - self.center);
                c.iter().all(|&t| (-0.5..0.5).contains(&t))
            }
            None => false,
        }
    }
}

/// The ordered set `V_rho(omega)` of dual lattice vectors inside the open
/// ball of radius `rho` centered at `-omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexSet {
    pub omega: Point,
    pub rho: f64,
    /// Integer coordinates, sorted lexicographically.
    pub coords: Vec<[i64; 2]>,
    /// The lattice vectors matching `coords`.
    pub points: Vec<Point>,
}

impl IndexSet {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Integer box guaranteed to contain every `n` with `|A n + omega| < rho`.
pub(crate) fn search_window(omega: &Point, rho: f64, lattice: &Lattice2D) -> [[i64; 2]; 2] {
    let inv = lattice
        .basis
        .try_inverse()
        .expect("basis checked nonsingular at construction");
    let center = inv * (-omega);
    let mut window = [[0i64; 2]; 2];
    for i in 0..2 {
        // |(A^{-1} y)_i| <= |row_i(A^{-1})| |y|
        let reach = rho * inv.row(i).norm();
        window[i] = [
            (center[i] - reach).floor() as i64 - 1,
            (center[i] + reach).ceil() as i64 + 1,
        ];
    }
    window
}

pub(crate) fn inside_open_ball(dist: f64, rho: f64) -> bool {
    dist < rho - SPHERE_TIE_TOL * rho.max(1.0)
}

/// Enumerates `V_rho(omega)` for the (dual) lattice `lattice`.
pub fn enumerate_indices(omega: &Point, rho: f64, lattice: &Lattice2D) -> IndexSet {
    let mut coords = Vec::new();
    let mut points = Vec::new();
    if rho > 0.0 {
        let [w0, w1] = search_window(omega, rho, lattice);
        // loop order gives lexicographic ordering directly
        for n0 in w0[0]..=w0[1] {
            for n1 in w1[0]..=w1[1] {
                let nu = lattice.point([n0, n1]);
                if inside_open_ball((nu + omega).norm(), rho) {
                    coords.push([n0, n1]);
                    points.push(nu);
                }
            }
        }
    }
    IndexSet {
        omega: *omega,
        rho,
        coords,
        points,
    }
}

/// Number of dual lattice points `n(omega)` at every grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct CountField {
    pub counts: Vec<usize>,
    pub max: usize,
}

pub fn count_field(grid: &[Point], rho: f64, lattice: &Lattice2D) -> CountField {
    let counts: Vec<usize> = grid
        .iter()
        .map(|w| count_indices(w, rho, lattice))
        .collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    CountField { counts, max }
}

fn count_indices(omega: &Point, rho: f64, lattice: &Lattice2D) -> usize {
    if rho <= 0.0 {
        return 0;
    }
    let [w0, w1] = search_window(omega, rho, lattice);
    let mut n = 0;
    for n0 in w0[0]..=w0[1] {
        for n1 in w1[0]..=w1[1] {
            if inside_open_ball((lattice.point([n0, n1]) + omega).norm(), rho) {
                n += 1;
            }
        }
    }
    n
}
