//! The modulated Gaussian mother wavelet
//!
//! ```text
//! psi(x) = 1/(2 pi sigma^2) exp(2 pi i p x1) exp(-|x|^2 / (2 sigma^2))
//! ```
//!
//! together with its Fourier transform, rotations, modulated translates and
//! the Calderón functions (continuous and angle-discretized).
//!
//! The Fourier transform is `f^(xi) = int f(x) exp(-2 pi i x.xi) dx` and the
//! characters are `e_x(xi) = exp(-2 pi i x.xi)`; every phase in the crate
//! follows this convention.

use std::f64::consts::{PI, TAU};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

pub use crate::bessel::{bessel_i0, bessel_i0_scaled};
use crate::error::{Error, Result};
use crate::lattice::Point;

/// Modulation frequency `p` and spatial standard deviation `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveletParams {
    pub p: f64,
    pub sigma: f64,
}

impl WaveletParams {
    pub fn new(p: f64, sigma: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("sigma", sigma)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "wavelet parameter {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { p, sigma })
    }

    /// Center of the rotated Gaussian bell, `p (cos theta, sin theta)`.
    pub fn peak(&self, theta: f64) -> Point {
        Point::new(self.p * theta.cos(), self.p * theta.sin())
    }
}

/// A rotated and translated copy of the mother wavelet, `phi^ = e_alpha psi^_theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Generator {
    pub params: WaveletParams,
    pub theta: f64,
    pub alpha: Point,
}

impl Generator {
    pub fn new(params: WaveletParams, theta: f64, alpha: Point) -> Self {
        Self {
            params,
            theta: reduce_angle(theta),
            alpha,
        }
    }
}

/// Reduces an angle to `[0, 2 pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `N` equally spaced angles `2 pi k / N`.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// The mother wavelet in space.
pub fn psi_spatial(x: &Point, w: &WaveletParams) -> Complex<f64> {
    let s2 = w.sigma * w.sigma;
    let amplitude = (-x.norm_squared() / (2.0 * s2)).exp() / (TAU * s2);
    Complex::from_polar(amplitude, TAU * w.p * x[0])
}

/// `psi^(xi) = exp(-2 pi^2 sigma^2 |xi - (p, 0)|^2)`.
pub fn psi_hat(xi: &Point, w: &WaveletParams) -> f64 {
    psi_hat_rotated(xi, 0.0, w)
}

/// `psi^(r_{-theta} xi)`, the Gaussian bell centered at `p (cos theta, sin theta)`.
pub fn psi_hat_rotated(xi: &Point, theta: f64, w: &WaveletParams) -> f64 {
    let d2 = (xi - w.peak(theta)).norm_squared();
    (-2.0 * PI * PI * w.sigma * w.sigma * d2).exp()
}

/// `phi^(xi) = exp(-2 pi i alpha.xi) psi^_theta(xi)`.
pub fn phi_hat(xi: &Point, g: &Generator) -> Complex<f64> {
    Complex::from_polar(psi_hat_rotated(xi, g.theta, &g.params), -TAU * g.alpha.dot(xi))
}

/// `int_{S^1} |psi^_theta(xi)|^2 d theta
///   = 2 pi exp(-4 pi^2 sigma^2 (|xi|^2 + p^2)) I0(8 pi^2 sigma^2 p |xi|)`,
/// evaluated through the scaled Bessel function so that large arguments
/// do not overflow.
pub fn calderon_continuous(xi: &Point, w: &WaveletParams) -> f64 {
    let r = xi.norm();
    let c = 4.0 * PI * PI * w.sigma * w.sigma;
    let y = 2.0 * c * w.p * r;
    TAU * (-c * (r - w.p).powi(2)).exp() * bessel_i0_scaled(y)
}

/// `C_psi(xi) = sum_k |psi^_{theta_k}(xi)|^2`.
pub fn calderon_semidiscrete(xi: &Point, w: &WaveletParams, angles: &[f64]) -> f64 {
    angles
        .iter()
        .map(|&t| psi_hat_rotated(xi, t, w).powi(2))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sim1() -> WaveletParams {
        WaveletParams::new(0.5, 2.0 / PI).unwrap()
    }

    #[test]
    fn params_are_validated() {
        assert!(WaveletParams::new(0.0, 1.0).is_err());
        assert!(WaveletParams::new(1.0, -1.0).is_err());
        assert!(WaveletParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn spatial_wavelet_examples() {
        let w = WaveletParams::new(0.7, 0.3).unwrap();
        let at0 = psi_spatial(&Point::zeros(), &w);
        assert!((at0.re - 1.0 / (TAU * 0.09)).abs() < 1e-12);
        assert_eq!(at0.im, 0.0);
        let v = psi_spatial(&Point::new(0.0, 0.3), &w);
        assert!((v.re - (-0.5f64).exp() / (TAU * 0.09)).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
        let a = psi_spatial(&Point::new(0.2, 0.45), &w).norm();
        let b = psi_spatial(&Point::new(0.45, 0.2), &w).norm();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn fourier_wavelet_examples() {
        let w = sim1();
        assert_eq!(psi_hat(&Point::new(0.5, 0.0), &w), 1.0);
        assert!((psi_hat(&Point::zeros(), &w) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((psi_hat(&Point::zeros(), &w) - 0.135335).abs() < 1e-6);
    }

    // 2D midpoint quadrature of int psi(x) exp(-2 pi i x.xi) dx over |x| <= 8 sigma
    #[test]
    fn fourier_transform_matches_quadrature() {
        let w = WaveletParams::new(0.5, 0.4).unwrap();
        let half = 8.0 * w.sigma;
        let n = 400;
        let h = 2.0 * half / n as f64;
        for xi in [Point::new(0.5, 0.0), Point::new(0.1, 0.3), Point::new(-0.2, 0.0)] {
            let mut acc = Complex::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    let x = Point::new(-half + (i as f64 + 0.5) * h, -half + (j as f64 + 0.5) * h);
                    if x.norm() > half {
                        continue;
                    }
                    acc += psi_spatial(&x, &w) * Complex::from_polar(1.0, -TAU * x.dot(&xi));
                }
            }
            acc *= h * h;
            assert!((acc.re - psi_hat(&xi, &w)).abs() < 1e-6, "{acc} at {xi}");
            assert!(acc.im.abs() < 1e-6);
        }
    }

    #[test]
    fn rotated_wavelet_examples() {
        let w = WaveletParams::new(0.8, 0.3).unwrap();
        let xi = Point::new(0.3, -0.1);
        assert_eq!(psi_hat_rotated(&xi, 0.0, &w), psi_hat(&xi, &w));
        for t in [0.0, 0.4, 2.0, 5.9] {
            assert!((psi_hat_rotated(&w.peak(t), t, &w) - 1.0).abs() < 1e-15);
        }
        assert!((psi_hat_rotated(&Point::new(0.0, 0.8), PI / 2.0, &w) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn generator_examples() {
        let w = sim1();
        let xi = Point::new(0.3, 0.2);
        let g0 = Generator::new(w, 1.0, Point::zeros());
        assert_eq!(phi_hat(&xi, &g0).im, 0.0);
        assert_eq!(phi_hat(&xi, &g0).re, psi_hat_rotated(&xi, 1.0, &w));
        let g = Generator::new(w, 0.0, Point::new(0.5, 0.0));
        let v = phi_hat(&Point::new(1.0, 0.0), &g);
        let expected = -psi_hat(&Point::new(1.0, 0.0), &w);
        assert!((v.re - expected).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!((Generator::new(w, -0.5 * PI, Point::zeros()).theta - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn continuous_calderon_examples() {
        let w = sim1();
        let at0 = calderon_continuous(&Point::zeros(), &w);
        assert!((at0 - TAU * (-4.0f64).exp()).abs() < 1e-15);
        assert!((at0 - 0.115080).abs() < 1e-6);
        let a = calderon_continuous(&Point::new(0.3, 0.4), &w);
        let b = calderon_continuous(&Point::new(0.5, 0.0), &w);
        assert!((a - b).abs() < 1e-14 * a);
    }

    #[test]
    fn semidiscrete_calderon_examples() {
        let w = sim1();
        let c4 = calderon_semidiscrete(&Point::zeros(), &w, &uniform_angles(4));
        assert!((c4 - 4.0 * (-4.0f64).exp()).abs() < 1e-15);
        assert!((c4 - 0.073263).abs() < 1e-6);
        let c7 = calderon_semidiscrete(&Point::zeros(), &w, &uniform_angles(7));
        assert!((c7 - 7.0 * (-4.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn semidiscrete_converges_monotonically() {
        let w = WaveletParams::new(0.9, 0.7).unwrap();
        let xi = Point::new(1.1, 0.6);
        let exact = calderon_continuous(&xi, &w);
        let mut last = f64::INFINITY;
        for n in [8usize, 16, 32, 64, 128, 256] {
            let approx = TAU / n as f64 * calderon_semidiscrete(&xi, &w, &uniform_angles(n));
            let err = (approx - exact).abs() / exact;
            assert!(err <= last.max(1e-14), "N = {n}: error {err} after {last}");
            last = err;
        }
        assert!(last < 1e-8);
    }

    proptest! {
        #[test]
        fn psi_hat_is_bounded_by_one(x in -3.0f64..3.0, y in -3.0f64..3.0, p in 0.1f64..2.0, s in 0.05f64..1.0) {
            let w = WaveletParams::new(p, s).unwrap();
            let v = psi_hat(&Point::new(x, y), &w);
            prop_assert!(v <= 1.0 && v >= 0.0);
        }

        #[test]
        fn opposite_shifts_multiply_to_squared_modulus(
            x in -2.0f64..2.0, y in -2.0f64..2.0, a in -3.0f64..3.0, b in -3.0f64..3.0, t in 0.0f64..6.3
        ) {
            let w = WaveletParams::new(0.6, 0.3).unwrap();
            let xi = Point::new(x, y);
            let g = Generator::new(w, t, Point::new(a, b));
            let gm = Generator::new(w, t, Point::new(-a, -b));
            let prod = phi_hat(&xi, &g) * phi_hat(&xi, &gm);
            let r = psi_hat_rotated(&xi, t, &w).powi(2);
            prop_assert!((prod.re - r).abs() <= 1e-14 && prod.im.abs() <= 1e-14);
            prop_assert!((phi_hat(&xi, &g).norm() - psi_hat_rotated(&xi, t, &w)).abs() <= 1e-15);
        }

        #[test]
        fn semidiscrete_is_two_pi_periodic(k in 0usize..6, x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let w = WaveletParams::new(0.5, 0.4).unwrap();
            let angles = uniform_angles(6);
            let mut shifted = angles.clone();
            shifted[k] += TAU;
            let xi = Point::new(x, y);
            let a = calderon_semidiscrete(&xi, &w, &angles);
            let b = calderon_semidiscrete(&xi, &w, &shifted);
            prop_assert!((a - b).abs() <= 1e-13 * a.max(1e-300));
        }
    }
}
