// The semidiscrete Calderon function `sum_k psi^_{theta_k}^2` against its
// continuous limit, and the reciprocal on the ball.

use std::f64::consts::{PI, TAU};

use se2_frames::lattice::Point;
use se2_frames::wavelet::{calderon_continuous, calderon_semidiscrete, uniform_angles, WaveletParams};

pub fn run_example() -> se2_frames::Result<f64> {
    let w = WaveletParams::new(0.5, 2.0 / PI)?;
    let xi = Point::new(0.3, -0.4);
    let exact = calderon_continuous(&xi, &w);
    let mut err = f64::NAN;
    for n in [4, 8, 16, 32, 64, 128, 256] {
        let approx = TAU / n as f64 * calderon_semidiscrete(&xi, &w, &uniform_angles(n));
        err = (approx - exact).abs() / exact;
        println!("N = {n:3}: 2 pi / N * C = {approx:.12}, relative error {err:.2e}");
    }

    let rho = 1.0 / 2f64.sqrt();
    let angles = uniform_angles(4);
    let mut worst: f64 = 0.0;
    for i in 0..64 {
        for j in 0..64 {
            let xi = Point::new(-rho + (i as f64 + 0.5) * rho / 32.0, -rho + (j as f64 + 0.5) * rho / 32.0);
            if xi.norm() < rho {
                worst = worst.max(1.0 / calderon_semidiscrete(&xi, &w, &angles));
            }
        }
    }
    println!("N = 4: max of 1/C on B(0, 1/sqrt 2) = {worst:.4}");
    Ok(err)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
