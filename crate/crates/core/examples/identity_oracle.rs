// The sampled energy `sum_lambda |W f(lambda)|^2` computed coefficient by
// coefficient, against the Gramian quadratic form integrated over the cell.

use std::f64::consts::PI;

use nalgebra::Complex;
use se2_frames::framefield::{SamplingSpec, Shifts};
use se2_frames::lattice::{Lattice2D, Point};
use se2_frames::oracle::{identity_check, BandLimitedTestFunction, Bump, IdentityReport};
use se2_frames::wavelet::{uniform_angles, WaveletParams};

pub fn run_example() -> se2_frames::Result<IdentityReport> {
    let spec = SamplingSpec::new(
        WaveletParams::new(0.5, 2.0 / PI)?,
        Lattice2D::integer(),
        1.2,
        uniform_angles(3),
        Shifts::Fixed(vec![Point::new(0.1, 0.6), Point::new(0.45, 0.2), Point::new(0.8, 0.9)]),
    )?;
    let f = BandLimitedTestFunction::new(vec![
        Bump { center: Point::new(0.4, 0.1), radius: 0.5, coeff: Complex::new(1.0, 0.0) },
        Bump { center: Point::new(-0.2, -0.5), radius: 0.3, coeff: Complex::new(0.0, -0.7) },
    ])?;
    let report = identity_check(&f, &spec, 1e-8, 16)?;
    println!("lattice sum        = {:.12e}", report.energy_sum);
    println!("quadratic integral = {:.12e}", report.quadratic_form_integral);
    println!("relative error     = {:.2e}", report.relative_error);
    println!("|f|^2              = {:.12e}", f.norm_sq()?);
    Ok(report)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
