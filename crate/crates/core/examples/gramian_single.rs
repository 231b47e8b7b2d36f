// One dual Gramian `G(omega)`, built twice, with its spectrum.

use std::f64::consts::PI;

use se2_frames::framefield::{SamplingSpec, Shifts};
use se2_frames::gramian::{build_gramian, build_gramian_direct, spectrum};
use se2_frames::lattice::{Lattice2D, Point};
use se2_frames::wavelet::{uniform_angles, WaveletParams};

pub fn run_example() -> se2_frames::Result<(usize, f64)> {
    let shifts = vec![
        Point::new(0.12, 0.80),
        Point::new(0.55, 0.31),
        Point::new(0.93, 0.47),
        Point::new(0.26, 0.05),
        Point::new(0.71, 0.66),
        Point::new(0.38, 0.92),
        Point::new(0.04, 0.44),
    ];
    let spec = SamplingSpec::new(
        WaveletParams::new(0.5, 2.0 / PI)?,
        Lattice2D::integer(),
        1.0,
        uniform_angles(7),
        Shifts::Fixed(shifts),
    )?;
    let omega = Point::new(0.2, -0.35);
    let closed = build_gramian(&omega, &spec)?;
    let product = build_gramian_direct(&omega, &spec)?;
    let gap = (&closed.entries - &product.entries).camax();

    println!("|V| = {}, indices {:?}", closed.dim(), closed.indices.coords);
    println!("closed form vs product: {gap:.2e}");
    println!("Hermitian defect: {:.2e}", closed.hermitian_defect());
    let sp = spectrum(&closed)?;
    println!("eigenvalues: {:?}", sp.eigenvalues);
    println!("trace {:.15} = sum {:.15}", closed.trace(), sp.eigenvalues.iter().sum::<f64>());
    Ok((closed.dim(), gap))
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
