// Spectral sweep of `G(omega)` over the dual cell with random shifts, and
// the resulting frame bounds.

use std::f64::consts::PI;

use se2_frames::framefield::{frame_report, sweep, FrameReport, SamplingSpec, Shifts, SweepConfig};
use se2_frames::lattice::Lattice2D;
use se2_frames::wavelet::{uniform_angles, WaveletParams};

pub fn run_example() -> se2_frames::Result<FrameReport> {
    let spec = SamplingSpec::new(
        WaveletParams::new(0.5, 2.0 / PI)?,
        Lattice2D::integer(),
        1.0 / 2f64.sqrt(),
        uniform_angles(4),
        Shifts::Random,
    )?;
    let field = sweep(&spec, &SweepConfig::new(32, 4, 7)?)?;
    let report = frame_report(&field, field.cell_area, spec.num_generators());
    println!("max n = {}, feasible: {}", report.max_n, report.feasible);
    println!("A = {:.6e}, B = {:.6e}", report.lower, report.upper);
    println!(
        "kappa: pooled {:.3}, per repetition {:.3} +/- {:.3}, mean fields {:.3}",
        report.kappa, report.kappa_mean, report.kappa_std, report.kappa_mean_field
    );
    Ok(report)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
