// Explicit frame bounds for the cutoff wavelet from disc covering counts.

use std::f64::consts::PI;

use se2_frames::cutoff::{covering_counts, cutoff_frame_bounds, heuristic_check, CutoffBounds};
use se2_frames::wavelet::uniform_angles;

pub fn run_example() -> se2_frames::Result<CutoffBounds> {
    let (p, l, sigma) = (0.5, 1.0, 2.0 / PI);
    let rho = 1.0 / 2f64.sqrt();
    let count = covering_counts(p, l, rho, &uniform_angles(4), 256)?;
    let bounds = cutoff_frame_bounds(&count, l, sigma)?;
    println!("m = {}, M = {}", count.min, count.max);
    println!("bounds [{:.6}, {:.6}], kappa <= {:?}", bounds.lower, bounds.upper, bounds.kappa_bound);
    println!("{}", heuristic_check(p, l, rho)?);

    let wide = covering_counts(p, l, 1.2, &uniform_angles(4), 256)?;
    println!("rho = 1.2: m = {}, degenerate: {}", wide.min, cutoff_frame_bounds(&wide, l, sigma)?.degenerate());
    Ok(bounds)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
