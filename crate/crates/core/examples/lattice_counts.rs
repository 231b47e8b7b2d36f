// Largest index set `n(omega) = |V_rho(omega)|` over the dual cell of Z^2.

use se2_frames::framefield::omega_grid;
use se2_frames::lattice::{count_field, enumerate_indices, Lattice2D, Point};

pub fn run_example() -> se2_frames::Result<Vec<(f64, usize)>> {
    let dual = Lattice2D::integer().annihilator();
    let grid = omega_grid(&dual.centered_cell(), 256);

    let v = enumerate_indices(&Point::new(0.1, -0.2), 1.0, &dual);
    println!("V_1((0.1, -0.2)) = {:?}", v.coords);

    let mut out = Vec::new();
    for rho in [1.0 / 2f64.sqrt(), 1.0, 1.618, 2.0, 3.0, 10.0] {
        let field = count_field(&grid, rho, &dual);
        println!("rho = {rho:.4}: max n = {}", field.max);
        out.push((rho, field.max));
    }
    Ok(out)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
