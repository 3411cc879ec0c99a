//! Labels the perturbed classical solution by contact state on a grid and
//! draws it as ASCII art.
//!
//! Run with `cargo run --example coincidence_grid -- [n]`.

use obstacle_identities::classical::{coincidence_grid, ClassicalProblem, ContactLabel, Perturbation};
use obstacle_identities::Result;

fn main() -> Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(41);
    let problem = ClassicalProblem::new(0.7)?;
    let pert = Perturbation::new(&problem, 0.2, 16, 0.1)?;
    let grid = coincidence_grid(&problem, &pert, n)?;

    println!("'#' contact, '+' lifted by the bump, '.' off the obstacle");
    for iy in (0..grid.n()).rev() {
        let row: String = (0..grid.n())
            .map(|ix| match grid.label(ix, iy) {
                ContactLabel::Contact => '#',
                ContactLabel::Lifted => '+',
                ContactLabel::Exterior => '.',
            })
            .collect();
        println!("{row}");
    }
    for circle in &grid.circles {
        println!("{:>14}: radius {:.4}", circle.name, circle.radius);
    }
    Ok(())
}
