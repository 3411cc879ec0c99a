//! Energy error identity for the radially symmetric obstacle problem on
//! `(-1, 1)²`, swept over the perturbation amplitude.
//!
//! Run with `cargo run --release --example classical_identity -- [R r k]`.

use obstacle_identities::classical::{self, j_u_closed, ClassicalProblem, Perturbation};
use obstacle_identities::harness::{format_text, run_sweep, ProblemSpec, SweepConfig};
use obstacle_identities::{QuadratureConfig, Result};

fn main() -> Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (radius, inner, k) = match args[..] {
        [a, b, c] => (a, b, c as i64),
        _ => (0.7, 0.2, 16),
    };

    let problem = ClassicalProblem::new(radius)?;
    let cfg = QuadratureConfig::default();
    println!("R = {radius}, r = {inner}, k = {k}, J(u) = {:.12}", j_u_closed(radius));

    let pert = Perturbation::new(&problem, inner, k, 0.1)?;
    let rep = classical::identity_report(&problem, &pert, &cfg)?;
    println!("eps = 0.1: {rep:#?}\n");

    let spec = ProblemSpec::Classical {
        radius,
        inner_radius: inner,
        wavenumber: k,
        eps_list: vec![1.0, 0.1, 0.01, 1e-3, 1e-4],
    };
    let rows = run_sweep(&SweepConfig::new(spec))?;
    print!("{}", format_text(&rows));
    Ok(())
}
